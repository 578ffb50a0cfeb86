#include "nbcqi/rational.hpp"

#include <cctype>

#include "nbcqi/errors.hpp"

namespace nbcqi {

namespace {
bool valid_int_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}
}  // namespace

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid_int_token(s)) throw ParseError("invalid rational: '" + s + "'");
        return Rat(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int_token(num) || !valid_int_token(den))
        throw ParseError("invalid rational: '" + s + "'");
    Int d(den);
    if (d <= 0) throw ParseError("rational denominator must be positive: '" + s + "'");
    return Rat(Int(num), d);
}

std::string format_rational(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Int pow_int(const Int& base, unsigned exp) {
    Int result(1), b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) result *= b;
        b *= b;
        e >>= 1u;
    }
    return result;
}

Rat pow_rat(const Rat& base, unsigned exp) {
    return Rat(pow_int(numerator(base), exp), pow_int(denominator(base), exp));
}

bool is_integer(const Rat& r) { return denominator(r) == 1; }

double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace nbcqi
