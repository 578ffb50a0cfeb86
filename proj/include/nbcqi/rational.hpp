#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace nbcqi {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exact ordering result.
enum class Ordering { LT = -1, EQ = 0, GT = 1 };

inline Ordering ordering_of(int cmp) {
    return cmp < 0 ? Ordering::LT : (cmp > 0 ? Ordering::GT : Ordering::EQ);
}

inline Ordering compare(const Rat& a, const Rat& b) {
    return ordering_of(a.compare(b));
}

/// Parse "p" or "p/q" (q > 0 after normalization; "3/-6" is rejected).
Rat parse_rational(const std::string& s);

/// Format canonically as "p" or "p/q".
std::string format_rational(const Rat& r);

Int pow_int(const Int& base, unsigned exp);
Rat pow_rat(const Rat& base, unsigned exp);

/// Exact integral test: true iff denominator is 1.
bool is_integer(const Rat& r);

double to_double(const Rat& r);

}  // namespace nbcqi
