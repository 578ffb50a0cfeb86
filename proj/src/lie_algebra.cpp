#include "nbcqi/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nbcqi/errors.hpp"

namespace nbcqi {

void StructureConstants::set_bracket(std::size_t i, std::size_t j,
                                     std::vector<std::pair<std::size_t, Rat>> terms) {
    if (i >= j || j >= dim_) throw Error("set_bracket: indices must satisfy i < j < dim");
    std::map<std::size_t, Rat> merged;
    for (auto& [k, c] : terms) {
        if (k >= dim_) throw Error("set_bracket: target index out of range");
        merged[k] += c;
    }
    std::vector<std::pair<std::size_t, Rat>> out;
    for (auto& [k, c] : merged)
        if (c != 0) out.emplace_back(k, c);
    if (out.empty())
        table_.erase({i, j});
    else
        table_[{i, j}] = std::move(out);
}

QVec StructureConstants::basis_bracket(std::size_t i, std::size_t j) const {
    QVec v(dim_, Rat(0));
    if (i == j) return v;
    bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = table_.find({i, j});
    if (it == table_.end()) return v;
    for (const auto& [k, c] : it->second) v[k] = flip ? -c : c;
    return v;
}

StructureConstants StructureConstants::permuted(const std::vector<std::size_t>& perm) const {
    StructureConstants out(dim_);
    for (const auto& [ij, terms] : table_) {
        std::size_t ni = perm[ij.first], nj = perm[ij.second];
        bool flip = ni > nj;
        if (flip) std::swap(ni, nj);
        std::vector<std::pair<std::size_t, Rat>> nt;
        for (const auto& [k, c] : terms) nt.emplace_back(perm[k], flip ? -c : c);
        std::sort(nt.begin(), nt.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out.set_bracket(ni, nj, std::move(nt));
    }
    return out;
}

QVec bracket(const QVec& x, const QVec& y, const StructureConstants& sc) {
    if (x.size() != sc.dim() || y.size() != sc.dim()) throw Error("bracket: dimension mismatch");
    QVec out(sc.dim(), Rat(0));
    for (const auto& [ij, terms] : sc.table()) {
        // coefficient of [e_i, e_j] in the expansion of [x, y]
        Rat c = x[ij.first] * y[ij.second] - x[ij.second] * y[ij.first];
        if (c == 0) continue;
        for (const auto& [k, v] : terms) out[k] += c * v;
    }
    return out;
}

std::vector<Violation> validate(const StructureConstants& sc) {
    std::vector<Violation> out;
    const std::size_t n = sc.dim();
    // triangularity: alpha_{ijk} = 0 when k <= max(i,j)
    for (const auto& [ij, terms] : sc.table())
        for (const auto& [k, c] : terms) {
            (void)c;
            if (k <= std::max(ij.first, ij.second)) {
                std::ostringstream os;
                os << "[e" << ij.first + 1 << ", e" << ij.second + 1 << "] has a component on e"
                   << k + 1 << " with k <= max(i, j)";
                out.push_back({Violation::Kind::Triangularity,
                               {ij.first + 1, ij.second + 1, k + 1},
                               os.str()});
            }
        }
    // Jacobi on every triple, by exact expansion
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                QVec ei(n, Rat(0)), ej(n, Rat(0)), ek(n, Rat(0));
                ei[i] = 1;
                ej[j] = 1;
                ek[k] = 1;
                QVec s1 = bracket(ei, bracket(ej, ek, sc), sc);
                QVec s2 = bracket(ej, bracket(ek, ei, sc), sc);
                QVec s3 = bracket(ek, bracket(ei, ej, sc), sc);
                bool ok = true;
                for (std::size_t t = 0; t < n; ++t)
                    if (s1[t] + s2[t] + s3[t] != 0) ok = false;
                if (!ok) {
                    std::ostringstream os;
                    os << "Jacobi fails on (e" << i + 1 << ", e" << j + 1 << ", e" << k + 1 << ")";
                    out.push_back({Violation::Kind::Jacobi, {i + 1, j + 1, k + 1}, os.str()});
                }
            }
    return out;
}

std::vector<QMat> lower_central_series(const StructureConstants& sc) {
    const std::size_t n = sc.dim();
    RatField f;
    std::vector<QMat> series;
    QMat full = mat_identity(f, n);
    series.push_back(full);
    QMat current = full;
    while (true) {
        // gamma_{i+1} = span{ [e_j, u] : j basis index, u in gamma_i }
        QMat next_rows;
        for (std::size_t j = 0; j < n; ++j) {
            QVec ej(n, Rat(0));
            ej[j] = 1;
            for (const auto& u : current) {
                QVec b = bracket(ej, u, sc);
                bool nonzero = false;
                for (const auto& v : b)
                    if (v != 0) nonzero = true;
                if (nonzero) next_rows.push_back(std::move(b));
            }
        }
        QMat next = span_basis(f, next_rows);
        series.push_back(next);
        if (next.empty()) break;
        if (next.size() >= current.size() || series.size() > n + 1)
            throw NonNilpotentError("lower central series does not reach zero");
        current = std::move(next);
    }
    return series;
}

WeightData compute_weights(const StructureConstants& sc) {
    const std::size_t n = sc.dim();
    RatField f;
    auto series = lower_central_series(sc);
    WeightData wd;
    wd.weights.assign(n, 1);
    wd.nilpotency_class = static_cast<unsigned>(series.size() - 1);
    for (std::size_t k = 0; k < n; ++k) {
        QVec ek(n, Rat(0));
        ek[k] = 1;
        for (std::size_t i = series.size(); i-- > 1;) {
            if (!series[i - 1].empty() && in_span(f, series[i - 1], ek)) {
                wd.weights[k] = static_cast<unsigned>(i);
                break;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        wd.grade_dims.push_back(static_cast<unsigned>(series[i].size() - series[i + 1].size()));
    return wd;
}

GradedAlgebra GradedAlgebra::build(const StructureConstants& sc_input,
                                   const std::vector<unsigned>& explicit_weights) {
    auto violations = validate(sc_input);
    if (!violations.empty())
        throw Error("GradedAlgebra: structure constants invalid: " + violations.front().detail);

    const std::size_t n = sc_input.dim();
    std::vector<unsigned> w_input;
    GradedAlgebra g;
    if (explicit_weights.empty()) {
        auto wd = compute_weights(sc_input);
        w_input = wd.weights;
        g.class_ = wd.nilpotency_class;
        g.weights_explicit_ = false;
    } else {
        if (explicit_weights.size() != n) throw Error("weights length != dim");
        for (auto w : explicit_weights)
            if (w == 0) throw Error("weights must be positive");
        // filtration compatibility: every bracket term must land in grade
        // >= w_i + w_j
        for (const auto& [ij, terms] : sc_input.table())
            for (const auto& [k, c] : terms) {
                (void)c;
                if (explicit_weights[k] < explicit_weights[ij.first] + explicit_weights[ij.second])
                    throw Error("explicit weights incompatible with bracket filtration");
            }
        // nilpotency is still required
        lower_central_series(sc_input);
        w_input = explicit_weights;
        g.class_ = *std::max_element(w_input.begin(), w_input.end());
        g.weights_explicit_ = true;
    }

    // canonical order: stable sort by weight (preserves triangularity, since
    // bracket targets always have strictly larger weight than both arguments)
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return w_input[a] < w_input[b]; });
    std::vector<std::size_t> perm(n);  // input index -> canonical slot
    for (std::size_t s = 0; s < n; ++s) perm[order[s]] = s;

    g.sc_ = sc_input.permuted(perm);
    g.input_order_ = order;
    g.weights_.resize(n);
    for (std::size_t s = 0; s < n; ++s) g.weights_[s] = w_input[order[s]];
    g.grade_dims_.assign(g.class_, 0);
    for (auto w : g.weights_) g.grade_dims_[w - 1] += 1;

    auto reordered_violations = validate(g.sc_);
    if (!reordered_violations.empty())
        throw Error("GradedAlgebra: basis not weight-orderable triangular: " +
                    reordered_violations.front().detail);
    return g;
}

std::vector<std::size_t> GradedAlgebra::grade_indices(unsigned j) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < weights_.size(); ++k)
        if (weights_[k] == j) out.push_back(k);
    return out;
}

QMat GradedAlgebra::tail_basis(unsigned j) const {
    QMat rows;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        if (weights_[k] >= j) {
            QVec v(weights_.size(), Rat(0));
            v[k] = 1;
            rows.push_back(std::move(v));
        }
    }
    return rows;
}

CarnotCertificate is_carnot(const GradedAlgebra& g) {
    RatField f;
    CarnotCertificate cert;
    cert.is_carnot = true;
    const unsigned r = g.nilpotency_class();
    auto v1 = g.grade_indices(1);
    for (unsigned j = 1; j <= r; ++j) {
        auto vj = g.grade_indices(j);
        QMat span_rows;
        for (auto a : v1)
            for (auto b : vj) {
                QVec br = g.sc().basis_bracket(a, b);
                bool nonzero = false;
                for (const auto& v : br)
                    if (v != 0) nonzero = true;
                if (nonzero) span_rows.push_back(std::move(br));
            }
        QMat lhs = span_basis(f, span_rows);
        if (j == r) {
            if (!lhs.empty()) {
                cert.is_carnot = false;
                cert.failing_grades.push_back(j);
            }
            continue;
        }
        QMat rhs_rows;
        for (auto k : g.grade_indices(j + 1)) {
            QVec v(g.dim(), Rat(0));
            v[k] = 1;
            rhs_rows.push_back(std::move(v));
        }
        if (!same_span(f, lhs, rhs_rows)) {
            cert.is_carnot = false;
            cert.failing_grades.push_back(j);
        }
    }
    return cert;
}

double nilpotent_norm(const std::vector<double>& x, const std::vector<unsigned>& w) {
    if (x.size() != w.size()) throw Error("nilpotent_norm: dimension mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = std::pow(std::fabs(x[i]), 1.0 / static_cast<double>(w[i]));
        best = std::max(best, v);
    }
    return best;
}

}  // namespace nbcqi
