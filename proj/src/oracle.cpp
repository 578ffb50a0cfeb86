#include "nbcqi/oracle.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "nbcqi/errors.hpp"

namespace nbcqi {

namespace {

// Signed log-magnitude coordinates: value_i = sign_i * exp(log_i).
struct LogVec {
    std::vector<int> sign;
    std::vector<double> log;
};

LogVec to_logvec(const std::vector<double>& x) {
    LogVec v;
    for (double c : x) {
        if (c == 0.0) {
            v.sign.push_back(0);
            v.log.push_back(-std::numeric_limits<double>::infinity());
        } else {
            v.sign.push_back(c > 0 ? 1 : -1);
            v.log.push_back(std::log(std::fabs(c)));
        }
    }
    return v;
}

// One matrix-vector product in log domain via max-shifted signed sums.
LogVec logvec_apply(const std::vector<std::vector<double>>& m, const LogVec& v) {
    const std::size_t n = m.size();
    LogVec out;
    out.sign.resize(n);
    out.log.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j] == 0.0 || v.sign[j] == 0) continue;
            mx = std::max(mx, std::log(std::fabs(m[i][j])) + v.log[j]);
        }
        if (!std::isfinite(mx)) {
            out.sign[i] = 0;
            out.log[i] = -std::numeric_limits<double>::infinity();
            continue;
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j] == 0.0 || v.sign[j] == 0) continue;
            double term = std::exp(std::log(std::fabs(m[i][j])) + v.log[j] - mx);
            acc += (m[i][j] > 0 ? 1 : -1) * v.sign[j] * term;
        }
        if (acc == 0.0) {
            out.sign[i] = 0;
            out.log[i] = -std::numeric_limits<double>::infinity();
        } else {
            out.sign[i] = acc > 0 ? 1 : -1;
            out.log[i] = mx + std::log(std::fabs(acc));
        }
    }
    return out;
}

// log of the ball-box norm max_i |x_i|^(1/w_i), from log coordinates.
double log_nilpotent_norm(const LogVec& v, const std::vector<unsigned>& w) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.log.size(); ++i) {
        if (v.sign[i] == 0) continue;
        best = std::max(best, v.log[i] / static_cast<double>(w[i]));
    }
    return best;
}

std::vector<std::vector<double>> to_double_matrix(const QMat& m) {
    std::vector<std::vector<double>> out(m.size(), std::vector<double>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = to_double(m[i][j]);
    return out;
}

}  // namespace

std::vector<std::pair<double, double>> flow_series(const Endomorphism& e,
                                                   const std::vector<double>& x, Direction dir,
                                                   const OracleOptions& opt) {
    if (x.size() != e.dim()) throw Error("flow_series: dimension mismatch");
    bool nonzero = false;
    for (double c : x)
        if (c != 0.0) nonzero = true;
    if (!nonzero) throw Error("flow_series: x must be nonzero");

    QMat step_q = dir == Direction::Forward ? e.matrix : mat_inverse(e.matrix);
    auto step = to_double_matrix(step_q);
    const auto& w = e.algebra.weights();

    std::vector<int> grid;
    for (int t = opt.t_min; t <= opt.t_max; ++t) grid.push_back(t);
    if (opt.seed != 0 && grid.size() > 10) {
        // deterministic jitter: drop some interior grid points
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<int> kept{grid.front()};
        for (std::size_t i = 1; i + 1 < grid.size(); ++i)
            if (u(rng) >= 0.25) kept.push_back(grid[i]);
        kept.push_back(grid.back());
        grid = std::move(kept);
    }

    // walk t = 1, 2, ... collecting log-norms at grid points
    std::vector<std::pair<double, double>> samples;  // (t, log y)
    LogVec v = to_logvec(x);
    std::size_t gi = 0;
    for (int t = 1; t <= opt.t_max && gi < grid.size(); ++t) {
        v = logvec_apply(step, v);
        while (gi < grid.size() && grid[gi] == t) {
            double ln = log_nilpotent_norm(v, w);
            if (std::isfinite(ln)) samples.emplace_back(static_cast<double>(t), ln);
            ++gi;
        }
    }
    return samples;
}

FlowEstimate flow_divergence(const Endomorphism& e, const std::vector<double>& x, Direction dir,
                             const OracleOptions& opt) {
    auto samples = flow_series(e, x, dir, opt);
    if (samples.size() < 8)
        throw DegenerateFitError("flow_divergence: only " + std::to_string(samples.size()) +
                                 " usable grid points");

    // least squares for log y = a t + b log t + c
    double s[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    double ymean = 0;
    for (auto& [t, y] : samples) ymean += y;
    ymean /= static_cast<double>(samples.size());
    for (auto& [t, y] : samples) {
        double f[3] = {t, std::log(t), 1.0};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) s[i][j] += f[i] * f[j];
            rhs[i] += f[i] * y;
        }
    }
    // solve the 3x3 normal equations by Gaussian elimination
    double a[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a[i][j] = s[i][j];
        a[i][3] = rhs[i];
    }
    for (int c = 0; c < 3; ++c) {
        int p = c;
        for (int i = c + 1; i < 3; ++i)
            if (std::fabs(a[i][c]) > std::fabs(a[p][c])) p = i;
        std::swap(a[c], a[p]);
        for (int i = 0; i < 3; ++i) {
            if (i == c || a[c][c] == 0.0) continue;
            double f = a[i][c] / a[c][c];
            for (int j = c; j < 4; ++j) a[i][j] -= f * a[c][j];
        }
    }
    double coef[3];
    for (int i = 0; i < 3; ++i) coef[i] = a[i][i] != 0.0 ? a[i][3] / a[i][i] : 0.0;

    double ss_res = 0, ss_tot = 0;
    for (auto& [t, y] : samples) {
        double fit = coef[0] * t + coef[1] * std::log(t) + coef[2];
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - ymean) * (y - ymean);
    }
    FlowEstimate est;
    est.base_est = std::exp(coef[0]);
    est.polydeg_est = coef[1];
    est.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    est.t_min = samples.front().first;
    est.t_max = samples.back().first;
    return est;
}

std::vector<std::pair<std::pair<std::size_t, unsigned>, std::vector<double>>>
chain_vector_doubles(const AdaptedBasis& basis) {
    std::vector<std::pair<std::pair<std::size_t, unsigned>, std::vector<double>>> out;
    const std::size_t n = basis.dim();
    for (std::size_t bi = 0; bi < basis.blocks.size(); ++bi) {
        const auto& b = basis.blocks[bi];
        NumberField nf(b.field_poly.degree() >= 1 ? b.field_poly
                                                  : IntPoly({Int(0), Int(1)}));
        const bool pair = b.block.kind == JordanBlockData::Kind::ComplexPair;
        for (unsigned pos = 0; pos < b.block.size; ++pos) {
            const auto& v = b.chain.vectors[pos];
            if (!pair) {
                std::vector<double> d(n, 0.0);
                for (std::size_t k = 0; k < n; ++k) d[k] = nf.eval_double(v[k], b.root_approx);
                out.push_back({{bi, pos}, std::move(d)});
            } else {
                // two real spanning vectors of the invariant plane:
                // Re part u + re * v and the coefficient vector v
                std::vector<double> d1(n, 0.0), d2(n, 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    double u = v[k].size() > 0 ? to_double(v[k][0]) : 0.0;
                    double vv = v[k].size() > 1 ? to_double(v[k][1]) : 0.0;
                    d1[k] = u + b.root_approx * vv;
                    d2[k] = vv;
                }
                out.push_back({{bi, pos}, std::move(d1)});
                out.push_back({{bi, pos}, std::move(d2)});
            }
        }
    }
    return out;
}

std::vector<RateCheck> validate_rates(const Endomorphism& e, const AdaptedBasis& basis,
                                      Direction dir, const OracleOptions& opt) {
    auto rates = basis_rates(basis, dir);
    auto vectors = chain_vector_doubles(basis);
    if (rates.entries.size() != vectors.size())
        throw Error("validate_rates: slot enumeration mismatch");
    std::vector<RateCheck> out;
    for (std::size_t s = 0; s < rates.entries.size(); ++s) {
        RateCheck rc;
        rc.block = rates.entries[s].block;
        rc.chain_pos = rates.entries[s].chain_pos;
        const GrowthRate& r = rates.entries[s].rate;
        rc.base_symbolic = std::pow(r.lam.to_double(), 1.0 / static_cast<double>(r.w));
        rc.deg_symbolic = static_cast<double>(r.k) / static_cast<double>(r.w);
        rc.estimate = flow_divergence(e, vectors[s].second, dir, opt);
        double base_err = std::fabs(rc.estimate.base_est - rc.base_symbolic) / rc.base_symbolic;
        double deg_err = std::fabs(rc.estimate.polydeg_est - rc.deg_symbolic);
        rc.pass = base_err <= opt.base_rtol && deg_err <= opt.deg_atol;
        out.push_back(rc);
    }
    return out;
}

}  // namespace nbcqi
