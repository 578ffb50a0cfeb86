#pragma once

#include "nbcqi/growth.hpp"

namespace nbcqi {

struct FlowEstimate {
    double base_est = 0.0;     // exponential base of the divergence rate
    double polydeg_est = 0.0;  // polynomial degree
    double r2 = 0.0;           // goodness of fit in [0, 1]
    double t_min = 0.0, t_max = 0.0;
};

struct OracleOptions {
    int t_min = 10;
    int t_max = 40;
    unsigned seed = 0;   // nonzero: jitter grid points deterministically
    double base_rtol = 0.05;
    double deg_atol = 0.3;
};

/// Sampled (t, log || M^{+-t} x ||) series over the grid, evaluated in log
/// domain (per-coordinate sign and log magnitude, so coordinates may grow
/// far past double range without overflow).
std::vector<std::pair<double, double>> flow_series(const Endomorphism& e,
                                                   const std::vector<double>& x, Direction dir,
                                                   const OracleOptions& opt = {});

/// Numeric divergence estimate of the flow line through x: fits
/// log y = t log(base) + polydeg log(t) + c by least squares over the series.
/// Throws DegenerateFitError with fewer than 8 usable grid points.
FlowEstimate flow_divergence(const Endomorphism& e, const std::vector<double>& x, Direction dir,
                             const OracleOptions& opt = {});

struct RateCheck {
    std::size_t block = 0;
    unsigned chain_pos = 0;
    double base_symbolic = 0.0;
    double deg_symbolic = 0.0;
    FlowEstimate estimate;
    bool pass = false;
};

/// Cross-check every symbolic chain-vector rate against the numeric flow
/// estimate (base within base_rtol relative, degree within deg_atol).
std::vector<RateCheck> validate_rates(const Endomorphism& e, const AdaptedBasis& basis,
                                      Direction dir, const OracleOptions& opt = {});

/// Numeric double coordinates of every chain vector (complex pairs give the
/// two rational spanning vectors of the invariant plane).
std::vector<std::pair<std::pair<std::size_t, unsigned>, std::vector<double>>>
chain_vector_doubles(const AdaptedBasis& basis);

}  // namespace nbcqi
