#pragma once

#include "nbcqi/pajf.hpp"

namespace nbcqi {

/// Comparability class of (t^k lambda^t)^(1/w): exponential base lambda^(1/w)
/// first, polynomial degree k/w as tiebreaker.
struct GrowthRate {
    AlgebraicReal lam;  // > 0
    unsigned k = 0;
    unsigned w = 1;
};

Ordering rate_compare(const GrowthRate& a, const GrowthRate& b);
inline bool rate_eq(const GrowthRate& a, const GrowthRate& b) {
    return rate_compare(a, b) == Ordering::EQ;
}

enum class Direction { Forward, Backward };

/// One divergence rate per basis direction of the adapted basis (complex
/// pairs contribute their two paired directions).
struct RateEntry {
    std::size_t block = 0;   // index into AdaptedBasis::blocks
    unsigned chain_pos = 0;  // 0-based along the chain
    GrowthRate rate;
};

struct DivergenceData {
    std::vector<RateEntry> entries;
    std::vector<GrowthRate> multiset() const;
};

/// Divergence rate of every adapted chain vector: the maximum over the chain
/// slots reachable from it (toward the eigenvector) of
/// (t^offset * modulus^t)^(1/weight-of-reached-slot). Backward uses the
/// moduli of the inverse map.
DivergenceData basis_rates(const AdaptedBasis& basis, Direction dir);

struct MultisetMatch {
    enum class Kind { Equal, NotEqual, Undecided } kind;
    unsigned p = 1, q = 1;  // rescaling power s = p/q when Equal
    std::string witness;
};

/// Multiset equality up to rescaling every exponential base by a single
/// rational power s = p/q (polynomial degrees are invariant under the linear
/// time change and must match exactly).
MultisetMatch multiset_equal_up_to_power(std::vector<GrowthRate> d1, std::vector<GrowthRate> d2,
                                         unsigned bound = kDefaultPowerBound);

/// Computable isomorphism-necessary conditions for a nilpotent Lie algebra.
struct Fingerprint {
    unsigned dim = 0;
    std::vector<unsigned> graded_dims;  // lower-central-series quotient dims
    std::vector<unsigned> lcs_dims;     // dim gamma_1, gamma_2, ... (last is 0)
    unsigned center_dim = 0;
    unsigned abelianization_dim = 0;
    bool operator==(const Fingerprint&) const = default;
};

struct GrowthSpace {
    AlgebraicReal base_lam;  // threshold base is base_lam^(1/base_w)
    unsigned base_w = 1;
    std::vector<std::size_t> member_slots;  // adapted slot indices (expanded)
    QMat span;                              // canonical rational row basis
    Fingerprint fingerprint;
};

struct GrowthFiltration {
    std::vector<GrowthSpace> spaces;  // thresholds strictly increasing
};

/// Nested growth spaces from the forward rates: a chain vector belongs to the
/// space of threshold b iff its exponential base is <= b. Every space is
/// verified to be bracket-closed (SubalgebraClosureError otherwise).
/// Requires a rational spectrum (rational eigenvalues or rational complex
/// pairs); irrational real eigenvalues raise UnsupportedEigenvalueError.
GrowthFiltration growth_filtration(const Endomorphism& e, const AdaptedBasis& basis);

struct FiltrationMismatch {
    std::size_t position = 0;  // 1-based threshold position
    std::string detail;
};

/// Necessary condition for the growth spaces to be pairwise isomorphic:
/// equal counts and position-wise equal fingerprints.
std::optional<FiltrationMismatch> filtration_mismatch(const GrowthFiltration& f1,
                                                      const GrowthFiltration& f2);
inline bool filtration_equivalent(const GrowthFiltration& f1, const GrowthFiltration& f2) {
    return !filtration_mismatch(f1, f2).has_value();
}

/// Fingerprint of the subalgebra spanned by rational row vectors.
Fingerprint span_fingerprint(const QMat& span_rows, const StructureConstants& ambient,
                             const std::vector<unsigned>& ambient_weights);

}  // namespace nbcqi
