#pragma once

#include <optional>

#include "nbcqi/endomorphism.hpp"
#include "nbcqi/jordan.hpp"
#include "nbcqi/numberfield.hpp"

namespace nbcqi {

/// One Jordan chain adapted to the weight filtration, listed from the top
/// generalized vector to the eigenvector, so applying (M - lambda) moves
/// forward through the list and weights never decrease.
struct AdaptedChain {
    std::vector<Vec<NFElem>> vectors;  // coordinates over Q[x]/(field_poly)
    std::vector<unsigned> weight_sig;  // min support weight, nondecreasing
    // deepest grade with a nonzero coordinate; growing flows are dominated by
    // the shallowest supported coordinate, decaying flows by the deepest one
    std::vector<unsigned> weight_max_sig;
};

struct AdaptedBlock {
    JordanBlockData block;     // eigenvalue data; size = chain length
    AlgebraicReal modulus;     // |lambda|, pairs: sqrt(a^2 + b^2)
    IntPoly field_poly;        // defining polynomial of Q(lambda)
    double root_approx = 0.0;  // numeric eigenvalue (pairs: real part)
    double imag_approx = 0.0;  // pairs only
    AdaptedChain chain;
};

/// Adapted Jordan basis data in canonical block order
/// (modulus asc, size asc, weight signature lexicographic asc).
struct AdaptedBasis {
    std::vector<AdaptedBlock> blocks;
    std::vector<unsigned> weights;  // ambient weight vector (canonical order)

    std::size_t dim() const;
};

/// Filtration-adapted Jordan basis via greedy deepest-tail chain tops.
/// Requires that M weakly preserves the weight filtration; the result is
/// verified exactly (chain-vector weight counts match the tail dimensions)
/// and AdaptedBasisError is raised when the greedy construction falls short.
AdaptedBasis adapted_jordan_basis(const QMat& m, const std::vector<unsigned>& weights,
                                  unsigned degree_bound = kDefaultDegreeBound);
AdaptedBasis adapted_jordan_basis(const Endomorphism& e,
                                  unsigned degree_bound = kDefaultDegreeBound);

/// Expanded block of the permuted absolute Jordan form: complex pairs appear
/// as two identical real entries of the same modulus and signature.
struct WeightedBlock {
    AlgebraicReal modulus;           // >= 0
    unsigned size = 1;
    std::vector<unsigned> weight_sig;
};

struct PajfSlot {
    unsigned weight = 1;
    AlgebraicReal modulus;
    std::size_t block = 0;                  // index into blocks
    unsigned chain_pos = 0;                 // 0-based position along the chain
    std::optional<std::size_t> link_next;   // output slot of the next chain vector
};

/// Canonical permuted absolute Jordan form. `sigma[i]` is the output slot of
/// original Jordan slot i (original order = canonical block order, chains
/// listed shallow to deep). The default convention lists output weights
/// nondecreasing; `weight_ascending = false` flips the direction. Equality
/// always compares forms built under the same convention.
struct Pajf {
    std::vector<WeightedBlock> blocks;
    std::vector<std::size_t> sigma;
    std::vector<PajfSlot> slots;
    bool weight_ascending = true;
};

Pajf compute_pajf(const AdaptedBasis& basis, bool weight_ascending = true);
Pajf compute_pajf(const Endomorphism& e, bool weight_ascending = true,
                  unsigned degree_bound = kDefaultDegreeBound);

/// Entries of the permuted matrix: diagonal moduli plus chain links
/// (value 1) at (slot of shallower vector, slot of deeper vector).
std::vector<std::vector<AlgebraicReal>> pajf_matrix(const Pajf& p);

bool pajf_equal(const Pajf& a, const Pajf& b);

inline constexpr unsigned kDefaultPowerBound = 12;

struct PowerEquivalence {
    enum class Kind { Equivalent, NotEquivalent, Undecided } kind;
    unsigned r1 = 0, r2 = 0;  // minimal witness when Equivalent
    std::string witness;      // human-readable reason otherwise
};

/// Decide whether the underlying endomorphisms admit powers with equal PAJF:
/// block structure and weight signatures must match slot-for-slot, and a
/// single exponent pair must align every modulus. Structural or order-profile
/// mismatches are proven negatives; an exhausted search is reported as
/// Undecided, never as a negative.
PowerEquivalence pajf_power_equivalent(const Pajf& p1, const Pajf& p2,
                                       unsigned bound = kDefaultPowerBound);

}  // namespace nbcqi
