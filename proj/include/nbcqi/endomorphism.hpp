#pragma once

#include <optional>

#include "nbcqi/lie_algebra.hpp"

namespace nbcqi {

/// phi* on the graded algebra: column j of `matrix` holds the coordinates of
/// phi(e_j) in the canonical basis.
struct Endomorphism {
    GradedAlgebra algebra;
    QMat matrix;

    std::size_t dim() const { return algebra.dim(); }
};

struct HomomorphismCheck {
    bool ok = true;
    std::optional<std::pair<std::size_t, std::size_t>> violation;  // 1-based pair
};

/// phi[e_i, e_j] == [phi e_i, phi e_j] for all i < j, exactly.
HomomorphismCheck is_homomorphism(const Endomorphism& e);

/// M (tail_j) is contained in tail_j for every grade j.
bool weakly_preserves_grading(const Endomorphism& e);

bool is_injective(const Endomorphism& e);

/// True iff no root of the characteristic polynomial lies on the unit circle.
/// Works on the squarefree part: unit-circle roots are either roots at +-1 or
/// conjugate pairs in the self-reciprocal part, which the substitution
/// y = x + 1/x maps to real roots in (-2, 2).
bool is_unipotent_free(const QMat& m);
inline bool is_unipotent_free(const Endomorphism& e) { return is_unipotent_free(e.matrix); }

/// Extend a V1 action to the whole algebra via phi[x,y] = [phi x, phi y].
/// `base_action` is d1 x d1 over the canonical grade-1 basis slots.
/// Throws InconsistentExtensionError when two bracket expressions disagree.
Endomorphism carnot_complete(const GradedAlgebra& g, const QMat& base_action);

/// |det M| as the index [N : phi(N)]; throws NonIntegerIndexError when |det|
/// is not a positive integer. A value of 1 signals the excluded polycyclic
/// (surjective) case; callers decide how to treat it.
Int tree_valence(const Endomorphism& e);

}  // namespace nbcqi
