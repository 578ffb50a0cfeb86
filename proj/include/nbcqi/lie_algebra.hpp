#pragma once

#include <map>
#include <string>
#include <vector>

#include "nbcqi/matrix.hpp"
#include "nbcqi/rational.hpp"

namespace nbcqi {

/// Sparse bracket table [e_i, e_j] = sum_k c_k e_k, stored for i < j only
/// (antisymmetry is structural). Indices are 0-based internally; reports
/// use 1-based indices.
class StructureConstants {
public:
    StructureConstants() = default;
    explicit StructureConstants(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    /// Set [e_i, e_j] (i < j) to the given terms.
    void set_bracket(std::size_t i, std::size_t j, std::vector<std::pair<std::size_t, Rat>> terms);
    /// Bracket of basis vectors as a coordinate vector (any i, j).
    QVec basis_bracket(std::size_t i, std::size_t j) const;

    const std::map<std::pair<std::size_t, std::size_t>,
                   std::vector<std::pair<std::size_t, Rat>>>&
    table() const {
        return table_;
    }

    bool operator==(const StructureConstants& o) const {
        return dim_ == o.dim_ && table_ == o.table_;
    }

    /// Relabel basis vectors: entry perm[k] = new index of old basis vector k.
    StructureConstants permuted(const std::vector<std::size_t>& perm) const;

private:
    std::size_t dim_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rat>>> table_;
};

struct Violation {
    enum class Kind { Antisymmetry, Jacobi, Triangularity };
    Kind kind;
    std::vector<std::size_t> indices;  // 1-based in reports
    std::string detail;
};

/// Empty iff antisymmetry, Jacobi and triangularity all hold.
std::vector<Violation> validate(const StructureConstants& sc);

/// Basis matrices (rows) of gamma_1 >= gamma_2 >= ... ; the last entry is the
/// first zero term. Throws NonNilpotentError if the series stalls above zero.
std::vector<QMat> lower_central_series(const StructureConstants& sc);

struct WeightData {
    std::vector<unsigned> weights;     // w_k = max{ i : e_k in gamma_i }
    std::vector<unsigned> grade_dims;  // dim(gamma_i / gamma_{i+1})
    unsigned nilpotency_class = 0;
};
WeightData compute_weights(const StructureConstants& sc);

/// A validated graded algebra: structure constants plus the weight vector in
/// a canonical order (weights nondecreasing; the permutation from the input
/// order is recorded). Weights are computed from the lower central series
/// unless explicitly supplied, in which case they only need to be compatible
/// with the bracket filtration (w_k >= w_i + w_j for every bracket term).
class GradedAlgebra {
public:
    /// `explicit_weights` given in the input basis order; empty = compute.
    static GradedAlgebra build(const StructureConstants& sc_input,
                               const std::vector<unsigned>& explicit_weights = {});

    const StructureConstants& sc() const { return sc_; }
    std::size_t dim() const { return sc_.dim(); }
    const std::vector<unsigned>& weights() const { return weights_; }
    const std::vector<unsigned>& grade_dims() const { return grade_dims_; }
    unsigned nilpotency_class() const { return class_; }
    bool weights_explicit() const { return weights_explicit_; }
    /// input_order[k] = index in the input document of canonical basis slot k.
    const std::vector<std::size_t>& input_order() const { return input_order_; }

    /// Indices of basis vectors of grade j (weight == j), canonical order.
    std::vector<std::size_t> grade_indices(unsigned j) const;
    /// Row basis of the tail span {e_k : w_k >= j}.
    QMat tail_basis(unsigned j) const;

    bool operator==(const GradedAlgebra& o) const {
        return sc_ == o.sc_ && weights_ == o.weights_;
    }

private:
    StructureConstants sc_;
    std::vector<unsigned> weights_, grade_dims_;
    std::vector<std::size_t> input_order_;
    unsigned class_ = 0;
    bool weights_explicit_ = false;
};

struct CarnotCertificate {
    bool is_carnot = false;
    std::vector<unsigned> failing_grades;  // j where span[V1,Vj] != V_{j+1}
};
CarnotCertificate is_carnot(const GradedAlgebra& g);

/// Bilinear extension of the bracket table to coordinate vectors.
QVec bracket(const QVec& x, const QVec& y, const StructureConstants& sc);

/// Ball-box comparability representative max_i |x_i|^(1/w_i) (numeric).
double nilpotent_norm(const std::vector<double>& x, const std::vector<unsigned>& w);

}  // namespace nbcqi
