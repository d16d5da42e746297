#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncgeo/exterior.hpp"
#include "ncgeo/linalg.hpp"

namespace ncgeo {

class SizeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// [a, b] = ab − ba.
DenseMatrix bracket(const DenseMatrix& a, const DenseMatrix& b);

/// Fixed rational basis of sl(n, C): E_ij for i != j in lexicographic order of
/// (i, j), followed by H_k = E_kk − E_{k+1,k+1} for k = 1..n−1. The order fixes
/// every exterior-algebra sign downstream.
class SlBasis {
public:
    explicit SlBasis(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int dim() const { return static_cast<int>(elements_.size()); }
    [[nodiscard]] const DenseMatrix& operator[](int k) const { return elements_.at(static_cast<size_t>(k)); }
    [[nodiscard]] const std::vector<DenseMatrix>& elements() const { return elements_; }
    [[nodiscard]] const std::string& label(int k) const { return labels_.at(static_cast<size_t>(k)); }

    /// Coordinates of a traceless n×n matrix. Throws std::domain_error when the
    /// matrix is not traceless (it is then outside sl(n)).
    [[nodiscard]] std::vector<GR> coordinates(const DenseMatrix& x) const;
    [[nodiscard]] DenseMatrix combine(const std::vector<GR>& coords) const;

private:
    int n_;
    std::vector<DenseMatrix> elements_;
    std::vector<std::string> labels_;
};

/// [X_i, X_j] in basis coordinates.
class StructureConstants {
public:
    StructureConstants() = default;
    explicit StructureConstants(std::vector<std::vector<SparseVector>> table) : table_(std::move(table)) {}

    [[nodiscard]] int dim() const { return static_cast<int>(table_.size()); }
    [[nodiscard]] const SparseVector& operator()(int i, int j) const {
        return table_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
    }

private:
    std::vector<std::vector<SparseVector>> table_;
};

StructureConstants structure_constants(const SlBasis& basis);

/// Exact element of SU(n) with entries in Q(i). Construction validates
/// unitarity and unit determinant.
class GroupElement {
public:
    explicit GroupElement(DenseMatrix matrix);
    static GroupElement identity(int n);

    [[nodiscard]] int n() const { return static_cast<int>(matrix_.rows()); }
    [[nodiscard]] const DenseMatrix& matrix() const { return matrix_; }
    [[nodiscard]] GroupElement inverse() const;
    [[nodiscard]] bool is_identity() const;

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.matrix_ == b.matrix_; }

private:
    struct Trusted {};
    GroupElement(DenseMatrix matrix, Trusted) : matrix_(std::move(matrix)) {}
    DenseMatrix matrix_;
};

class InvalidGroupElement : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// g⁻¹ x g.
DenseMatrix adjoint_action(const GroupElement& g, const DenseMatrix& x);

/// Matrix of X ↦ g X g⁻¹ on sl(n) in the fixed basis: column j holds the
/// coordinates of g X_j g⁻¹.
DenseMatrix adjoint_matrix(const GroupElement& g, const SlBasis& basis);

/// Diagonal phases (powers of i), signed permutations with determinant one,
/// and a few of their products; identity first.
std::vector<GroupElement> test_group_elements(int n);

/// Adds rational rotations built from the (3, 4, 5) triple to the test set,
/// giving non-monomial elements.
std::vector<GroupElement> extended_test_elements(int n);

/// Shared per-n tables: basis, structure constants and exterior index order.
struct LieContext {
    explicit LieContext(int n);

    int n;
    int dim;  // n² − 1
    SlBasis basis;
    StructureConstants constants;
    ExteriorBasis exterior;
    /// Chevalley–Eilenberg differential of the scalar basis form e^S, as a
    /// list of (mask, coefficient).
    [[nodiscard]] const std::vector<std::pair<Mask, GR>>& d_scalar(Mask s) const { return d_scalar_.at(s); }
    /// [X_k, E_ab] for every basis element k and matrix unit (a, b).
    [[nodiscard]] const DenseMatrix& bracket_unit(int k, int a, int b) const {
        return bracket_units_.at(static_cast<size_t>((k * n + a) * n + b));
    }

private:
    std::vector<std::vector<std::pair<Mask, GR>>> d_scalar_;
    std::vector<DenseMatrix> bracket_units_;
};

/// Cached context; safe to call concurrently.
const LieContext& lie_context(int n);

}  // namespace ncgeo
