#pragma once

#include <map>
#include <vector>

#include "ncgeo/lie.hpp"

namespace ncgeo {

/// Element of M_n ⊗ Λ^q sl(n)*: a matrix per strictly increasing index subset
/// of the derivation basis. The value of the form on (ad X_s1, …, ad X_sq) is
/// the component at {s1, …, sq}.
class NCForm {
public:
    NCForm(int n, int degree);

    /// a ⊗ e^S.
    static NCForm basis_form(int n, Mask s, const DenseMatrix& a);
    /// c·1 ⊗ e^S.
    static NCForm scalar(int n, Mask s, const GR& c = GR(1));

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] const std::map<Mask, DenseMatrix>& components() const { return components_; }
    /// Component at s, the zero matrix when absent.
    [[nodiscard]] DenseMatrix component(Mask s) const;
    [[nodiscard]] bool is_zero() const { return components_.empty(); }
    /// True when every component is a multiple of the identity.
    [[nodiscard]] bool is_scalar() const;

    /// Adds a to the component at s; s must have the form's degree.
    void add(Mask s, const DenseMatrix& a);

    NCForm& operator+=(const NCForm& rhs);
    NCForm& operator-=(const NCForm& rhs);
    NCForm& operator*=(const GR& c);
    friend NCForm operator+(NCForm a, const NCForm& b) { return a += b; }
    friend NCForm operator-(NCForm a, const NCForm& b) { return a -= b; }
    friend NCForm operator*(NCForm a, const GR& c) { return a *= c; }
    friend NCForm operator*(const GR& c, NCForm a) { return a *= c; }
    friend bool operator==(const NCForm& a, const NCForm& b);

private:
    int n_;
    int degree_;
    std::map<Mask, DenseMatrix> components_;
};

/// Coordinates on V_q = Λ^q ⊗ M_n: index rank(S)·n² + a·n + b.
size_t vq_dim(int n, int q);
SparseVector to_vector(const NCForm& w);
NCForm from_vector(int n, int q, const SparseVector& v);

NCForm wedge(const NCForm& a, const NCForm& b);
NCForm d_prime(const NCForm& w);
/// Matrix of d′: V_q → V_{q+1}.
SparseMatrix d_prime_matrix(int n, int q, Execution exec = Execution::parallel);

/// Contraction with ad X_k in the first slot.
NCForm interior(int k, const NCForm& w);
/// L_k = i_k d′ + d′ i_k.
NCForm lie_derivative(int k, const NCForm& w);

/// The action of ad X_k on M_n ⊗ Λ sl(n)*:
/// (L w)(Y_1, …) = [X_k, w(Y_1, …)] − Σ_i w(…, [X_k, Y_i], …).
NCForm lie_action(int k, const NCForm& w);

/// iθ: the sl(n)-valued 1-form with component X_k at {k}.
NCForm theta(int n);

/// (w^g)(X_1, …) = g⁻¹ w(g X_1 g⁻¹, …) g.
NCForm gauge_transform(const GroupElement& g, const NCForm& w);
/// Matrix of w ↦ w^g on V_q.
SparseMatrix gauge_matrix(const GroupElement& g, int q);

/// tr(top component)/n in top degree n²−1, zero otherwise.
GR nc_integral_point(const NCForm& w);

/// tr((iθ)^{2r−1}) ⊗ 1: the antisymmetrized trace tr(X_1 ⋯ X_{2r−1}) with no
/// factorial normalization.
NCForm primitive_form(int r, int n);

/// Pullback of a form over sl(n+1) along the upper-left embedding
/// sl(n) → sl(n+1), matrix values cut to the upper-left n×n block.
NCForm restrict_to_upper_block(const NCForm& w, int n);

struct StabilizationReport {
    int r;
    int n;
    bool degree_matches;
    bool restriction_matches;
    bool both_closed;
};
/// Builds c_{2r−1} for n and n+1 from the same formula and compares.
StabilizationReport stabilization_check(int r, int n);

struct GradedCohomologyTable {
    std::vector<size_t> betti;
    std::vector<std::vector<NCForm>> representatives;
};

/// Scalar forms killed by every L_k, per degree.
GradedCohomologyTable invariant_subspace(int n, Execution exec = Execution::parallel);

struct MatrixCohomology {
    GradedCohomologyTable table;
    /// Invariant representatives are closed and independent modulo exact
    /// forms in every degree, and the counts agree.
    bool invariants_isomorphic = false;
    bool has_representatives = false;
};

/// H(M_n ⊗ Λ sl(n)*, d′). Without representatives only ranks are computed.
MatrixCohomology matrix_cohomology(int n, bool with_representatives = true, Execution exec = Execution::parallel);

/// Coefficients of Π_{r=2}^{n} (1 + t^{2r−1}).
std::vector<size_t> invariant_poincare_series(int n);

}  // namespace ncgeo
