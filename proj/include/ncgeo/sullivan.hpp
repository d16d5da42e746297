#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "ncgeo/exterior.hpp"
#include "ncgeo/simplicial.hpp"

namespace ncgeo {

/// Polynomial differential form on one simplex (v_0, …, v_d) in the local
/// coordinates x_k = λ_{v_k}, k = 1…d; λ_{v_0} = 1 − Σ x_k is eliminated.
/// Terms are keyed by (exponent vector, differential mask over dx_1…dx_d,
/// stored as bits 0…d−1).
class PolyForm {
public:
    using Exponents = std::vector<uint8_t>;
    using Key = std::pair<Exponents, Mask>;

    PolyForm(int vars, int degree);

    static PolyForm constant(int vars, const GR& c);
    /// λ_{v_j} in local coordinates (j = 0 is the eliminated vertex).
    static PolyForm lambda(int vars, int j);
    static PolyForm dlambda(int vars, int j);

    [[nodiscard]] int vars() const { return vars_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] const std::map<Key, GR>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    /// Largest total polynomial degree of a term, −1 for the zero form.
    [[nodiscard]] int poly_degree() const;

    void add_term(const Exponents& e, Mask dx, const GR& c);

    /// Coefficient of dx^mask at a point given by local coordinates.
    [[nodiscard]] GR evaluate(const std::vector<GR>& x, Mask dx) const;

    [[nodiscard]] PolyForm d() const;

    PolyForm& operator+=(const PolyForm& rhs);
    PolyForm& operator-=(const PolyForm& rhs);
    PolyForm& operator*=(const GR& c);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    friend PolyForm operator*(PolyForm a, const GR& c) { return a *= c; }
    friend bool operator==(const PolyForm& a, const PolyForm& b) {
        return a.vars_ == b.vars_ && (a.degree_ == b.degree_ || a.is_zero()) && a.terms_ == b.terms_;
    }

private:
    int vars_;
    int degree_;
    std::map<Key, GR> terms_;
};

PolyForm wedge(const PolyForm& a, const PolyForm& b);

/// Restriction of a form on sigma to its face tau (affine pullback).
PolyForm restrict_poly(const PolyForm& f, const Simplex& sigma, const Simplex& tau);

/// Whitney form φ_τ = r!·Σ_i (−1)^i λ_{t_i} dλ_{t_0} ∧ … (omit i) … ∧ dλ_{t_r} on sigma;
/// zero when tau is not a face of sigma.
PolyForm whitney_polynomial(const Simplex& tau, const Simplex& sigma);

/// Piecewise-polynomial form: one PolyForm per simplex of the domain.
/// Simplices of dimension below the degree carry nothing.
class SullivanForm {
public:
    SullivanForm(std::shared_ptr<const SimplicialComplex> domain, int degree, int cap);

    static SullivanForm from_whitney(const WhitneyForm& w);

    [[nodiscard]] const std::shared_ptr<const SimplicialComplex>& domain() const { return domain_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] int cap() const { return cap_; }
    [[nodiscard]] const std::map<Simplex, PolyForm>& pieces() const { return pieces_; }
    [[nodiscard]] PolyForm on(const Simplex& s) const;
    void set(const Simplex& s, PolyForm f);

    /// Face compatibility and the polynomial degree cap.
    [[nodiscard]] bool is_valid() const;
    [[nodiscard]] bool is_zero() const { return pieces_.empty(); }

    SullivanForm& operator+=(const SullivanForm& rhs);
    SullivanForm& operator*=(const GR& c);
    friend SullivanForm operator+(SullivanForm a, const SullivanForm& b) { return a += b; }
    friend SullivanForm operator*(SullivanForm a, const GR& c) { return a *= c; }
    /// Equal degree and pieces; domains compared as complexes.
    friend bool operator==(const SullivanForm& a, const SullivanForm& b);

private:
    std::shared_ptr<const SimplicialComplex> domain_;
    int degree_;
    int cap_;
    std::map<Simplex, PolyForm> pieces_;
};

/// λ_alpha · s on the domain of s; cap rises by one.
SullivanForm barycentric_multiply(int alpha, const SullivanForm& s);
/// λ_alpha · s extended by zero to a larger complex. Every simplex of target
/// containing alpha must lie in the domain of s.
SullivanForm barycentric_multiply(int alpha, const SullivanForm& s, std::shared_ptr<const SimplicialComplex> target);

SullivanForm sullivan_d(const SullivanForm& s);
SullivanForm sullivan_restrict(const SullivanForm& s, std::shared_ptr<const SimplicialComplex> sub);

/// Value of a 0-form at a point of simplex s given by barycentric coordinates
/// (one per vertex of s, summing to one).
GR evaluate_at(const SullivanForm& f, const Simplex& s, const std::vector<GR>& barycentric);

}  // namespace ncgeo
