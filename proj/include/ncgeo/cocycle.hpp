#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string_view>

#include "ncgeo/lie.hpp"
#include "ncgeo/simplicial.hpp"

namespace ncgeo {

class CocycleViolation : public std::runtime_error {
public:
    CocycleViolation(const std::string& what, Simplex witness) : std::runtime_error(what), witness_(std::move(witness)) {}
    [[nodiscard]] const Simplex& witness() const { return witness_; }

private:
    Simplex witness_;
};

/// Locally constant SU(n) transition data g_{αβ} on the edges of a complex.
/// Only α < β is stored; g_{βα} = g_{αβ}⁻¹ and g_{αα} = 1. Edges without an
/// entry carry the identity.
class TransitionCocycle {
public:
    TransitionCocycle(std::shared_ptr<const SimplicialComplex> complex, int n);

    [[nodiscard]] const std::shared_ptr<const SimplicialComplex>& complex() const { return complex_; }
    [[nodiscard]] int n() const { return n_; }

    /// Sets g_{ab}; for a > b the inverse is stored on (b, a).
    void set(int a, int b, const GroupElement& g);
    [[nodiscard]] GroupElement value(int a, int b) const;
    [[nodiscard]] const std::map<std::pair<int, int>, GroupElement>& stored() const { return values_; }

    /// First 2-simplex {α<β<γ} with g_{αβ} g_{βγ} ≠ g_{αγ}.
    [[nodiscard]] std::optional<Simplex> violation() const;
    /// Throws CocycleViolation carrying the witness.
    void validate() const;

private:
    std::shared_ptr<const SimplicialComplex> complex_;
    int n_;
    std::map<std::pair<int, int>, GroupElement> values_;
};

TransitionCocycle trivial_cocycle(std::shared_ptr<const SimplicialComplex> k, int n);
/// g_{αβ} = h_α⁻¹ h_β.
TransitionCocycle coboundary_cocycle(std::shared_ptr<const SimplicialComplex> k, const std::vector<GroupElement>& h);
/// g'_{αβ} = h_α⁻¹ g_{αβ} h_β, an equivalent cocycle.
TransitionCocycle conjugate_cocycle(const TransitionCocycle& g, const std::vector<GroupElement>& h);
/// Cocycle over a relabeled complex (vertex v becomes new_id[v]).
TransitionCocycle relabel_cocycle(const TransitionCocycle& g, std::shared_ptr<const SimplicialComplex> relabeled,
                                  const std::vector<int>& new_id);

/// diag(i, −i, 1, …, 1).
GroupElement phase_i(int n);

/// A nontrivial flat cocycle for each bundled complex:
///   s1-hexagon: diag(i, −i) on the closing edge (v0, v5);
///   s2-octahedron: the coboundary of a fixed vertex assignment;
///   t2-nine: commuting holonomies diag(i, −i) and diag(−1, −1) around the
///   two cycles of the torus.
TransitionCocycle bundled_flat_cocycle(std::string_view complex_name, std::shared_ptr<const SimplicialComplex> k, int n);

}  // namespace ncgeo
