#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncgeo/linalg.hpp"

namespace ncgeo {

/// Strictly increasing list of vertex ids.
using Simplex = std::vector<int>;

/// Face-closed set of simplices over a fixed, ordered vertex list. A
/// subcomplex keeps the full vertex list of its parent, so vertex ids and the
/// orientation they induce are shared.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Closes the given simplices under faces. Vertex ids index names.
    static SimplicialComplex from_simplices(std::vector<std::string> names, std::vector<Simplex> simplices);

    [[nodiscard]] const std::vector<std::string>& vertex_names() const { return names_; }
    /// Largest simplex dimension, −1 when empty.
    [[nodiscard]] int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    [[nodiscard]] size_t count(int p) const;
    [[nodiscard]] size_t total_count() const;
    [[nodiscard]] std::span<const Simplex> simplices(int p) const;
    [[nodiscard]] std::optional<size_t> index_of(const Simplex& s) const;
    [[nodiscard]] bool contains(const Simplex& s) const { return index_.count(s) > 0; }
    [[nodiscard]] bool is_subcomplex_of(const SimplicialComplex& other) const;
    /// Vertex id for a name, or nullopt.
    [[nodiscard]] std::optional<int> vertex_id(std::string_view name) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.names_ == b.names_ && a.by_dim_ == b.by_dim_;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::map<Simplex, size_t> index_;
};

class NotInComplex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// σ with its i-th vertex removed.
Simplex face(const Simplex& s, size_t i);
/// Sorted union, or nullopt when the vertex sets overlap.
std::optional<Simplex> join(const Simplex& a, const Simplex& b);

/// Closed star: every simplex containing sigma, with all faces.
SimplicialComplex star(const SimplicialComplex& k, const Simplex& sigma);

/// Simplicial coboundary C^p → C^{p+1}: entry (−1)^i at (τ, τ minus vertex i).
SparseMatrix coboundary_matrix(const SimplicialComplex& k, int p);

/// Whitney form as a simplicial cochain: the coefficient of φ_τ for every
/// p-simplex τ, in the order of k.simplices(p).
struct WhitneyForm {
    std::shared_ptr<const SimplicialComplex> complex;
    int degree = 0;
    SparseVector coefficients;
};

WhitneyForm whitney_d(const WhitneyForm& w);

/// Betti numbers of the Whitney complex over Q(i), degrees 0…dim.
std::vector<size_t> derham_cohomology(const SimplicialComplex& k, Execution exec = Execution::parallel);

/// Renames vertex v to new_id[v] and re-sorts; the complex is the same up to
/// orientation conventions.
SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<int>& new_id);

SimplicialComplex hexagon_circle();
SimplicialComplex octahedron_sphere();
/// 3×3 grid with both coordinates mod 3, each square split along its diagonal.
SimplicialComplex nine_vertex_torus();

/// s1-hexagon, s2-octahedron or t2-nine.
std::optional<SimplicialComplex> bundled_complex(std::string_view name);
std::vector<std::string> bundled_complex_names();

}  // namespace ncgeo
