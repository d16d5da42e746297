#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "ncgeo/cocycle.hpp"
#include "ncgeo/nc_form.hpp"
#include "ncgeo/spectral.hpp"
#include "ncgeo/sullivan.hpp"

namespace ncgeo {

/// Section of the twisted sheaf over the closed star of one nerve simplex:
/// Whitney forms on the star tensored with M_n ⊗ Λ sl(n)*. parts maps
/// (star simplex τ of dimension r, subset S of size q − r) to the matrix
/// coefficient of φ_τ ⊗ e^S.
struct LocalNCSection {
    Simplex simplex;
    int degree = 0;
    std::map<std::pair<Simplex, Mask>, DenseMatrix> parts;

    /// Accumulates; drops the part when it becomes zero.
    void add(const Simplex& tau, Mask s, const DenseMatrix& a);
    [[nodiscard]] bool is_zero() const { return parts.empty(); }
    friend bool operator==(const LocalNCSection& a, const LocalNCSection& b) {
        return a.simplex == b.simplex && (a.degree == b.degree || a.is_zero()) && a.parts == b.parts;
    }
};

/// Element of C^{p,q}: one section per p-simplex of the nerve. Missing
/// entries are zero. p = −1 is a collection over the vertices that agrees on
/// every overlap after gauge comparison (a global section).
struct CechCochain {
    int p = 0;
    int q = 0;
    std::map<Simplex, LocalNCSection> entries;

    [[nodiscard]] bool is_zero() const;
    friend bool operator==(const CechCochain& a, const CechCochain& b);
};

/// Element of the total complex in degree k: components by Čech degree.
struct TotalCochain {
    int degree = 0;
    std::map<int, CechCochain> components;

    [[nodiscard]] bool is_zero() const;
    friend bool operator==(const TotalCochain& a, const TotalCochain& b);
};

/// The twisted Čech double complex of a complex with a transition cocycle.
/// Coordinates of slot (p, q): nerve p-simplices in order; inside each, r
/// ascending, star r-simplices in order, then the V_{q−r} coordinate.
class CechComplex {
public:
    /// Validates the cocycle unless check_cocycle is false (used to exhibit
    /// what goes wrong with broken data).
    explicit CechComplex(TransitionCocycle g, bool check_cocycle = true);

    [[nodiscard]] const SimplicialComplex& nerve() const { return *cocycle_.complex(); }
    [[nodiscard]] const TransitionCocycle& cocycle() const { return cocycle_; }
    [[nodiscard]] int n() const { return cocycle_.n(); }
    /// n² − 1.
    [[nodiscard]] int fiber_dim() const { return n() * n() - 1; }
    [[nodiscard]] int p_max() const { return nerve().dimension(); }
    [[nodiscard]] int q_max() const { return nerve().dimension() + fiber_dim(); }

    [[nodiscard]] const std::shared_ptr<const SimplicialComplex>& star_of(const Simplex& sigma) const;

    [[nodiscard]] size_t slot_dim(int p, int q) const;
    [[nodiscard]] SparseVector to_vector(const CechCochain& c) const;
    [[nodiscard]] CechCochain from_vector(int p, int q, const SparseVector& v) const;

    /// δ: C^{p,q} → C^{p+1,q}.
    [[nodiscard]] SparseMatrix delta_block(int p, int q, Execution exec = Execution::parallel) const;
    /// Entrywise local_d: C^{p,q} → C^{p,q+1}, without the (−1)^p.
    [[nodiscard]] SparseMatrix local_d_block(int p, int q, Execution exec = Execution::parallel) const;
    /// All slots, h = δ and v = (−1)^p local_d.
    [[nodiscard]] DoubleComplexView view(Execution exec = Execution::parallel) const;

    [[nodiscard]] const SparseMatrix& gauge_block(int a, int b, int s) const;

private:
    [[nodiscard]] size_t entry_dim(const Simplex& sigma, int q) const;
    [[nodiscard]] size_t entry_offset(const Simplex& sigma, int r, int q) const;

    TransitionCocycle cocycle_;
    std::map<Simplex, std::shared_ptr<const SimplicialComplex>> stars_;
    // coboundary matrices of each star, by r
    std::map<Simplex, std::vector<SparseMatrix>> star_coboundary_;
    // offsets_[p][q][i]: start of the i-th p-simplex inside slot (p, q)
    std::vector<std::vector<std::vector<size_t>>> offsets_;
    std::vector<SparseMatrix> d_prime_;  // by s
    mutable std::map<std::tuple<int, int, int>, SparseMatrix> gauge_cache_;
    mutable std::mutex gauge_mutex_;
};

class NotDeltaClosed : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotGlobalSection : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// d_W ⊗ 1 + (−1)^r 1 ⊗ d′ on each part.
LocalNCSection local_d(const LocalNCSection& s, const CechComplex& cx);
/// Keeps the parts whose Whitney simplex lies in the star of sub.
LocalNCSection restrict_section(const LocalNCSection& s, const Simplex& sub, const CechComplex& cx);
LocalNCSection gauge_section(const GroupElement& g, const LocalNCSection& s);

/// Twisted Čech differential. For p = −1 it checks that the collection is a
/// global section and returns it as a 0-cochain.
CechCochain cech_delta(const CechCochain& c, const CechComplex& cx);
bool is_global_section(const CechCochain& c, const CechComplex& cx);
/// (−1)^p local_d on every entry.
CechCochain signed_local_d(const CechCochain& c, const CechComplex& cx);

TotalCochain total_D(const TotalCochain& c, const CechComplex& cx);
TotalCochain total_D(const CechCochain& c, const CechComplex& cx);

/// Total cohomology by exact rank, degrees 0…dim K + n² − 1 (longer only if
/// a higher degree is nonzero).
std::vector<size_t> total_cohomology(const CechComplex& cx, Execution exec = Execution::parallel);
std::vector<size_t> total_cohomology(const SimplicialComplex& k, int n, const TransitionCocycle& g,
                                     Execution exec = Execution::parallel);

/// Betti numbers predicted by H(K) ⊗ (Λ sl(n)*)_Inv.
std::vector<size_t> product_prediction(const std::vector<size_t>& derham, int n);

// ---------------------------------------------------------------------------
// Sullivan side, where the homotopy lives

/// Local section with piecewise-polynomial coefficients: one scalar Sullivan
/// form on the star per (exterior subset S, matrix entry a·n + b).
struct PolySection {
    Simplex simplex;
    int degree = 0;
    std::shared_ptr<const SimplicialComplex> domain;
    std::map<std::pair<Mask, uint32_t>, SullivanForm> parts;

    void add(Mask s, uint32_t ab, const SullivanForm& f);
    [[nodiscard]] bool is_zero() const { return parts.empty(); }
    friend bool operator==(const PolySection& a, const PolySection& b);
};

struct SullivanCochain {
    int p = 0;
    int q = 0;
    std::map<Simplex, PolySection> entries;

    [[nodiscard]] bool is_zero() const;
    friend bool operator==(const SullivanCochain& a, const SullivanCochain& b);
};

PolySection embed_section(const LocalNCSection& s, const CechComplex& cx);
SullivanCochain embed_cochain(const CechCochain& c, const CechComplex& cx);
/// Twisted Čech differential on the polynomial side; p = −1 is the identity
/// onto vertex entries.
SullivanCochain sullivan_delta(const SullivanCochain& c, const CechComplex& cx);

/// η with δη = c, built from barycentric coordinates as partition of unity.
/// c must be δ-closed (throws NotDeltaClosed); for p = 0 the result is a
/// p = −1 collection.
SullivanCochain mv_homotopy(const CechCochain& c, const CechComplex& cx);

// ---------------------------------------------------------------------------
// Integration along the fiber

/// Trace/n of the exterior-top part of every entry, as a cochain of the
/// scalar complex (n = 1, trivial cocycle) over the same nerve.
CechCochain fiber_integrate(const CechCochain& c, const CechComplex& cx);
TotalCochain fiber_integrate(const TotalCochain& c, const CechComplex& cx);

/// The 0-cochain (constant 1 on every star) ⊗ c_{2n−1} for n = 2 this is the
/// top class along the fiber.
CechCochain constant_primitive_cochain(const CechComplex& cx, int r);

}  // namespace ncgeo
