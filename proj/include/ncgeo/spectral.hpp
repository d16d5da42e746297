#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncgeo/linalg.hpp"

namespace ncgeo {

using Bidegree = std::pair<int, int>;

/// First-quadrant double complex presented by slot dimensions and the two
/// differential blocks. h has bidegree (1, 0), v has bidegree (0, 1) and
/// already carries the (−1)^p sign, so the total differential is D = h + v.
class DoubleComplexView {
public:
    DoubleComplexView() = default;
    DoubleComplexView(int p_max, int q_max);

    [[nodiscard]] int p_max() const { return p_max_; }
    [[nodiscard]] int q_max() const { return q_max_; }
    [[nodiscard]] int max_total_degree() const { return p_max_ + q_max_; }

    void set_dim(int p, int q, size_t dim);
    /// Block (p, q) → (p+1, q); shape must match the slot dimensions.
    void set_h(int p, int q, SparseMatrix m);
    /// Block (p, q) → (p, q+1).
    void set_v(int p, int q, SparseMatrix m);

    /// Zero outside 0 ≤ p ≤ p_max, 0 ≤ q ≤ q_max.
    [[nodiscard]] size_t dim(int p, int q) const;
    /// Zero matrix of the right shape when unset.
    [[nodiscard]] SparseMatrix h(int p, int q) const;
    [[nodiscard]] SparseMatrix v(int p, int q) const;

    [[nodiscard]] size_t total_dim(int k) const;
    /// Offset of slot (p, k−p) inside the total degree k space.
    [[nodiscard]] size_t total_offset(int p, int k) const;
    /// D: C^k → C^{k+1}.
    [[nodiscard]] SparseMatrix total_matrix(int k) const;

    /// Description of the first failing identity among h² = 0, v² = 0,
    /// hv + vh = 0, or nullopt.
    [[nodiscard]] std::optional<std::string> validation_error() const;

private:
    int p_max_ = -1;
    int q_max_ = -1;
    std::map<Bidegree, size_t> dims_;
    std::map<Bidegree, SparseMatrix> h_;
    std::map<Bidegree, SparseMatrix> v_;
};

class InvalidDoubleComplex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Betti numbers of (total complex, D), degrees 0…max_total_degree.
std::vector<size_t> total_betti(const DoubleComplexView& view, Execution exec = Execution::parallel);

/// E_r for the column filtration F^p = ⊕_{s≥p}. spaces holds, per slot, a
/// basis of slot vectors representing the classes; d holds d_r from (p, q)
/// to (p+r, q−r+1) in those class coordinates.
struct SpectralPage {
    int r = 0;
    std::map<Bidegree, SubspaceBasis> spaces;
    std::map<Bidegree, SparseMatrix> d;

    [[nodiscard]] size_t dim(int p, int q) const;
    /// [p, q, dim] for every slot with nonzero dimension.
    [[nodiscard]] std::vector<std::array<int64_t, 3>> nonzero_slots() const;
};

/// Page r ≥ 0. Pages 0 to 2 follow the columnwise construction (v-cohomology,
/// then cohomology of the induced h, with the d_2 zig-zag); later pages use
/// generic_page.
SpectralPage page(const DoubleComplexView& view, int r, Execution exec = Execution::parallel);

/// Page r from the filtration directly: Z_r/B_r projected to the leading slot.
/// Slower; used to cross-check the columnwise route.
SpectralPage generic_page(const DoubleComplexView& view, int r);

struct DegenerationReport {
    bool degenerate = false;
    /// Σ_{p+q=k} dim E_2^{p,q} per total degree.
    std::vector<size_t> e2_sums;
    std::vector<size_t> total_betti;
    /// First failing degree and e2_sums[k] − total_betti[k] there.
    std::optional<int> first_failure;
    int64_t gap = 0;
};

DegenerationReport degeneration_check(const SpectralPage& e2, const std::vector<size_t>& total_betti);
DegenerationReport degeneration_check(const DoubleComplexView& view, const std::vector<size_t>& total_betti);

/// Four one-dimensional slots (0,1), (1,0), (1,1), (2,0) with v: (1,0) → (1,1),
/// h: (0,1) → (1,1) and h: (1,0) → (2,0) all equal to 1. Its d_2 is nonzero.
DoubleComplexView synthetic_nondegenerate_view();

}  // namespace ncgeo
