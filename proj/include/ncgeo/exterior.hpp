#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace ncgeo {

/// Index subset of the derivation basis, bit k set when X_k is present.
using Mask = uint32_t;

inline int degree_of(Mask m) { return std::popcount(m); }

/// Sign of e^A ∧ e^B relative to e^(A∪B) for disjoint A, B: the parity of
/// pairs (a, b) with a in A, b in B and a > b. Returns 0 when A and B overlap.
int wedge_sign(Mask a, Mask b);

/// Sorts an index sequence; returns the permutation sign and the mask, or
/// sign 0 when an index repeats.
struct SortedIndices {
    int sign;
    Mask mask;
};
SortedIndices sort_indices(std::span<const int> seq);

/// Position of bit k among the set bits of m (number of set bits below k).
inline int position_in(Mask m, int k) { return std::popcount(m & ((Mask{1} << k) - 1)); }

std::vector<int> indices_of(Mask m);

/// Subsets of {0..dim-1} grouped by size, each group in lexicographic order of
/// the sorted index tuples. Fixes the coordinate order of every exterior power.
class ExteriorBasis {
public:
    explicit ExteriorBasis(int dim);

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] std::span<const Mask> of_degree(int q) const { return by_degree_.at(static_cast<size_t>(q)); }
    [[nodiscard]] size_t count(int q) const {
        return q < 0 || q > dim_ ? 0 : by_degree_[static_cast<size_t>(q)].size();
    }
    /// Position of m within its degree group.
    [[nodiscard]] uint32_t rank_of(Mask m) const { return rank_[m]; }
    [[nodiscard]] Mask top() const { return dim_ == 32 ? ~Mask{0} : (Mask{1} << dim_) - 1; }

private:
    int dim_;
    std::vector<std::vector<Mask>> by_degree_;
    std::vector<uint32_t> rank_;
};

}  // namespace ncgeo
