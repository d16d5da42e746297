#include "ncgeo/exterior.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncgeo {

int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (Mask rest = b; rest != 0; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        // elements of a greater than j
        inversions += std::popcount(a & ~((Mask{2} << j) - 1));
    }
    return (inversions & 1) ? -1 : 1;
}

SortedIndices sort_indices(std::span<const int> seq) {
    std::vector<int> v(seq.begin(), seq.end());
    int sign = 1;
    // insertion sort, counting transpositions
    for (size_t i = 1; i < v.size(); ++i) {
        for (size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    }
    Mask m = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i > 0 && v[i] == v[i - 1]) return {0, 0};
        m |= Mask{1} << v[i];
    }
    return {sign, m};
}

std::vector<int> indices_of(Mask m) {
    std::vector<int> out;
    for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

namespace {

void lex_subsets(int dim, int q, int start, Mask current, std::vector<Mask>& out) {
    if (q == 0) {
        out.push_back(current);
        return;
    }
    for (int k = start; k <= dim - q; ++k) lex_subsets(dim, q - 1, k + 1, current | (Mask{1} << k), out);
}

}  // namespace

ExteriorBasis::ExteriorBasis(int dim) : dim_(dim) {
    if (dim < 0 || dim > 20) throw std::invalid_argument("ExteriorBasis: dimension out of supported range");
    by_degree_.resize(static_cast<size_t>(dim) + 1);
    rank_.assign(size_t{1} << dim, 0);
    for (int q = 0; q <= dim; ++q) {
        auto& group = by_degree_[static_cast<size_t>(q)];
        lex_subsets(dim, q, 0, 0, group);
        for (size_t k = 0; k < group.size(); ++k) rank_[group[k]] = static_cast<uint32_t>(k);
    }
}

}  // namespace ncgeo
