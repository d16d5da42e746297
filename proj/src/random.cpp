#include "ncgeo/random.hpp"

namespace ncgeo {

DenseMatrix TrialRng::matrix(int n) {
    const auto un = static_cast<size_t>(n);
    DenseMatrix m(un, un);
    for (size_t r = 0; r < un; ++r)
        for (size_t c = 0; c < un; ++c) m(r, c) = coefficient();
    return m;
}

NCForm TrialRng::form(int n, int degree, unsigned density) {
    const auto& ctx = lie_context(n);
    const auto masks = ctx.exterior.of_degree(degree);
    NCForm w(n, degree);
    for (const Mask s : masks)
        if (chance(density)) w.add(s, matrix(n));
    if (w.is_zero() && !masks.empty()) w.add(masks[index(masks.size())], matrix(n));
    return w;
}

SparseVector TrialRng::vector(size_t dim, unsigned density) {
    std::vector<SparseEntry> raw;
    for (size_t k = 0; k < dim; ++k)
        if (chance(density)) raw.push_back({static_cast<uint32_t>(k), coefficient()});
    return SparseVector::from_unsorted(std::move(raw));
}

}  // namespace ncgeo
