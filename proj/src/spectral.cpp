#include "ncgeo/spectral.hpp"

#include <algorithm>

namespace ncgeo {

namespace {

SparseVector combine(std::span<const SparseVector> basis, std::span<const GR> coords) {
    SparseVector out;
    for (size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) out = axpy(out, coords[i], basis[i]);
    return out;
}

SparseMatrix columns_to_matrix(size_t rows, const std::vector<std::vector<GR>>& cols) {
    std::vector<SparseVector> sv;
    sv.reserve(cols.size());
    for (const auto& c : cols) sv.push_back(to_sparse(c));
    return SparseMatrix::from_columns(rows, sv);
}

void check_block(const SparseMatrix& m, size_t rows, size_t cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols)
        throw InvalidDoubleComplex(std::string("DoubleComplexView: ") + what + " block has the wrong shape");
}

}  // namespace

DoubleComplexView::DoubleComplexView(int p_max, int q_max) : p_max_(p_max), q_max_(q_max) {
    if (p_max < 0 || q_max < 0) throw std::invalid_argument("DoubleComplexView: negative extent");
}

void DoubleComplexView::set_dim(int p, int q, size_t dim) {
    if (p < 0 || q < 0 || p > p_max_ || q > q_max_) throw std::out_of_range("DoubleComplexView: slot outside the grid");
    dims_[{p, q}] = dim;
}

void DoubleComplexView::set_h(int p, int q, SparseMatrix m) {
    check_block(m, dim(p + 1, q), dim(p, q), "h");
    h_[{p, q}] = std::move(m);
}

void DoubleComplexView::set_v(int p, int q, SparseMatrix m) {
    check_block(m, dim(p, q + 1), dim(p, q), "v");
    v_[{p, q}] = std::move(m);
}

size_t DoubleComplexView::dim(int p, int q) const {
    auto it = dims_.find({p, q});
    return it == dims_.end() ? 0 : it->second;
}

SparseMatrix DoubleComplexView::h(int p, int q) const {
    auto it = h_.find({p, q});
    if (it != h_.end()) return it->second;
    return SparseMatrix(dim(p + 1, q), dim(p, q));
}

SparseMatrix DoubleComplexView::v(int p, int q) const {
    auto it = v_.find({p, q});
    if (it != v_.end()) return it->second;
    return SparseMatrix(dim(p, q + 1), dim(p, q));
}

size_t DoubleComplexView::total_dim(int k) const {
    size_t d = 0;
    for (int p = 0; p <= p_max_; ++p) d += dim(p, k - p);
    return d;
}

size_t DoubleComplexView::total_offset(int p, int k) const {
    size_t off = 0;
    for (int s = 0; s < p; ++s) off += dim(s, k - s);
    return off;
}

SparseMatrix DoubleComplexView::total_matrix(int k) const {
    std::vector<Triplet> t;
    for (int p = 0; p <= p_max_; ++p) {
        const int q = k - p;
        if (dim(p, q) == 0) continue;
        const auto col0 = static_cast<uint32_t>(total_offset(p, k));
        auto emit = [&](const SparseMatrix& m, int tp) {
            const auto row0 = static_cast<uint32_t>(total_offset(tp, k + 1));
            for (size_t r = 0; r < m.rows(); ++r)
                for (const auto& e : m.row(r).entries)
                    t.push_back({row0 + static_cast<uint32_t>(r), col0 + e.index, e.value});
        };
        if (p < p_max_) emit(h(p, q), p + 1);
        emit(v(p, q), p);
    }
    return SparseMatrix::from_triplets(total_dim(k + 1), total_dim(k), std::move(t));
}

std::optional<std::string> DoubleComplexView::validation_error() const {
    auto label = [](const char* what, int p, int q) {
        return std::string(what) + " fails at (" + std::to_string(p) + ", " + std::to_string(q) + ")";
    };
    for (int p = 0; p <= p_max_; ++p)
        for (int q = 0; q <= q_max_; ++q) {
            if (dim(p, q) == 0) continue;
            if (!h(p + 1, q).multiply(h(p, q)).is_zero()) return label("h^2 = 0", p, q);
            if (!v(p, q + 1).multiply(v(p, q)).is_zero()) return label("v^2 = 0", p, q);
            SparseMatrix a = h(p, q + 1).multiply(v(p, q));
            SparseMatrix b = v(p + 1, q).multiply(h(p, q));
            std::vector<Triplet> t;
            for (size_t r = 0; r < a.rows(); ++r) {
                for (const auto& e : a.row(r).entries) t.push_back({static_cast<uint32_t>(r), e.index, e.value});
                for (const auto& e : b.row(r).entries) t.push_back({static_cast<uint32_t>(r), e.index, e.value});
            }
            if (!SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t)).is_zero())
                return label("hv + vh = 0", p, q);
        }
    return std::nullopt;
}

std::vector<size_t> total_betti(const DoubleComplexView& view, Execution exec) {
    const int top = view.max_total_degree();
    std::vector<size_t> ranks(static_cast<size_t>(top + 1));
    parallel_for(ranks.size(), exec, [&](size_t k) {
        ranks[k] = rank(view.total_matrix(static_cast<int>(k)), Execution::serial);
    });
    std::vector<size_t> betti;
    for (int k = 0; k <= top; ++k) {
        const size_t in = k > 0 ? ranks[static_cast<size_t>(k - 1)] : 0;
        betti.push_back(view.total_dim(k) - ranks[static_cast<size_t>(k)] - in);
    }
    return betti;
}

size_t SpectralPage::dim(int p, int q) const {
    auto it = spaces.find({p, q});
    return it == spaces.end() ? 0 : it->second.dim();
}

std::vector<std::array<int64_t, 3>> SpectralPage::nonzero_slots() const {
    std::vector<std::array<int64_t, 3>> out;
    for (const auto& [pq, s] : spaces)
        if (s.dim() > 0) out.push_back({pq.first, pq.second, static_cast<int64_t>(s.dim())});
    return out;
}

namespace {

struct ColumnwisePages {
    // E_1 as quotients inside each slot
    std::map<Bidegree, QuotientSpace> e1;
    // d_1 in E_1 class coordinates
    std::map<Bidegree, SparseMatrix> d1;
    // E_2 as quotients inside E_1 class coordinates
    std::map<Bidegree, QuotientSpace> e2;
};

ColumnwisePages columnwise(const DoubleComplexView& view, Execution exec) {
    ColumnwisePages out;
    std::vector<Bidegree> slots;
    for (int p = 0; p <= view.p_max(); ++p)
        for (int q = 0; q <= view.q_max(); ++q) slots.push_back({p, q});

    std::vector<QuotientSpace> e1(slots.size());
    parallel_for(slots.size(), exec, [&](size_t i) {
        const auto [p, q] = slots[i];
        e1[i] = QuotientSpace(kernel_basis(view.v(p, q)), image_basis(view.v(p, q - 1)));
    });
    for (size_t i = 0; i < slots.size(); ++i) out.e1.emplace(slots[i], std::move(e1[i]));

    std::vector<SparseMatrix> d1(slots.size());
    parallel_for(slots.size(), exec, [&](size_t i) {
        const auto [p, q] = slots[i];
        const QuotientSpace& src = out.e1.at({p, q});
        auto tgt = out.e1.find({p + 1, q});
        const size_t rows = tgt == out.e1.end() ? 0 : tgt->second.dim();
        std::vector<std::vector<GR>> cols;
        if (rows > 0) {
            const SparseMatrix hb = view.h(p, q);
            for (const auto& x : src.representatives().vectors()) cols.push_back(tgt->second.class_of(hb.apply(x)));
        } else {
            cols.assign(src.dim(), {});
        }
        d1[i] = columns_to_matrix(rows, cols);
    });
    for (size_t i = 0; i < slots.size(); ++i) out.d1.emplace(slots[i], std::move(d1[i]));

    for (const auto& pq : slots) {
        const auto [p, q] = pq;
        const SparseMatrix& d_out = out.d1.at(pq);
        auto in = out.d1.find({p - 1, q});
        const SparseMatrix d_in = in == out.d1.end() ? SparseMatrix(out.e1.at(pq).dim(), 0) : in->second;
        out.e2.emplace(pq, QuotientSpace(kernel_basis(d_out), image_basis(d_in)));
    }
    return out;
}

SubspaceBasis lift(const QuotientSpace& inner, const QuotientSpace& outer) {
    // classes of `inner` live in coordinates of outer's representatives
    std::vector<SparseVector> vs;
    for (const auto& c : inner.representatives().vectors())
        vs.push_back(combine(outer.representatives().vectors(), to_dense(c, outer.dim())));
    SubspaceBasis b(outer.closed().ambient_dim());
    if (!vs.empty()) b = SubspaceBasis::span(outer.closed().ambient_dim(), vs);
    return b;
}

}  // namespace

SpectralPage page(const DoubleComplexView& view, int r, Execution exec) {
    if (r < 0) throw std::invalid_argument("page: r must be non-negative");
    if (auto err = view.validation_error()) throw InvalidDoubleComplex("page: " + *err);
    if (r > 2) return generic_page(view, r);

    SpectralPage out;
    out.r = r;
    if (r == 0) {
        for (int p = 0; p <= view.p_max(); ++p)
            for (int q = 0; q <= view.q_max(); ++q) {
                out.spaces[{p, q}] = SubspaceBasis::whole(view.dim(p, q));
                out.d[{p, q}] = view.v(p, q);
            }
        return out;
    }
    const ColumnwisePages cw = columnwise(view, exec);
    if (r == 1) {
        for (const auto& [pq, qs] : cw.e1) out.spaces[pq] = qs.representatives();
        out.d = cw.d1;
        return out;
    }

    // r == 2: representatives lifted to slot vectors; d_2 by the zig-zag
    for (const auto& [pq, qs] : cw.e2) out.spaces[pq] = lift(qs, cw.e1.at(pq));
    for (const auto& [pq, qs] : cw.e2) {
        const auto [p, q] = pq;
        auto tgt = cw.e2.find({p + 2, q - 1});
        const size_t rows = tgt == cw.e2.end() ? 0 : tgt->second.dim();
        std::vector<std::vector<GR>> cols;
        for (const auto& c : qs.representatives().vectors()) {
            if (rows == 0) {
                cols.emplace_back();
                continue;
            }
            const SparseVector x = combine(cw.e1.at(pq).representatives().vectors(), to_dense(c, cw.e1.at(pq).dim()));
            // h x = v z for some z in slot (p+1, q−1); then D(x − z) = −h z
            auto z = solve(view.v(p + 1, q - 1), view.h(p, q).apply(x));
            if (!z) throw InvalidDoubleComplex("page: E_2 representative does not lift");
            const SparseVector y = scaled(view.h(p + 1, q - 1).apply(*z), GR(-1));
            const std::vector<GR> e1_coords = cw.e1.at({p + 2, q - 1}).class_of(y);
            cols.push_back(tgt->second.class_of(to_sparse(e1_coords)));
        }
        out.d[pq] = columns_to_matrix(rows, cols);
    }
    return out;
}

SpectralPage generic_page(const DoubleComplexView& view, int r) {
    if (r < 0) throw std::invalid_argument("generic_page: r must be non-negative");
    SpectralPage out;
    out.r = r;
    // Z_r^{p,k}: x in F^p C^k with D x in F^{p+r}; returned as basis vectors in
    // C^k coordinates together with their leading slot projections
    auto z_space = [&](int p, int k, int rr) {
        std::vector<SparseVector> basis;
        if (k < 0 || p > view.p_max()) return basis;
        const size_t n_k = view.total_dim(k);
        const size_t lo = view.total_offset(std::max(p, 0), k);
        const SparseMatrix d = view.total_matrix(k);
        const size_t row_lo = view.total_offset(std::max(p, 0), k + 1);
        const size_t row_hi = view.total_offset(std::clamp(p + rr, 0, view.p_max() + 1), k + 1);
        std::vector<Triplet> t;
        for (size_t row = row_lo; row < row_hi; ++row)
            for (const auto& e : d.row(row).entries)
                if (e.index >= lo) t.push_back({static_cast<uint32_t>(row - row_lo), static_cast<uint32_t>(e.index - lo), e.value});
        const SparseMatrix restricted = SparseMatrix::from_triplets(row_hi - row_lo, n_k - lo, std::move(t));
        const SubspaceBasis kernel = kernel_basis(restricted);
        for (const auto& kv : kernel.vectors()) {
            std::vector<SparseEntry> raw;
            for (const auto& e : kv.entries) raw.push_back({static_cast<uint32_t>(e.index + lo), e.value});
            basis.push_back(SparseVector::from_unsorted(std::move(raw)));
        }
        return basis;
    };
    auto project = [&](const SparseVector& x, int p, int k) {
        const size_t lo = view.total_offset(p, k);
        const size_t hi = lo + view.dim(p, k - p);
        std::vector<SparseEntry> raw;
        for (const auto& e : x.entries)
            if (e.index >= lo && e.index < hi) raw.push_back({static_cast<uint32_t>(e.index - lo), e.value});
        return SparseVector::from_unsorted(std::move(raw));
    };

    struct Slot {
        std::vector<SparseVector> z;        // Z_r basis in C^k
        std::vector<SparseVector> leading;  // projections
        QuotientSpace quotient;
    };
    std::map<Bidegree, Slot> slots;
    for (int p = 0; p <= view.p_max(); ++p)
        for (int q = 0; q <= view.q_max(); ++q) {
            const int k = p + q;
            const size_t slot_dim = view.dim(p, q);
            Slot s;
            s.z = z_space(p, k, r);
            for (const auto& x : s.z) s.leading.push_back(project(x, p, k));
            // boundaries: D Z_{r−1}^{p−r+1, k−1}
            std::vector<SparseVector> b;
            if (r >= 1) {
                const auto src = z_space(p - r + 1, k - 1, r - 1);
                const SparseMatrix d = view.total_matrix(k - 1);
                for (const auto& y : src) b.push_back(project(d.apply(y), p, k));
            }
            SubspaceBasis closed(slot_dim);
            if (!s.leading.empty()) closed = SubspaceBasis::span(slot_dim, s.leading);
            SubspaceBasis exact(slot_dim);
            if (!b.empty()) exact = SubspaceBasis::span(slot_dim, b);
            s.quotient = QuotientSpace(std::move(closed), std::move(exact));
            out.spaces[{p, q}] = s.quotient.representatives();
            slots.emplace(Bidegree{p, q}, std::move(s));
        }

    for (auto& [pq, s] : slots) {
        const auto [p, q] = pq;
        const int k = p + q;
        auto tgt = slots.find({p + r, q - r + 1});
        const size_t rows = tgt == slots.end() ? 0 : tgt->second.quotient.dim();
        std::vector<std::vector<GR>> cols;
        if (rows > 0) {
            const SparseMatrix lead = SparseMatrix::from_columns(view.dim(p, q), s.leading);
            const SparseMatrix d = view.total_matrix(k);
            for (const auto& rep : s.quotient.representatives().vectors()) {
                auto c = solve(lead, rep);
                if (!c) throw InvalidDoubleComplex("generic_page: representative has no lift");
                SparseVector x;
                for (const auto& e : c->entries) x = axpy(x, e.value, s.z[e.index]);
                cols.push_back(tgt->second.quotient.class_of(project(d.apply(x), p + r, k + 1)));
            }
        } else {
            cols.assign(s.quotient.dim(), {});
        }
        out.d[pq] = columns_to_matrix(rows, cols);
    }
    return out;
}

DegenerationReport degeneration_check(const SpectralPage& e2, const std::vector<size_t>& betti) {
    DegenerationReport rep;
    rep.total_betti = betti;
    rep.e2_sums.assign(betti.size(), 0);
    for (const auto& [pq, s] : e2.spaces) {
        const auto k = static_cast<size_t>(pq.first + pq.second);
        if (k >= rep.e2_sums.size()) rep.e2_sums.resize(k + 1, 0);
        rep.e2_sums[k] += s.dim();
    }
    rep.total_betti.resize(std::max(rep.total_betti.size(), rep.e2_sums.size()), 0);
    rep.e2_sums.resize(rep.total_betti.size(), 0);
    rep.degenerate = true;
    for (size_t k = 0; k < rep.e2_sums.size(); ++k) {
        if (rep.e2_sums[k] != rep.total_betti[k]) {
            rep.degenerate = false;
            rep.first_failure = static_cast<int>(k);
            rep.gap = static_cast<int64_t>(rep.e2_sums[k]) - static_cast<int64_t>(rep.total_betti[k]);
            break;
        }
    }
    return rep;
}

DegenerationReport degeneration_check(const DoubleComplexView& view, const std::vector<size_t>& betti) {
    return degeneration_check(page(view, 2), betti);
}

DoubleComplexView synthetic_nondegenerate_view() {
    DoubleComplexView v(2, 1);
    v.set_dim(0, 1, 1);
    v.set_dim(1, 0, 1);
    v.set_dim(1, 1, 1);
    v.set_dim(2, 0, 1);
    v.set_v(1, 0, SparseMatrix::identity(1));
    v.set_h(0, 1, SparseMatrix::identity(1));
    v.set_h(1, 0, SparseMatrix::identity(1));
    return v;
}

}  // namespace ncgeo
