#include "ncgeo/nc_form.hpp"

#include <algorithm>
#include <numeric>

namespace ncgeo {

namespace {

DenseMatrix zero_matrix(int n) { return {static_cast<size_t>(n), static_cast<size_t>(n)}; }

void check_same_n(const NCForm& a, const NCForm& b, const char* where) {
    if (a.n() != b.n()) throw SizeMismatch(std::string(where) + ": forms over different matrix sizes");
}

using ScalarForm = std::map<Mask, GR>;

ScalarForm scalar_wedge(const ScalarForm& a, const ScalarForm& b) {
    ScalarForm out;
    for (const auto& [sa, ca] : a)
        for (const auto& [sb, cb] : b) {
            const int sign = wedge_sign(sa, sb);
            if (sign == 0) continue;
            out[sa | sb] += GR(sign) * ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

// Pullback of e^T along Ad_g: each e^t becomes Σ_j A_tj e^j.
ScalarForm pullback(const DenseMatrix& ad, Mask t) {
    ScalarForm acc{{Mask{0}, GR(1)}};
    for (int idx : indices_of(t)) {
        ScalarForm row;
        for (size_t j = 0; j < ad.cols(); ++j) {
            const GR& v = ad(static_cast<size_t>(idx), j);
            if (!v.is_zero()) row[Mask{1} << j] = v;
        }
        acc = scalar_wedge(acc, row);
    }
    return acc;
}

}  // namespace

// ------------------------------------------------------------------ NCForm

NCForm::NCForm(int n, int degree) : n_(n), degree_(degree) {
    if (n < 1) throw std::invalid_argument("NCForm: n must be at least 1");
    if (degree < 0 || degree > n * n - 1) throw std::invalid_argument("NCForm: degree out of range");
}

NCForm NCForm::basis_form(int n, Mask s, const DenseMatrix& a) {
    NCForm w(n, degree_of(s));
    w.add(s, a);
    return w;
}

NCForm NCForm::scalar(int n, Mask s, const GR& c) {
    return basis_form(n, s, DenseMatrix::identity(static_cast<size_t>(n)) * c);
}

DenseMatrix NCForm::component(Mask s) const {
    auto it = components_.find(s);
    return it == components_.end() ? zero_matrix(n_) : it->second;
}

bool NCForm::is_scalar() const {
    const auto un = static_cast<size_t>(n_);
    for (const auto& [s, a] : components_) {
        if (!(a == DenseMatrix::identity(un) * a(0, 0))) return false;
    }
    return true;
}

void NCForm::add(Mask s, const DenseMatrix& a) {
    if (degree_of(s) != degree_) throw std::invalid_argument("NCForm::add: index subset has the wrong degree");
    if (n_ * n_ - 1 < 32 && (s >> (n_ * n_ - 1)) != 0)
        throw std::out_of_range("NCForm::add: index outside the derivation basis");
    if (a.rows() != static_cast<size_t>(n_) || a.cols() != a.rows())
        throw SizeMismatch("NCForm::add: matrix size differs from n");
    if (a.is_zero()) return;
    auto [it, inserted] = components_.try_emplace(s, a);
    if (!inserted) {
        it->second += a;
        if (it->second.is_zero()) components_.erase(it);
    }
}

NCForm& NCForm::operator+=(const NCForm& rhs) {
    check_same_n(*this, rhs, "NCForm::operator+=");
    if (rhs.degree_ != degree_ && !rhs.is_zero()) throw std::invalid_argument("NCForm: degree mismatch in sum");
    for (const auto& [s, a] : rhs.components_) add(s, a);
    return *this;
}

NCForm& NCForm::operator-=(const NCForm& rhs) { return *this += rhs * GR(-1); }

NCForm& NCForm::operator*=(const GR& c) {
    if (c.is_zero()) {
        components_.clear();
        return *this;
    }
    for (auto& [s, a] : components_) a *= c;
    return *this;
}

bool operator==(const NCForm& a, const NCForm& b) {
    return a.n_ == b.n_ && (a.degree_ == b.degree_ || (a.is_zero() && b.is_zero())) &&
           a.components_ == b.components_;
}

// ------------------------------------------------------------- coordinates

size_t vq_dim(int n, int q) {
    const auto& ctx = lie_context(n);
    return ctx.exterior.count(q) * static_cast<size_t>(n * n);
}

SparseVector to_vector(const NCForm& w) {
    const auto& ctx = lie_context(w.n());
    const auto nn = static_cast<uint32_t>(w.n() * w.n());
    std::vector<SparseEntry> raw;
    for (const auto& [s, a] : w.components()) {
        const uint32_t base = ctx.exterior.rank_of(s) * nn;
        for (size_t r = 0; r < a.rows(); ++r)
            for (size_t c = 0; c < a.cols(); ++c)
                if (!a(r, c).is_zero()) raw.push_back({base + static_cast<uint32_t>(r * a.cols() + c), a(r, c)});
    }
    return SparseVector::from_unsorted(std::move(raw));
}

NCForm from_vector(int n, int q, const SparseVector& v) {
    const auto& ctx = lie_context(n);
    const auto nn = static_cast<uint32_t>(n * n);
    const auto masks = ctx.exterior.of_degree(q);
    NCForm w(n, q);
    std::map<Mask, DenseMatrix> parts;
    for (const auto& e : v.entries) {
        const uint32_t rank = e.index / nn;
        if (rank >= masks.size()) throw std::out_of_range("from_vector: index outside V_q");
        const uint32_t ab = e.index % nn;
        auto [it, _] = parts.try_emplace(masks[rank], zero_matrix(n));
        it->second(ab / static_cast<uint32_t>(n), ab % static_cast<uint32_t>(n)) = e.value;
    }
    for (const auto& [s, a] : parts) w.add(s, a);
    return w;
}

// ---------------------------------------------------------------- calculus

NCForm wedge(const NCForm& a, const NCForm& b) {
    check_same_n(a, b, "wedge");
    const int deg = a.degree() + b.degree();
    if (deg > a.n() * a.n() - 1) return NCForm(a.n(), a.degree());  // only reachable for zero results
    NCForm out(a.n(), deg);
    for (const auto& [sa, ma] : a.components())
        for (const auto& [sb, mb] : b.components()) {
            const int sign = wedge_sign(sa, sb);
            if (sign == 0) continue;
            out.add(sa | sb, ma * mb * GR(sign));
        }
    return out;
}

NCForm d_prime(const NCForm& w) {
    const int n = w.n();
    const auto& ctx = lie_context(n);
    if (w.degree() == ctx.dim) return NCForm(n, w.degree());
    NCForm out(n, w.degree() + 1);
    for (const auto& [s, a] : w.components()) {
        for (int k = 0; k < ctx.dim; ++k) {
            if (s & (Mask{1} << k)) continue;
            const GR sign = (position_in(s, k) % 2 == 0) ? GR(1) : GR(-1);
            out.add(s | (Mask{1} << k), bracket(ctx.basis[k], a) * sign);
        }
        for (const auto& [t, c] : ctx.d_scalar(s)) out.add(t, a * c);
    }
    return out;
}

SparseMatrix d_prime_matrix(int n, int q, Execution exec) {
    const auto& ctx = lie_context(n);
    const auto nn = static_cast<uint32_t>(n * n);
    const size_t rows = vq_dim(n, q + 1);
    const auto masks = ctx.exterior.of_degree(q);
    std::vector<SparseVector> columns(masks.size() * nn);
    if (q >= ctx.dim) return SparseMatrix(rows, columns.size());
    parallel_for(masks.size(), exec, [&](size_t idx) {
        const Mask s = masks[idx];
        for (uint32_t ab = 0; ab < nn; ++ab) {
            const int a = static_cast<int>(ab / static_cast<uint32_t>(n));
            const int b = static_cast<int>(ab % static_cast<uint32_t>(n));
            std::vector<SparseEntry> raw;
            for (int k = 0; k < ctx.dim; ++k) {
                if (s & (Mask{1} << k)) continue;
                const GR sign = (position_in(s, k) % 2 == 0) ? GR(1) : GR(-1);
                const uint32_t base = ctx.exterior.rank_of(s | (Mask{1} << k)) * nn;
                const DenseMatrix& br = ctx.bracket_unit(k, a, b);
                for (uint32_t rc = 0; rc < nn; ++rc) {
                    const GR& v = br(rc / static_cast<uint32_t>(n), rc % static_cast<uint32_t>(n));
                    if (!v.is_zero()) raw.push_back({base + rc, sign * v});
                }
            }
            for (const auto& [t, c] : ctx.d_scalar(s)) raw.push_back({ctx.exterior.rank_of(t) * nn + ab, c});
            columns[idx * nn + ab] = SparseVector::from_unsorted(std::move(raw));
        }
    });
    return SparseMatrix::from_columns(rows, columns);
}

NCForm interior(int k, const NCForm& w) {
    const auto& ctx = lie_context(w.n());
    if (k < 0 || k >= ctx.dim) throw std::out_of_range("interior: basis index out of range");
    if (w.degree() == 0) return NCForm(w.n(), 0);
    NCForm out(w.n(), w.degree() - 1);
    const Mask bit = Mask{1} << k;
    for (const auto& [s, a] : w.components()) {
        if (!(s & bit)) continue;
        const GR sign = (position_in(s, k) % 2 == 0) ? GR(1) : GR(-1);
        out.add(s & ~bit, a * sign);
    }
    return out;
}

NCForm lie_derivative(int k, const NCForm& w) {
    const int top = w.n() * w.n() - 1;
    NCForm out(w.n(), w.degree());
    if (w.degree() < top) out += interior(k, d_prime(w));
    if (w.degree() > 0) out += d_prime(interior(k, w));
    return out;
}

NCForm lie_action(int k, const NCForm& w) {
    const auto& ctx = lie_context(w.n());
    const DenseMatrix& x = ctx.basis[k];
    NCForm out(w.n(), w.degree());
    for (const auto& [s, a] : w.components()) {
        out.add(s, x * a - a * x);
        // e^t ∘ ad X_k = Σ_u c_{ku}^t e^u, entering with a minus sign
        const std::vector<int> idx = indices_of(s);
        for (size_t i = 0; i < idx.size(); ++i)
            for (int u = 0; u < ctx.dim; ++u) {
                const GR c = ctx.constants(k, u).at(static_cast<uint32_t>(idx[i]));
                if (c.is_zero()) continue;
                std::vector<int> seq = idx;
                seq[i] = u;
                const SortedIndices sorted = sort_indices(seq);
                if (sorted.sign == 0) continue;
                out.add(sorted.mask, a * (c * GR(-sorted.sign)));
            }
    }
    return out;
}

NCForm theta(int n) {
    if (n < 2) throw std::invalid_argument("theta: n must be at least 2");
    const auto& ctx = lie_context(n);
    NCForm out(n, 1);
    for (int k = 0; k < ctx.dim; ++k) out.add(Mask{1} << k, ctx.basis[k]);
    return out;
}

NCForm gauge_transform(const GroupElement& g, const NCForm& w) {
    if (g.n() != w.n()) throw SizeMismatch("gauge_transform: size mismatch");
    const auto& ctx = lie_context(w.n());
    const DenseMatrix ad = adjoint_matrix(g, ctx.basis);
    NCForm out(w.n(), w.degree());
    for (const auto& [t, a] : w.components()) {
        const DenseMatrix conj = adjoint_action(g, a);
        for (const auto& [s, c] : pullback(ad, t)) out.add(s, conj * c);
    }
    return out;
}

SparseMatrix gauge_matrix(const GroupElement& g, int q) {
    const int n = g.n();
    const auto& ctx = lie_context(n);
    const auto nn = static_cast<uint32_t>(n * n);
    const DenseMatrix ad = adjoint_matrix(g, ctx.basis);
    const auto masks = ctx.exterior.of_degree(q);
    std::vector<DenseMatrix> conj_units;
    conj_units.reserve(nn);
    for (uint32_t ab = 0; ab < nn; ++ab)
        conj_units.push_back(
            adjoint_action(g, DenseMatrix::unit(static_cast<size_t>(n), ab / static_cast<uint32_t>(n), ab % static_cast<uint32_t>(n))));
    std::vector<Triplet> trips;
    for (const Mask t : masks) {
        const uint32_t col_base = ctx.exterior.rank_of(t) * nn;
        for (const auto& [s, c] : pullback(ad, t)) {
            const uint32_t row_base = ctx.exterior.rank_of(s) * nn;
            for (uint32_t ab = 0; ab < nn; ++ab) {
                const DenseMatrix& m = conj_units[ab];
                for (uint32_t rc = 0; rc < nn; ++rc) {
                    const GR& v = m(rc / static_cast<uint32_t>(n), rc % static_cast<uint32_t>(n));
                    if (!v.is_zero()) trips.push_back({row_base + rc, col_base + ab, c * v});
                }
            }
        }
    }
    const size_t dim = masks.size() * nn;
    return SparseMatrix::from_triplets(dim, dim, std::move(trips));
}

GR nc_integral_point(const NCForm& w) {
    const int top = w.n() * w.n() - 1;
    if (w.degree() != top) return GR();
    const Mask all = top == 0 ? Mask{0} : (Mask{1} << top) - 1;
    return w.component(all).trace() / GR(w.n());
}

NCForm primitive_form(int r, int n) {
    if (r < 2 || r > n) throw std::out_of_range("primitive_form: r must satisfy 2 <= r <= n");
    const NCForm th = theta(n);
    NCForm power = th;
    for (int k = 1; k < 2 * r - 1; ++k) power = wedge(power, th);
    NCForm out(n, 2 * r - 1);
    for (const auto& [s, a] : power.components()) out.add(s, DenseMatrix::identity(static_cast<size_t>(n)) * a.trace());
    return out;
}

NCForm restrict_to_upper_block(const NCForm& w, int n) {
    if (w.n() != n + 1) throw SizeMismatch("restrict_to_upper_block: form must live over n+1");
    const auto& small = lie_context(n);
    const auto& big = lie_context(n + 1);
    const auto un = static_cast<size_t>(n);
    // image of each small basis element in big coordinates
    std::vector<std::vector<GR>> image;
    for (int k = 0; k < small.dim; ++k) {
        DenseMatrix e(un + 1, un + 1);
        for (size_t i = 0; i < un; ++i)
            for (size_t j = 0; j < un; ++j) e(i, j) = small.basis[k](i, j);
        image.push_back(big.basis.coordinates(e));
    }
    // pullback matrix: e^t (big) ↦ Σ_k image[k][t] e^k (small)
    DenseMatrix pull(static_cast<size_t>(big.dim), static_cast<size_t>(small.dim));
    for (int k = 0; k < small.dim; ++k)
        for (int t = 0; t < big.dim; ++t) pull(static_cast<size_t>(t), static_cast<size_t>(k)) = image[static_cast<size_t>(k)][static_cast<size_t>(t)];
    if (w.degree() > small.dim) return NCForm(n, 0);
    NCForm out(n, w.degree());
    for (const auto& [t, a] : w.components()) {
        DenseMatrix cut(un, un);
        for (size_t i = 0; i < un; ++i)
            for (size_t j = 0; j < un; ++j) cut(i, j) = a(i, j);
        for (const auto& [s, c] : pullback(pull, t)) out.add(s, cut * c);
    }
    return out;
}

StabilizationReport stabilization_check(int r, int n) {
    const NCForm small = primitive_form(r, n);
    const NCForm big = primitive_form(r, n + 1);
    StabilizationReport rep{r, n, small.degree() == big.degree(), false, false};
    rep.restriction_matches = restrict_to_upper_block(big, n) == small;
    rep.both_closed = d_prime(small).is_zero() && d_prime(big).is_zero();
    return rep;
}

// -------------------------------------------------------------- cohomology

GradedCohomologyTable invariant_subspace(int n, Execution exec) {
    const auto& ctx = lie_context(n);
    const auto un = static_cast<size_t>(n);
    GradedCohomologyTable out;
    out.betti.resize(static_cast<size_t>(ctx.dim) + 1);
    out.representatives.resize(static_cast<size_t>(ctx.dim) + 1);
    parallel_for(static_cast<size_t>(ctx.dim) + 1, exec, [&](size_t qi) {
        const int q = static_cast<int>(qi);
        const auto masks = ctx.exterior.of_degree(q);
        const size_t cols = masks.size();
        // rows: (k, T) for the coadjoint action of X_k on scalar forms
        std::vector<Triplet> trips;
        for (size_t c = 0; c < cols; ++c) {
            const NCForm e = NCForm::scalar(n, masks[c]);
            for (int k = 0; k < ctx.dim; ++k) {
                const NCForm l = lie_derivative(k, e);
                for (const auto& [t, a] : l.components())
                    trips.push_back({static_cast<uint32_t>(static_cast<size_t>(k) * cols + ctx.exterior.rank_of(t)),
                                     static_cast<uint32_t>(c), a(0, 0)});
            }
        }
        const SparseMatrix m =
            SparseMatrix::from_triplets(static_cast<size_t>(std::max(ctx.dim, 1)) * cols, cols, std::move(trips));
        const SubspaceBasis ker = kernel_basis(m);
        out.betti[qi] = ker.dim();
        for (const auto& v : ker.vectors()) {
            NCForm w(n, q);
            for (const auto& e : v.entries) w.add(masks[e.index], DenseMatrix::identity(un) * e.value);
            out.representatives[qi].push_back(std::move(w));
        }
    });
    return out;
}

MatrixCohomology matrix_cohomology(int n, bool with_representatives, Execution exec) {
    const auto& ctx = lie_context(n);
    const auto top = static_cast<size_t>(ctx.dim);
    std::vector<SparseMatrix> d(top + 1);
    parallel_for(top + 1, exec, [&](size_t q) { d[q] = d_prime_matrix(n, static_cast<int>(q), Execution::serial); });

    MatrixCohomology out;
    out.has_representatives = with_representatives;
    out.table.betti.resize(top + 1);
    out.table.representatives.resize(top + 1);
    if (!with_representatives) {
        std::vector<size_t> ranks(top + 1);
        parallel_for(top + 1, exec, [&](size_t q) { ranks[q] = rank(d[q], Execution::serial); });
        for (size_t q = 0; q <= top; ++q)
            out.table.betti[q] = vq_dim(n, static_cast<int>(q)) - ranks[q] - (q > 0 ? ranks[q - 1] : 0);
        return out;
    }

    std::vector<SubspaceBasis> closed(top + 1);
    std::vector<SubspaceBasis> exact(top + 1);
    parallel_for(top + 1, exec, [&](size_t q) {
        closed[q] = kernel_basis(d[q]);
        exact[q] = q == 0 ? SubspaceBasis(vq_dim(n, 0)) : image_basis(d[q - 1]);
    });
    const GradedCohomologyTable inv = invariant_subspace(n, exec);
    bool iso = true;
    for (size_t q = 0; q <= top; ++q) {
        const SubspaceBasis reps = quotient_representatives(closed[q], exact[q]);
        out.table.betti[q] = reps.dim();
        for (const auto& v : reps.vectors()) out.table.representatives[q].push_back(from_vector(n, static_cast<int>(q), v));
        if (inv.betti[q] != reps.dim()) iso = false;
        EchelonBuilder eb(vq_dim(n, static_cast<int>(q)));
        for (const auto& v : exact[q].vectors()) eb.insert(v);
        for (const auto& w : inv.representatives[q]) {
            const SparseVector v = to_vector(w);
            if (!closed[q].contains(v) || !eb.insert(v)) iso = false;
        }
    }
    out.invariants_isomorphic = iso;
    return out;
}

std::vector<size_t> invariant_poincare_series(int n) {
    std::vector<size_t> poly{1};
    for (int r = 2; r <= n; ++r) {
        const auto shift = static_cast<size_t>(2 * r - 1);
        std::vector<size_t> next(poly.size() + shift, 0);
        for (size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k];
            next[k + shift] += poly[k];
        }
        poly = std::move(next);
    }
    return poly;
}

}  // namespace ncgeo
