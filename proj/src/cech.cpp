#include "ncgeo/cech.hpp"

#include <algorithm>
#include <set>

namespace ncgeo {

namespace {

GR sign_of(int parity) { return GR(parity % 2 ? -1 : 1); }

size_t vq(int n, int s) { return s < 0 ? 0 : vq_dim(n, s); }

void add_into(CechCochain& dst, const CechCochain& src, const GR& c = GR(1)) {
    for (const auto& [sigma, sec] : src.entries) {
        auto it = dst.entries.find(sigma);
        if (it == dst.entries.end()) it = dst.entries.emplace(sigma, LocalNCSection{sigma, src.q, {}}).first;
        for (const auto& [key, a] : sec.parts) it->second.add(key.first, key.second, a * c);
        if (it->second.is_zero()) dst.entries.erase(it);
    }
}

void add_into(PolySection& dst, const PolySection& src, const GR& c = GR(1)) {
    for (const auto& [key, f] : src.parts) dst.add(key.first, key.second, f * c);
}

void require_nerve_simplex(const CechComplex& cx, const Simplex& s) {
    if (!cx.nerve().contains(s)) throw NotInComplex("Čech cochain entry is not a simplex of the nerve");
}

}  // namespace

void LocalNCSection::add(const Simplex& tau, Mask s, const DenseMatrix& a) {
    if (a.is_zero()) return;
    auto key = std::make_pair(tau, s);
    auto it = parts.find(key);
    if (it == parts.end()) {
        parts.emplace(std::move(key), a);
        return;
    }
    it->second += a;
    if (it->second.is_zero()) parts.erase(it);
}

bool CechCochain::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.second.is_zero(); });
}

bool operator==(const CechCochain& a, const CechCochain& b) {
    if (a.p != b.p) return false;
    auto nonzero = [](const CechCochain& c) {
        std::map<Simplex, LocalNCSection> out;
        for (const auto& [s, sec] : c.entries)
            if (!sec.is_zero()) out.emplace(s, sec);
        return out;
    };
    const auto na = nonzero(a);
    const auto nb = nonzero(b);
    if (!na.empty() && a.q != b.q) return false;
    return na == nb;
}

bool TotalCochain::is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.second.is_zero(); });
}

bool operator==(const TotalCochain& a, const TotalCochain& b) {
    std::set<int> ps;
    for (const auto& [p, c] : a.components) ps.insert(p);
    for (const auto& [p, c] : b.components) ps.insert(p);
    for (int p : ps) {
        auto ia = a.components.find(p);
        auto ib = b.components.find(p);
        const bool za = ia == a.components.end() || ia->second.is_zero();
        const bool zb = ib == b.components.end() || ib->second.is_zero();
        if (za && zb) continue;
        if (za != zb || !(ia->second == ib->second)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

CechComplex::CechComplex(TransitionCocycle g, bool check_cocycle) : cocycle_(std::move(g)) {
    if (check_cocycle) cocycle_.validate();
    const auto& k = nerve();
    for (int p = 0; p <= k.dimension(); ++p)
        for (const auto& s : k.simplices(p)) {
            auto st = std::make_shared<const SimplicialComplex>(star(k, s));
            std::vector<SparseMatrix> cb;
            for (int r = 0; r < st->dimension(); ++r) cb.push_back(coboundary_matrix(*st, r));
            star_coboundary_.emplace(s, std::move(cb));
            stars_.emplace(s, std::move(st));
        }
    const int top = fiber_dim();
    for (int s = 0; s < top; ++s) d_prime_.push_back(d_prime_matrix(n(), s));
    offsets_.resize(static_cast<size_t>(p_max() + 1));
    for (int p = 0; p <= p_max(); ++p) {
        auto& by_q = offsets_[static_cast<size_t>(p)];
        by_q.resize(static_cast<size_t>(q_max() + 1));
        for (int q = 0; q <= q_max(); ++q) {
            auto& off = by_q[static_cast<size_t>(q)];
            off.push_back(0);
            for (const auto& s : k.simplices(p)) off.push_back(off.back() + entry_dim(s, q));
        }
    }
}

const std::shared_ptr<const SimplicialComplex>& CechComplex::star_of(const Simplex& sigma) const {
    auto it = stars_.find(sigma);
    if (it == stars_.end()) throw NotInComplex("star_of: simplex is not in the nerve");
    return it->second;
}

size_t CechComplex::entry_dim(const Simplex& sigma, int q) const {
    const auto& st = *star_of(sigma);
    size_t d = 0;
    for (int r = 0; r <= st.dimension(); ++r) d += st.count(r) * vq(n(), q - r);
    return d;
}

size_t CechComplex::entry_offset(const Simplex& sigma, int r, int q) const {
    const auto& st = *star_of(sigma);
    size_t d = 0;
    for (int rr = 0; rr < r; ++rr) d += st.count(rr) * vq(n(), q - rr);
    return d;
}

size_t CechComplex::slot_dim(int p, int q) const {
    if (p < 0 || p > p_max() || q < 0 || q > q_max()) return 0;
    return offsets_[static_cast<size_t>(p)][static_cast<size_t>(q)].back();
}

SparseVector CechComplex::to_vector(const CechCochain& c) const {
    if (c.p < 0 || c.p > p_max()) throw std::invalid_argument("to_vector: Čech degree outside the nerve");
    const auto nn = static_cast<size_t>(n() * n());
    const auto& ctx = lie_context(n());
    std::vector<SparseEntry> raw;
    for (const auto& [sigma, sec] : c.entries) {
        if (sec.is_zero()) continue;
        if (sec.degree != c.q) throw std::invalid_argument("to_vector: entry degree differs from the cochain");
        auto idx = nerve().index_of(sigma);
        if (!idx || static_cast<int>(sigma.size()) != c.p + 1) throw NotInComplex("to_vector: entry is not a nerve p-simplex");
        const size_t base = offsets_[static_cast<size_t>(c.p)][static_cast<size_t>(c.q)][*idx];
        const auto& st = *star_of(sigma);
        for (const auto& [key, a] : sec.parts) {
            const auto& [tau, s] = key;
            const int r = static_cast<int>(tau.size()) - 1;
            auto t = st.index_of(tau);
            if (!t) throw NotInComplex("to_vector: Whitney simplex outside the star");
            if (degree_of(s) != c.q - r) throw std::invalid_argument("to_vector: part degree mismatch");
            const size_t start = base + entry_offset(sigma, r, c.q) + *t * vq(n(), c.q - r) + ctx.exterior.rank_of(s) * nn;
            for (size_t i = 0; i < nn; ++i) {
                const GR& v = a.data()[i];
                if (!v.is_zero()) raw.push_back({static_cast<uint32_t>(start + i), v});
            }
        }
    }
    return SparseVector::from_unsorted(std::move(raw));
}

CechCochain CechComplex::from_vector(int p, int q, const SparseVector& v) const {
    CechCochain out{p, q, {}};
    if (v.empty()) return out;
    const auto& off = offsets_.at(static_cast<size_t>(p)).at(static_cast<size_t>(q));
    const auto simplices = nerve().simplices(p);
    const int nn = n() * n();
    const auto& ctx = lie_context(n());
    for (const auto& e : v.entries) {
        const auto it = std::upper_bound(off.begin(), off.end(), static_cast<size_t>(e.index));
        if (it == off.end()) throw std::out_of_range("from_vector: coordinate beyond the slot");
        const auto i = static_cast<size_t>(it - off.begin()) - 1;
        const Simplex& sigma = simplices[i];
        const auto& st = *star_of(sigma);
        size_t local = e.index - off[i];
        int r = 0;
        for (;; ++r) {
            const size_t block = st.count(r) * vq(n(), q - r);
            if (local < block) break;
            local -= block;
        }
        const size_t per = vq(n(), q - r);
        const Simplex& tau = st.simplices(r)[local / per];
        const size_t vi = local % per;
        const Mask s = ctx.exterior.of_degree(q - r)[vi / static_cast<size_t>(nn)];
        const size_t ab = vi % static_cast<size_t>(nn);
        DenseMatrix m(static_cast<size_t>(n()), static_cast<size_t>(n()));
        m(ab / static_cast<size_t>(n()), ab % static_cast<size_t>(n())) = e.value;
        auto [entry, fresh] = out.entries.try_emplace(sigma, LocalNCSection{sigma, q, {}});
        (void)fresh;
        entry->second.add(tau, s, m);
    }
    return out;
}

const SparseMatrix& CechComplex::gauge_block(int a, int b, int s) const {
    std::lock_guard<std::mutex> lock(gauge_mutex_);
    auto key = std::make_tuple(a, b, s);
    auto it = gauge_cache_.find(key);
    if (it == gauge_cache_.end()) it = gauge_cache_.emplace(key, gauge_matrix(cocycle_.value(a, b), s)).first;
    return it->second;
}

SparseMatrix CechComplex::delta_block(int p, int q, Execution exec) const {
    const size_t rows = slot_dim(p + 1, q);
    const size_t cols = slot_dim(p, q);
    if (rows == 0 || cols == 0) return SparseMatrix(rows, cols);
    const auto targets = nerve().simplices(p + 1);
    const auto& src_off = offsets_[static_cast<size_t>(p)][static_cast<size_t>(q)];
    const auto& dst_off = offsets_[static_cast<size_t>(p + 1)][static_cast<size_t>(q)];
    std::vector<std::vector<Triplet>> per(targets.size());
    parallel_for(targets.size(), exec, [&](size_t j) {
        const Simplex& tgt = targets[j];
        const auto& tst = *star_of(tgt);
        auto& out = per[j];
        for (size_t i = 0; i <= static_cast<size_t>(p + 1); ++i) {
            const Simplex src = face(tgt, i);
            const auto& sst = *star_of(src);
            const size_t sidx = *nerve().index_of(src);
            const GR sign = sign_of(static_cast<int>(i));
            const bool twisted = i == static_cast<size_t>(p + 1);
            for (int r = 0; r <= tst.dimension(); ++r) {
                const int s = q - r;
                const size_t w = vq(n(), s);
                if (w == 0) continue;
                const SparseMatrix* g = twisted ? &gauge_block(tgt[static_cast<size_t>(p)], tgt[static_cast<size_t>(p + 1)], s) : nullptr;
                const auto taus = tst.simplices(r);
                for (size_t t = 0; t < taus.size(); ++t) {
                    const size_t row0 = dst_off[j] + entry_offset(tgt, r, q) + t * w;
                    const size_t col0 = src_off[sidx] + entry_offset(src, r, q) + *sst.index_of(taus[t]) * w;
                    if (!g) {
                        for (size_t v = 0; v < w; ++v)
                            out.push_back({static_cast<uint32_t>(row0 + v), static_cast<uint32_t>(col0 + v), sign});
                        continue;
                    }
                    for (size_t v = 0; v < w; ++v)
                        for (const auto& e : g->row(v).entries)
                            out.push_back({static_cast<uint32_t>(row0 + v), static_cast<uint32_t>(col0 + e.index), sign * e.value});
                }
            }
        }
    });
    std::vector<Triplet> all;
    for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
    return SparseMatrix::from_triplets(rows, cols, std::move(all));
}

SparseMatrix CechComplex::local_d_block(int p, int q, Execution exec) const {
    const size_t rows = slot_dim(p, q + 1);
    const size_t cols = slot_dim(p, q);
    if (rows == 0 || cols == 0) return SparseMatrix(rows, cols);
    const auto sigmas = nerve().simplices(p);
    const auto& src_off = offsets_[static_cast<size_t>(p)][static_cast<size_t>(q)];
    const auto& dst_off = offsets_[static_cast<size_t>(p)][static_cast<size_t>(q + 1)];
    std::vector<std::vector<Triplet>> per(sigmas.size());
    parallel_for(sigmas.size(), exec, [&](size_t i) {
        const Simplex& sigma = sigmas[i];
        const auto& st = *star_of(sigma);
        const auto& cb = star_coboundary_.at(sigma);
        auto& out = per[i];
        for (int r = 0; r <= st.dimension(); ++r) {
            const int s = q - r;
            const size_t w = vq(n(), s);
            if (w == 0) continue;
            const size_t col_r = src_off[i] + entry_offset(sigma, r, q);
            // Whitney differential
            if (r < st.dimension()) {
                const SparseMatrix& d = cb[static_cast<size_t>(r)];
                const size_t row_r = dst_off[i] + entry_offset(sigma, r + 1, q + 1);
                for (size_t tp = 0; tp < d.rows(); ++tp)
                    for (const auto& e : d.row(tp).entries)
                        for (size_t v = 0; v < w; ++v)
                            out.push_back({static_cast<uint32_t>(row_r + tp * w + v), static_cast<uint32_t>(col_r + e.index * w + v), e.value});
            }
            // matrix differential
            if (s < fiber_dim()) {
                const SparseMatrix& d = d_prime_[static_cast<size_t>(s)];
                const size_t w1 = vq(n(), s + 1);
                const size_t row_r = dst_off[i] + entry_offset(sigma, r, q + 1);
                const GR sign = sign_of(r);
                for (size_t t = 0; t < st.count(r); ++t)
                    for (size_t v = 0; v < d.rows(); ++v)
                        for (const auto& e : d.row(v).entries)
                            out.push_back({static_cast<uint32_t>(row_r + t * w1 + v), static_cast<uint32_t>(col_r + t * w + e.index), sign * e.value});
            }
        }
    });
    std::vector<Triplet> all;
    for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
    return SparseMatrix::from_triplets(rows, cols, std::move(all));
}

DoubleComplexView CechComplex::view(Execution exec) const {
    DoubleComplexView out(p_max(), q_max());
    for (int p = 0; p <= p_max(); ++p)
        for (int q = 0; q <= q_max(); ++q) out.set_dim(p, q, slot_dim(p, q));
    for (int p = 0; p <= p_max(); ++p)
        for (int q = 0; q <= q_max(); ++q) {
            if (p < p_max()) out.set_h(p, q, delta_block(p, q, exec));
            if (q < q_max()) {
                SparseMatrix v = local_d_block(p, q, exec);
                if (p % 2) {
                    std::vector<Triplet> t;
                    for (size_t r = 0; r < v.rows(); ++r)
                        for (const auto& e : v.row(r).entries) t.push_back({static_cast<uint32_t>(r), e.index, -e.value});
                    v = SparseMatrix::from_triplets(v.rows(), v.cols(), std::move(t));
                }
                out.set_v(p, q, std::move(v));
            }
        }
    return out;
}

// ---------------------------------------------------------------------------

LocalNCSection local_d(const LocalNCSection& s, const CechComplex& cx) {
    const auto& st = *cx.star_of(s.simplex);
    LocalNCSection out{s.simplex, s.degree + 1, {}};
    for (const auto& [key, a] : s.parts) {
        const auto& [tau, mask] = key;
        const int r = static_cast<int>(tau.size()) - 1;
        for (const auto& w : st.simplices(0)) {
            auto up = join(tau, w);
            if (!up || !st.contains(*up)) continue;
            const auto pos = std::find(up->begin(), up->end(), w[0]) - up->begin();
            out.add(*up, mask, a * sign_of(static_cast<int>(pos)));
        }
        const NCForm dw = d_prime(NCForm::basis_form(cx.n(), mask, a));
        for (const auto& [m, c] : dw.components()) out.add(tau, m, c * sign_of(r));
    }
    return out;
}

LocalNCSection restrict_section(const LocalNCSection& s, const Simplex& sub, const CechComplex& cx) {
    const auto& st = *cx.star_of(sub);
    LocalNCSection out{sub, s.degree, {}};
    for (const auto& [key, a] : s.parts)
        if (st.contains(key.first)) out.parts.emplace(key, a);
    return out;
}

LocalNCSection gauge_section(const GroupElement& g, const LocalNCSection& s) {
    LocalNCSection out{s.simplex, s.degree, {}};
    std::map<Simplex, NCForm> by_tau;
    for (const auto& [key, a] : s.parts) {
        const auto& [tau, mask] = key;
        auto it = by_tau.find(tau);
        if (it == by_tau.end()) it = by_tau.emplace(tau, NCForm(g.n(), degree_of(mask))).first;
        it->second.add(mask, a);
    }
    for (const auto& [tau, w] : by_tau) {
        const NCForm moved = gauge_transform(g, w);
        for (const auto& [m, c] : moved.components()) out.add(tau, m, c);
    }
    return out;
}

bool is_global_section(const CechCochain& c, const CechComplex& cx) {
    if (c.p != -1) return false;
    CechCochain as_zero = c;
    as_zero.p = 0;
    return cech_delta(as_zero, cx).is_zero();
}

CechCochain cech_delta(const CechCochain& c, const CechComplex& cx) {
    if (c.p < -1) throw std::invalid_argument("cech_delta: p must be at least −1");
    for (const auto& [s, sec] : c.entries) {
        require_nerve_simplex(cx, s);
        if (static_cast<int>(s.size()) != std::max(c.p, 0) + 1) throw std::invalid_argument("cech_delta: entry of the wrong Čech degree");
    }
    if (c.p == -1) {
        if (!is_global_section(c, cx)) throw NotGlobalSection("cech_delta: collection does not agree on overlaps");
        CechCochain out = c;
        out.p = 0;
        return out;
    }
    const int p = c.p;
    CechCochain out{p + 1, c.q, {}};
    if (p + 1 > cx.p_max()) return out;
    for (const auto& tgt : cx.nerve().simplices(p + 1)) {
        LocalNCSection acc{tgt, c.q, {}};
        for (size_t i = 0; i <= static_cast<size_t>(p + 1); ++i) {
            auto it = c.entries.find(face(tgt, i));
            if (it == c.entries.end()) continue;
            LocalNCSection piece = restrict_section(it->second, tgt, cx);
            if (i == static_cast<size_t>(p + 1))
                piece = gauge_section(cx.cocycle().value(tgt[static_cast<size_t>(p)], tgt[static_cast<size_t>(p + 1)]), piece);
            const GR sign = sign_of(static_cast<int>(i));
            for (const auto& [key, a] : piece.parts) acc.add(key.first, key.second, a * sign);
        }
        if (!acc.is_zero()) out.entries.emplace(tgt, std::move(acc));
    }
    return out;
}

CechCochain signed_local_d(const CechCochain& c, const CechComplex& cx) {
    CechCochain out{c.p, c.q + 1, {}};
    const GR sign = sign_of(c.p);
    for (const auto& [s, sec] : c.entries) {
        require_nerve_simplex(cx, s);
        LocalNCSection d = local_d(sec, cx);
        for (auto& [key, a] : d.parts) a *= sign;
        if (!d.is_zero()) out.entries.emplace(s, std::move(d));
    }
    return out;
}

TotalCochain total_D(const TotalCochain& c, const CechComplex& cx) {
    TotalCochain out;
    out.degree = c.degree + 1;
    for (const auto& [p, comp] : c.components) {
        if (p < 0) throw std::invalid_argument("total_D: Čech degree must be non-negative");
        if (p + comp.q != c.degree) throw std::invalid_argument("total_D: component outside the total degree");
        const CechCochain h = cech_delta(comp, cx);
        const CechCochain v = signed_local_d(comp, cx);
        auto slot = [&](int pp, int q) -> CechCochain& {
            auto it = out.components.find(pp);
            if (it == out.components.end()) it = out.components.emplace(pp, CechCochain{pp, q, {}}).first;
            return it->second;
        };
        add_into(slot(p + 1, h.q), h);
        add_into(slot(p, v.q), v);
    }
    for (auto it = out.components.begin(); it != out.components.end();) {
        if (it->second.is_zero())
            it = out.components.erase(it);
        else
            ++it;
    }
    return out;
}

TotalCochain total_D(const CechCochain& c, const CechComplex& cx) {
    TotalCochain t;
    t.degree = c.p + c.q;
    t.components.emplace(c.p, c);
    return total_D(t, cx);
}

std::vector<size_t> total_cohomology(const CechComplex& cx, Execution exec) {
    std::vector<size_t> b = total_betti(cx.view(exec), exec);
    // slots reach total degree 2·dim K + n² − 1; trailing zeros past dim K + n² − 1 are dropped
    const auto len = static_cast<size_t>(cx.p_max() + cx.fiber_dim() + 1);
    while (b.size() > len && b.back() == 0) b.pop_back();
    return b;
}

std::vector<size_t> total_cohomology(const SimplicialComplex& k, int n, const TransitionCocycle& g, Execution exec) {
    if (g.n() != n) throw std::invalid_argument("total_cohomology: cocycle has a different n");
    if (!(*g.complex() == k)) throw std::invalid_argument("total_cohomology: cocycle lives on a different complex");
    return total_cohomology(CechComplex(g), exec);
}

std::vector<size_t> product_prediction(const std::vector<size_t>& derham, int n) {
    const auto inv = invariant_poincare_series(n);
    std::vector<size_t> out(derham.size() + inv.size() - 1, 0);
    for (size_t i = 0; i < derham.size(); ++i)
        for (size_t j = 0; j < inv.size(); ++j) out[i + j] += derham[i] * inv[j];
    return out;
}

// ---------------------------------------------------------------------------

void PolySection::add(Mask s, uint32_t ab, const SullivanForm& f) {
    if (f.is_zero()) return;
    auto key = std::make_pair(s, ab);
    auto it = parts.find(key);
    if (it == parts.end()) {
        parts.emplace(std::move(key), f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) parts.erase(it);
}

bool operator==(const PolySection& a, const PolySection& b) {
    return a.simplex == b.simplex && (a.degree == b.degree || a.is_zero()) && a.parts == b.parts;
}

bool SullivanCochain::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.second.is_zero(); });
}

bool operator==(const SullivanCochain& a, const SullivanCochain& b) {
    if (a.p != b.p) return false;
    auto nonzero = [](const SullivanCochain& c) {
        std::vector<const std::pair<const Simplex, PolySection>*> out;
        for (const auto& e : c.entries)
            if (!e.second.is_zero()) out.push_back(&e);
        return out;
    };
    const auto na = nonzero(a);
    const auto nb = nonzero(b);
    if (na.size() != nb.size()) return false;
    for (size_t i = 0; i < na.size(); ++i)
        if (na[i]->first != nb[i]->first || !(na[i]->second == nb[i]->second)) return false;
    return true;
}

PolySection embed_section(const LocalNCSection& s, const CechComplex& cx) {
    const auto& dom = cx.star_of(s.simplex);
    PolySection out{s.simplex, s.degree, dom, {}};
    const auto nn = static_cast<uint32_t>(cx.n() * cx.n());
    for (const auto& [key, a] : s.parts) {
        const auto& [tau, mask] = key;
        auto t = dom->index_of(tau);
        if (!t) throw NotInComplex("embed_section: Whitney simplex outside the star");
        const SullivanForm f =
            SullivanForm::from_whitney({dom, static_cast<int>(tau.size()) - 1, SparseVector::unit(static_cast<uint32_t>(*t))});
        for (uint32_t ab = 0; ab < nn; ++ab) {
            const GR& v = a.data()[ab];
            if (!v.is_zero()) out.add(mask, ab, f * v);
        }
    }
    return out;
}

SullivanCochain embed_cochain(const CechCochain& c, const CechComplex& cx) {
    SullivanCochain out{c.p, c.q, {}};
    for (const auto& [s, sec] : c.entries)
        if (!sec.is_zero()) out.entries.emplace(s, embed_section(sec, cx));
    return out;
}

namespace {

PolySection restrict_poly_section(const PolySection& s, const Simplex& sub, const CechComplex& cx) {
    const auto& dom = cx.star_of(sub);
    PolySection out{sub, s.degree, dom, {}};
    for (const auto& [key, f] : s.parts) out.add(key.first, key.second, sullivan_restrict(f, dom));
    return out;
}

PolySection gauge_poly_section(const GroupElement& g, const PolySection& s) {
    PolySection out{s.simplex, s.degree, s.domain, {}};
    const int n = g.n();
    const auto nn = static_cast<uint32_t>(n * n);
    const auto& ctx = lie_context(n);
    std::map<int, SparseMatrix> transposed;
    for (const auto& [key, f] : s.parts) {
        const auto& [mask, ab] = key;
        const int deg = degree_of(mask);
        auto it = transposed.find(deg);
        if (it == transposed.end()) it = transposed.emplace(deg, gauge_matrix(g, deg).transpose()).first;
        const uint32_t col = ctx.exterior.rank_of(mask) * nn + ab;
        for (const auto& e : it->second.row(col).entries)
            out.add(ctx.exterior.of_degree(deg)[e.index / nn], e.index % nn, f * e.value);
    }
    return out;
}

PolySection multiply_extend(int alpha, const PolySection& s, const Simplex& target, const CechComplex& cx) {
    const auto& dom = cx.star_of(target);
    PolySection out{target, s.degree, dom, {}};
    for (const auto& [key, f] : s.parts) out.add(key.first, key.second, barycentric_multiply(alpha, f, dom));
    return out;
}

}  // namespace

SullivanCochain sullivan_delta(const SullivanCochain& c, const CechComplex& cx) {
    if (c.p == -1) {
        SullivanCochain out = c;
        out.p = 0;
        return out;
    }
    const int p = c.p;
    SullivanCochain out{p + 1, c.q, {}};
    if (p + 1 > cx.p_max()) return out;
    for (const auto& tgt : cx.nerve().simplices(p + 1)) {
        PolySection acc{tgt, c.q, cx.star_of(tgt), {}};
        for (size_t i = 0; i <= static_cast<size_t>(p + 1); ++i) {
            auto it = c.entries.find(face(tgt, i));
            if (it == c.entries.end()) continue;
            PolySection piece = restrict_poly_section(it->second, tgt, cx);
            if (i == static_cast<size_t>(p + 1))
                piece = gauge_poly_section(cx.cocycle().value(tgt[static_cast<size_t>(p)], tgt[static_cast<size_t>(p + 1)]), piece);
            add_into(acc, piece, sign_of(static_cast<int>(i)));
        }
        if (!acc.is_zero()) out.entries.emplace(tgt, std::move(acc));
    }
    return out;
}

SullivanCochain mv_homotopy(const CechCochain& c, const CechComplex& cx) {
    if (c.p < 0) throw std::invalid_argument("mv_homotopy: p must be non-negative");
    if (!cech_delta(c, cx).is_zero()) throw NotDeltaClosed("mv_homotopy: input is not δ-closed");
    const int p = c.p;
    SullivanCochain out{p - 1, c.q, {}};
    const auto& k = cx.nerve();
    const auto& g = cx.cocycle();

    if (p == 0) {
        for (const auto& av : k.simplices(0)) {
            const int alpha = av[0];
            PolySection acc{av, c.q, cx.star_of(av), {}};
            for (const auto& bv : cx.star_of(av)->simplices(0)) {
                const int beta = bv[0];
                auto it = c.entries.find(bv);
                if (it == c.entries.end()) continue;
                PolySection piece = embed_section(it->second, cx);
                if (beta != alpha) {
                    piece = restrict_poly_section(piece, {std::min(alpha, beta), std::max(alpha, beta)}, cx);
                    piece = gauge_poly_section(g.value(beta, alpha), piece);
                }
                add_into(acc, multiply_extend(beta, piece, av, cx));
            }
            if (!acc.is_zero()) out.entries.emplace(av, std::move(acc));
        }
        return out;
    }

    for (const auto& sigma : k.simplices(p - 1)) {
        PolySection acc{sigma, c.q, cx.star_of(sigma), {}};
        for (const auto& av : cx.star_of(sigma)->simplices(0)) {
            const int alpha = av[0];
            if (std::binary_search(sigma.begin(), sigma.end(), alpha)) continue;
            const Simplex up = *join(sigma, av);
            auto it = c.entries.find(up);
            if (it == c.entries.end()) continue;
            // ω_{α σ} = (−1)^{#σ below α} ω_{sorted}
            const auto below = std::lower_bound(sigma.begin(), sigma.end(), alpha) - sigma.begin();
            PolySection piece = embed_section(it->second, cx);
            // when α comes last the entry is trivialized over α; move it to σ's last vertex
            if (alpha > sigma.back()) piece = gauge_poly_section(g.value(alpha, sigma.back()), piece);
            add_into(acc, multiply_extend(alpha, piece, sigma, cx), sign_of(static_cast<int>(below)));
        }
        if (!acc.is_zero()) out.entries.emplace(sigma, std::move(acc));
    }
    return out;
}

// ---------------------------------------------------------------------------

CechCochain fiber_integrate(const CechCochain& c, const CechComplex& cx) {
    const int top = cx.fiber_dim();
    CechCochain out{c.p, c.q - top, {}};
    const GR inv_n = GR(1) / GR(cx.n());
    for (const auto& [s, sec] : c.entries) {
        LocalNCSection r{s, c.q - top, {}};
        for (const auto& [key, a] : sec.parts) {
            if (degree_of(key.second) != top) continue;
            DenseMatrix m(1, 1);
            m(0, 0) = a.trace() * inv_n;
            r.add(key.first, 0, m);
        }
        if (!r.is_zero()) out.entries.emplace(s, std::move(r));
    }
    return out;
}

TotalCochain fiber_integrate(const TotalCochain& c, const CechComplex& cx) {
    TotalCochain out;
    out.degree = c.degree - cx.fiber_dim();
    for (const auto& [p, comp] : c.components) {
        CechCochain f = fiber_integrate(comp, cx);
        if (!f.is_zero()) out.components.emplace(p, std::move(f));
    }
    return out;
}

CechCochain constant_primitive_cochain(const CechComplex& cx, int r) {
    const NCForm prim = primitive_form(r, cx.n());
    CechCochain out{0, prim.degree(), {}};
    for (const auto& av : cx.nerve().simplices(0)) {
        LocalNCSection sec{av, prim.degree(), {}};
        for (const auto& w : cx.star_of(av)->simplices(0))
            for (const auto& [m, a] : prim.components()) sec.add(w, m, a);
        out.entries.emplace(av, std::move(sec));
    }
    return out;
}

}  // namespace ncgeo
