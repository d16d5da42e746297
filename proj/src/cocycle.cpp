#include "ncgeo/cocycle.hpp"

namespace ncgeo {

TransitionCocycle::TransitionCocycle(std::shared_ptr<const SimplicialComplex> complex, int n)
    : complex_(std::move(complex)), n_(n) {
    if (!complex_) throw std::invalid_argument("TransitionCocycle: missing complex");
    if (n < 1) throw std::invalid_argument("TransitionCocycle: n must be at least 1");
}

void TransitionCocycle::set(int a, int b, const GroupElement& g) {
    if (g.n() != n_) throw SizeMismatch("TransitionCocycle::set: group element has the wrong size");
    if (a == b) throw std::invalid_argument("TransitionCocycle::set: diagonal entries are fixed to the identity");
    const Simplex edge = a < b ? Simplex{a, b} : Simplex{b, a};
    if (!complex_->contains(edge)) throw NotInComplex("TransitionCocycle::set: pair does not span an edge");
    if (a < b)
        values_.insert_or_assign({a, b}, g);
    else
        values_.insert_or_assign({b, a}, g.inverse());
}

GroupElement TransitionCocycle::value(int a, int b) const {
    if (a == b) return GroupElement::identity(n_);
    const Simplex edge = a < b ? Simplex{a, b} : Simplex{b, a};
    if (!complex_->contains(edge)) throw NotInComplex("TransitionCocycle::value: pair does not span an edge");
    auto it = values_.find({std::min(a, b), std::max(a, b)});
    if (it == values_.end()) return GroupElement::identity(n_);
    return a < b ? it->second : it->second.inverse();
}

std::optional<Simplex> TransitionCocycle::violation() const {
    for (const auto& t : complex_->simplices(2)) {
        if (!(value(t[0], t[1]) * value(t[1], t[2]) == value(t[0], t[2]))) return t;
    }
    return std::nullopt;
}

void TransitionCocycle::validate() const {
    if (auto w = violation()) {
        const auto& names = complex_->vertex_names();
        throw CocycleViolation("cocycle condition fails on 2-simplex {" + names[static_cast<size_t>((*w)[0])] + ", " +
                                   names[static_cast<size_t>((*w)[1])] + ", " + names[static_cast<size_t>((*w)[2])] + "}",
                               *w);
    }
}

TransitionCocycle trivial_cocycle(std::shared_ptr<const SimplicialComplex> k, int n) {
    return TransitionCocycle(std::move(k), n);
}

TransitionCocycle coboundary_cocycle(std::shared_ptr<const SimplicialComplex> k, const std::vector<GroupElement>& h) {
    if (h.size() != k->vertex_names().size()) throw std::invalid_argument("coboundary_cocycle: one element per vertex required");
    TransitionCocycle g(k, h.front().n());
    for (const auto& e : k->simplices(1)) {
        const auto a = static_cast<size_t>(e[0]);
        const auto b = static_cast<size_t>(e[1]);
        const GroupElement v = h[a].inverse() * h[b];
        if (!v.is_identity()) g.set(e[0], e[1], v);
    }
    return g;
}

TransitionCocycle conjugate_cocycle(const TransitionCocycle& g, const std::vector<GroupElement>& h) {
    const auto& k = g.complex();
    if (h.size() != k->vertex_names().size()) throw std::invalid_argument("conjugate_cocycle: one element per vertex required");
    TransitionCocycle out(k, g.n());
    for (const auto& e : k->simplices(1)) {
        const auto a = static_cast<size_t>(e[0]);
        const auto b = static_cast<size_t>(e[1]);
        const GroupElement v = h[a].inverse() * g.value(e[0], e[1]) * h[b];
        if (!v.is_identity()) out.set(e[0], e[1], v);
    }
    return out;
}

TransitionCocycle relabel_cocycle(const TransitionCocycle& g, std::shared_ptr<const SimplicialComplex> relabeled,
                                  const std::vector<int>& new_id) {
    TransitionCocycle out(std::move(relabeled), g.n());
    for (const auto& [pair, v] : g.stored())
        out.set(new_id[static_cast<size_t>(pair.first)], new_id[static_cast<size_t>(pair.second)], v);
    return out;
}

GroupElement phase_i(int n) {
    DenseMatrix m = DenseMatrix::identity(static_cast<size_t>(n));
    m(0, 0) = GR::i();
    m(1, 1) = -GR::i();
    return GroupElement(std::move(m));
}

namespace {

GroupElement minus_block(int n) {
    DenseMatrix m = DenseMatrix::identity(static_cast<size_t>(n));
    m(0, 0) = GR(-1);
    m(1, 1) = GR(-1);
    return GroupElement(std::move(m));
}

GroupElement power(const GroupElement& g, int e) {
    GroupElement out = GroupElement::identity(g.n());
    const GroupElement base = e < 0 ? g.inverse() : g;
    for (int k = 0; k < std::abs(e); ++k) out = out * base;
    return out;
}

}  // namespace

TransitionCocycle bundled_flat_cocycle(std::string_view complex_name, std::shared_ptr<const SimplicialComplex> k, int n) {
    TransitionCocycle g(k, n);
    if (n < 2) return g;
    if (complex_name == "s1-hexagon") {
        g.set(0, 5, phase_i(n));
        return g;
    }
    if (complex_name == "s2-octahedron") {
        const auto elems = test_group_elements(n);
        std::vector<GroupElement> h;
        for (size_t v = 0; v < k->vertex_names().size(); ++v) h.push_back(elems[(v + 1) % elems.size()]);
        return coboundary_cocycle(k, h);
    }
    if (complex_name == "t2-nine") {
        const GroupElement a = phase_i(n);
        const GroupElement b = minus_block(n);
        // vertex (i, j) has id 3i + j; an edge step wraps when a coordinate
        // goes from 2 to 0
        for (const auto& e : k->simplices(1)) {
            const int i0 = e[0] / 3, j0 = e[0] % 3, i1 = e[1] / 3, j1 = e[1] % 3;
            auto wraps = [](int from, int to) {
                const int d = (to - from + 3) % 3;  // 0, 1 (forward) or 2 (backward)
                if (d == 1) return from == 2 ? 1 : 0;
                if (d == 2) return from == 0 ? -1 : 0;
                return 0;
            };
            const GroupElement v = power(a, wraps(i0, i1)) * power(b, wraps(j0, j1));
            if (!v.is_identity()) g.set(e[0], e[1], v);
        }
        return g;
    }
    throw std::invalid_argument("bundled_flat_cocycle: unknown complex name");
}

}  // namespace ncgeo
