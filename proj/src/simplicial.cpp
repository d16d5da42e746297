#include "ncgeo/simplicial.hpp"

#include <algorithm>
#include <set>

namespace ncgeo {

SimplicialComplex SimplicialComplex::from_simplices(std::vector<std::string> names, std::vector<Simplex> simplices) {
    SimplicialComplex k;
    k.names_ = std::move(names);
    {
        std::set<std::string> seen(k.names_.begin(), k.names_.end());
        if (seen.size() != k.names_.size()) throw std::invalid_argument("SimplicialComplex: duplicate vertex name");
    }
    std::set<Simplex> closed;
    for (auto s : simplices) {
        if (s.empty()) throw std::invalid_argument("SimplicialComplex: empty simplex");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("SimplicialComplex: repeated vertex in a simplex");
        for (int v : s)
            if (v < 0 || static_cast<size_t>(v) >= k.names_.size())
                throw std::out_of_range("SimplicialComplex: vertex id out of range");
        if (s.size() > 20) throw std::invalid_argument("SimplicialComplex: simplex dimension too large");
        if (closed.count(s)) continue;
        const auto len = static_cast<uint32_t>(s.size());
        for (uint32_t mask = 1; mask < (uint32_t{1} << len); ++mask) {
            Simplex f;
            for (uint32_t i = 0; i < len; ++i)
                if (mask & (uint32_t{1} << i)) f.push_back(s[i]);
            closed.insert(std::move(f));
        }
    }
    for (const auto& s : closed) {
        const size_t d = s.size() - 1;
        if (k.by_dim_.size() <= d) k.by_dim_.resize(d + 1);
        k.by_dim_[d].push_back(s);
    }
    for (auto& group : k.by_dim_) {
        std::sort(group.begin(), group.end());
        for (size_t i = 0; i < group.size(); ++i) k.index_.emplace(group[i], i);
    }
    return k;
}

size_t SimplicialComplex::count(int p) const {
    return p < 0 || p > dimension() ? 0 : by_dim_[static_cast<size_t>(p)].size();
}

size_t SimplicialComplex::total_count() const { return index_.size(); }

std::span<const Simplex> SimplicialComplex::simplices(int p) const {
    if (p < 0 || p > dimension()) return {};
    return by_dim_[static_cast<size_t>(p)];
}

std::optional<size_t> SimplicialComplex::index_of(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
    if (names_ != other.names_) return false;
    return std::all_of(index_.begin(), index_.end(), [&](const auto& kv) { return other.contains(kv.first); });
}

std::optional<int> SimplicialComplex::vertex_id(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

Simplex face(const Simplex& s, size_t i) {
    Simplex out;
    out.reserve(s.size() - 1);
    for (size_t k = 0; k < s.size(); ++k)
        if (k != i) out.push_back(s[k]);
    return out;
}

std::optional<Simplex> join(const Simplex& a, const Simplex& b) {
    Simplex out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) return std::nullopt;
    return out;
}

SimplicialComplex star(const SimplicialComplex& k, const Simplex& sigma) {
    if (!k.contains(sigma)) throw NotInComplex("star: simplex is not in the complex");
    std::vector<Simplex> cofaces;
    for (int p = static_cast<int>(sigma.size()) - 1; p <= k.dimension(); ++p)
        for (const auto& s : k.simplices(p))
            if (std::includes(s.begin(), s.end(), sigma.begin(), sigma.end())) cofaces.push_back(s);
    return SimplicialComplex::from_simplices(k.vertex_names(), std::move(cofaces));
}

SparseMatrix coboundary_matrix(const SimplicialComplex& k, int p) {
    std::vector<Triplet> trips;
    const auto targets = k.simplices(p + 1);
    for (size_t r = 0; r < targets.size(); ++r) {
        for (size_t i = 0; i < targets[r].size(); ++i) {
            auto col = k.index_of(face(targets[r], i));
            trips.push_back({static_cast<uint32_t>(r), static_cast<uint32_t>(*col), GR(i % 2 ? -1 : 1)});
        }
    }
    return SparseMatrix::from_triplets(targets.size(), k.count(p), std::move(trips));
}

WhitneyForm whitney_d(const WhitneyForm& w) {
    if (!w.complex) throw std::invalid_argument("whitney_d: form has no complex");
    return {w.complex, w.degree + 1, coboundary_matrix(*w.complex, w.degree).apply(w.coefficients)};
}

std::vector<size_t> derham_cohomology(const SimplicialComplex& k, Execution exec) {
    const int dim = k.dimension();
    if (dim < 0) return {};
    std::vector<size_t> ranks(static_cast<size_t>(dim) + 1, 0);
    parallel_for(static_cast<size_t>(dim), exec, [&](size_t p) {
        ranks[p] = rank(coboundary_matrix(k, static_cast<int>(p)), Execution::serial);
    });
    std::vector<size_t> betti;
    for (int p = 0; p <= dim; ++p) {
        const auto up = static_cast<size_t>(p);
        betti.push_back(k.count(p) - ranks[up] - (p > 0 ? ranks[up - 1] : 0));
    }
    return betti;
}

SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<int>& new_id) {
    const size_t nv = k.vertex_names().size();
    if (new_id.size() != nv) throw std::invalid_argument("relabel: permutation has the wrong length");
    std::vector<std::string> names(nv);
    std::vector<char> used(nv, 0);
    for (size_t v = 0; v < nv; ++v) {
        const int t = new_id[v];
        if (t < 0 || static_cast<size_t>(t) >= nv || used[static_cast<size_t>(t)])
            throw std::invalid_argument("relabel: not a permutation");
        used[static_cast<size_t>(t)] = 1;
        names[static_cast<size_t>(t)] = k.vertex_names()[v];
    }
    std::vector<Simplex> simplices;
    for (int p = 0; p <= k.dimension(); ++p)
        for (const auto& s : k.simplices(p)) {
            Simplex t;
            for (int v : s) t.push_back(new_id[static_cast<size_t>(v)]);
            simplices.push_back(std::move(t));
        }
    return SimplicialComplex::from_simplices(std::move(names), std::move(simplices));
}

namespace {

std::vector<std::string> numbered(int count) {
    std::vector<std::string> out;
    for (int v = 0; v < count; ++v) out.push_back("v" + std::to_string(v));
    return out;
}

}  // namespace

SimplicialComplex hexagon_circle() {
    std::vector<Simplex> edges;
    for (int v = 0; v < 6; ++v) edges.push_back({v, (v + 1) % 6});
    return SimplicialComplex::from_simplices(numbered(6), std::move(edges));
}

SimplicialComplex octahedron_sphere() {
    // antipodal pairs (0,5), (1,3), (2,4)
    std::vector<Simplex> faces;
    for (int top : {0, 5})
        for (int a : {1, 3})
            for (int b : {2, 4}) faces.push_back({top, a, b});
    return SimplicialComplex::from_simplices(numbered(6), std::move(faces));
}

SimplicialComplex nine_vertex_torus() {
    auto id = [](int i, int j) { return 3 * ((i + 3) % 3) + (j + 3) % 3; };
    std::vector<Simplex> faces;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    std::vector<std::string> names;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) names.push_back("v" + std::to_string(i) + std::to_string(j));
    return SimplicialComplex::from_simplices(std::move(names), std::move(faces));
}

std::optional<SimplicialComplex> bundled_complex(std::string_view name) {
    if (name == "s1-hexagon") return hexagon_circle();
    if (name == "s2-octahedron") return octahedron_sphere();
    if (name == "t2-nine") return nine_vertex_torus();
    return std::nullopt;
}

std::vector<std::string> bundled_complex_names() { return {"s1-hexagon", "s2-octahedron", "t2-nine"}; }

}  // namespace ncgeo
