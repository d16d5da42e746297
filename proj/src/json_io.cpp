#include "ncgeo/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace ncgeo::io {

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw SchemaError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

int int_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_number_integer()) throw SchemaError(std::string("field \"") + name + "\" must be an integer");
    return v.get<int>();
}

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw SchemaError("number must be a fraction string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(std::string("bad fraction: ") + e.what());
    }
}

}  // namespace

json to_json(const GR& z) { return json::array({z.real().to_string(), z.imag().to_string()}); }

GR gr_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw SchemaError("complex entry must be [re, im]");
    return {rational_from(j[0]), rational_from(j[1])};
}

json to_json(const DenseMatrix& m) {
    json rows = json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

DenseMatrix dense_from_json(const json& j, size_t n) {
    if (!j.is_array() || j.size() != n) throw SchemaError("matrix must have " + std::to_string(n) + " rows");
    DenseMatrix m(n, n);
    for (size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n) throw SchemaError("matrix must have " + std::to_string(n) + " columns");
        for (size_t c = 0; c < n; ++c) m(r, c) = gr_from_json(j[r][c]);
    }
    return m;
}

json matrix_dump(const SparseMatrix& m) {
    json entries = json::array();
    for (size_t r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r).entries)
            entries.push_back(json::array({r, e.index, e.value.real().to_string(), e.value.imag().to_string()}));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

SparseMatrix matrix_from_dump(const json& j) {
    const auto rows = static_cast<size_t>(int_field(j, "rows"));
    const auto cols = static_cast<size_t>(int_field(j, "cols"));
    std::vector<Triplet> t;
    for (const auto& e : field(j, "entries")) {
        if (!e.is_array() || e.size() != 4) throw SchemaError("matrix entry must be [r, c, re, im]");
        const auto r = e[0].get<size_t>();
        const auto c = e[1].get<size_t>();
        if (r >= rows || c >= cols) throw SchemaError("matrix entry out of range");
        t.push_back({static_cast<uint32_t>(r), static_cast<uint32_t>(c), {rational_from(e[2]), rational_from(e[3])}});
    }
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

json to_json(const GroupElement& g) { return {{"n", g.n()}, {"matrix", to_json(g.matrix())}}; }

GroupElement group_from_json(const json& j) {
    const int n = int_field(j, "n");
    if (n < 1) throw SchemaError("n must be positive");
    return GroupElement(dense_from_json(field(j, "matrix"), static_cast<size_t>(n)));
}

json to_json(const NCForm& w) {
    json comps = json::array();
    for (const auto& [s, a] : w.components())
        comps.push_back({{"indices", indices_of(s)}, {"matrix", to_json(a)}});
    return {{"n", w.n()}, {"degree", w.degree()}, {"components", std::move(comps)}};
}

NCForm form_from_json(const json& j) {
    const int n = int_field(j, "n");
    const int degree = int_field(j, "degree");
    if (n < 1) throw SchemaError("n must be positive");
    NCForm w(n, degree);
    for (const auto& c : field(j, "components")) {
        const auto idx = field(c, "indices").get<std::vector<int>>();
        const SortedIndices s = sort_indices(idx);
        if (s.sign == 0) throw SchemaError("repeated derivation index");
        DenseMatrix m = dense_from_json(field(c, "matrix"), static_cast<size_t>(n));
        try {
            w.add(s.mask, m * GR(s.sign));
        } catch (const std::exception& e) {
            throw SchemaError(std::string("bad component: ") + e.what());
        }
    }
    return w;
}

json to_json(const SimplicialComplex& k) {
    json simplices = json::array();
    for (int p = k.dimension(); p >= 0; --p)
        for (const auto& s : k.simplices(p)) {
            bool maximal = true;
            if (p < k.dimension())
                for (const auto& t : k.simplices(p + 1))
                    if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                        maximal = false;
                        break;
                    }
            if (!maximal) continue;
            json names = json::array();
            for (int v : s) names.push_back(k.vertex_names()[static_cast<size_t>(v)]);
            simplices.push_back(std::move(names));
        }
    return {{"vertices", k.vertex_names()}, {"simplices", std::move(simplices)}};
}

SimplicialComplex complex_from_json(const json& j) {
    const auto names = field(j, "vertices").get<std::vector<std::string>>();
    std::map<std::string, int> id;
    for (size_t i = 0; i < names.size(); ++i) id[names[i]] = static_cast<int>(i);
    std::vector<Simplex> simplices;
    for (const auto& s : field(j, "simplices")) {
        Simplex sx;
        for (const auto& v : s) {
            const auto name = v.get<std::string>();
            auto it = id.find(name);
            if (it == id.end()) throw SchemaError("simplex uses unknown vertex \"" + name + "\"");
            sx.push_back(it->second);
        }
        simplices.push_back(std::move(sx));
    }
    try {
        return SimplicialComplex::from_simplices(names, std::move(simplices));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("invalid complex: ") + e.what());
    }
}

json to_json(const TransitionCocycle& g) {
    json edges = json::array();
    const auto& names = g.complex()->vertex_names();
    for (const auto& [pair, v] : g.stored())
        edges.push_back({{"pair", {names[static_cast<size_t>(pair.first)], names[static_cast<size_t>(pair.second)]}},
                         {"matrix", to_json(v.matrix())}});
    return {{"n", g.n()}, {"edges", std::move(edges)}};
}

TransitionCocycle cocycle_from_json(const json& j, std::shared_ptr<const SimplicialComplex> k) {
    const int n = int_field(j, "n");
    if (n < 1) throw SchemaError("n must be positive");
    TransitionCocycle g(k, n);
    for (const auto& e : field(j, "edges")) {
        const auto pair = field(e, "pair").get<std::vector<std::string>>();
        if (pair.size() != 2) throw SchemaError("pair must name two vertices");
        auto a = k->vertex_id(pair[0]);
        auto b = k->vertex_id(pair[1]);
        if (!a || !b) throw SchemaError("cocycle uses an unknown vertex");
        try {
            g.set(*a, *b, GroupElement(dense_from_json(field(e, "matrix"), static_cast<size_t>(n))));
        } catch (const NotInComplex&) {
            throw SchemaError("cocycle pair (" + pair[0] + ", " + pair[1] + ") is not an edge");
        }
    }
    g.validate();
    return g;
}

json page_dump(const SpectralPage& pg) {
    json slots = json::array();
    for (const auto& s : pg.nonzero_slots()) slots.push_back(s);
    return {{"r", pg.r}, {"slots", std::move(slots)}};
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

}  // namespace ncgeo::io
