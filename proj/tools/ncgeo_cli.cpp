#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ncgeo/cech.hpp"
#include "ncgeo/json_io.hpp"
#include "ncgeo/verify.hpp"

using namespace ncgeo;
using io::json;

namespace {

struct RunConfig {
    int n = 2;
    std::string complex = "s1-hexagon";
    std::string cocycle;
    std::string form;
    std::string format = "json";
    std::string out;
    std::string suite = "all";
    uint64_t seed = 7;
    int page = 2;
    bool allow_large = false;
    bool representatives = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json conventions() {
    return {{"sl_basis", "E_ij for i != j in lexicographic order, then H_k = E_kk - E_(k+1)(k+1); indices 0-based"},
            {"exterior_order", "subsets of basis indices, increasing; coordinate = rank(S) * n^2 + a * n + b"},
            {"nc_integral", "tr(a)/n on a (x) e^0 ^ ... ^ e^(n^2-2), zero below top degree"},
            {"theta", "stored as i*theta: component X_k at {k}"},
            {"coefficients", "exact Q(i), fractions in lowest terms"}};
}

void check_n(const RunConfig& cfg) {
    if (cfg.n < 1) throw UsageError("n must be at least 1");
    if (cfg.n > 4) throw UsageError("n = " + std::to_string(cfg.n) + " is not supported (at most 4)");
    if (cfg.n == 4 && !cfg.allow_large) throw UsageError("n = 4 runs for minutes; pass --allow-large");
}

// Twisted computations stay at n <= 3: the fiber alone has dimension 2^15 · 16 at n = 4.
void check_twisted_n(const RunConfig& cfg) {
    check_n(cfg);
    if (cfg.n > 3) throw UsageError("Cech computations support n <= 3");
}

std::shared_ptr<const SimplicialComplex> load_complex(const RunConfig& cfg) {
    if (auto k = bundled_complex(cfg.complex)) return std::make_shared<const SimplicialComplex>(std::move(*k));
    return std::make_shared<const SimplicialComplex>(io::complex_from_json(io::read_file(cfg.complex)));
}

TransitionCocycle load_cocycle(const RunConfig& cfg, const std::shared_ptr<const SimplicialComplex>& k) {
    if (cfg.cocycle.empty()) return trivial_cocycle(k, cfg.n);
    if (cfg.cocycle == "bundled") {
        if (!bundled_complex(cfg.complex)) throw UsageError("--cocycle bundled needs a bundled complex");
        return bundled_flat_cocycle(cfg.complex, k, cfg.n);
    }
    TransitionCocycle g = io::cocycle_from_json(io::read_file(cfg.cocycle), k);
    if (g.n() != cfg.n) throw io::SchemaError("cocycle has n = " + std::to_string(g.n()) + ", expected " + std::to_string(cfg.n));
    return g;
}

std::string complex_label(const RunConfig& cfg) { return cfg.complex; }

std::string csv_betti(const std::vector<size_t>& betti) {
    std::ostringstream out;
    out << "degree,dimension\n";
    for (size_t i = 0; i < betti.size(); ++i) out << i << ',' << betti[i] << '\n';
    return out.str();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

struct Report {
    json doc;
    std::string csv;
    int status = 0;
};

Report cmd_matrix_cohomology(const RunConfig& cfg) {
    check_n(cfg);
    const auto h = matrix_cohomology(cfg.n, cfg.representatives && cfg.n <= 3);
    Report r;
    r.doc = {{"command", "matrix-cohomology"}, {"n", cfg.n}, {"betti", h.table.betti},
             {"predicted", invariant_poincare_series(cfg.n)}, {"conventions", conventions()}};
    if (h.has_representatives) {
        json reps = json::array();
        for (const auto& deg : h.table.representatives)
            for (const auto& w : deg) reps.push_back(io::to_json(w));
        r.doc["representatives"] = reps;
        r.doc["invariants_isomorphic"] = h.invariants_isomorphic;
    }
    r.csv = csv_betti(h.table.betti);
    return r;
}

Report cmd_invariants(const RunConfig& cfg) {
    check_n(cfg);
    if (cfg.n > 3) throw UsageError("invariants supports n <= 3");
    const auto inv = invariant_subspace(cfg.n);
    json reps = json::array();
    for (const auto& deg : inv.representatives)
        for (const auto& w : deg) reps.push_back(io::to_json(w));
    Report r;
    r.doc = {{"command", "invariants"}, {"n", cfg.n}, {"betti", inv.betti}, {"representatives", reps}, {"conventions", conventions()}};
    r.csv = csv_betti(inv.betti);
    return r;
}

Report cmd_derham(const RunConfig& cfg) {
    const auto k = load_complex(cfg);
    const auto h = derham_cohomology(*k);
    Report r;
    r.doc = {{"command", "derham"}, {"complex", complex_label(cfg)}, {"betti", h}, {"complex_data", io::to_json(*k)}};
    r.csv = csv_betti(h);
    return r;
}

Report cmd_total(const RunConfig& cfg) {
    check_twisted_n(cfg);
    const auto k = load_complex(cfg);
    const CechComplex cx(load_cocycle(cfg, k));
    const DoubleComplexView view = cx.view();
    const auto betti = total_betti(view);
    const auto total = total_cohomology(cx);
    const SpectralPage e2 = page(view, 2);
    const auto prediction = product_prediction(derham_cohomology(*k), cfg.n);
    Report r;
    r.doc = {{"command", "total"},
             {"complex", complex_label(cfg)},
             {"n", cfg.n},
             {"cocycle", cfg.cocycle.empty() ? "trivial" : cfg.cocycle},
             {"betti_total", total},
             {"betti_e2", e2.nonzero_slots()},
             {"predicted", prediction},
             {"match_product", total == prediction},
             {"degenerate_at_e2", degeneration_check(e2, betti).degenerate},
             {"conventions", conventions()}};
    r.csv = csv_betti(total);
    return r;
}

Report cmd_spectral(const RunConfig& cfg) {
    check_twisted_n(cfg);
    if (cfg.page < 0) throw UsageError("--page must be non-negative");
    const auto k = load_complex(cfg);
    const CechComplex cx(load_cocycle(cfg, k));
    const DoubleComplexView view = cx.view();
    const SpectralPage pg = page(view, cfg.page);
    const auto betti = total_betti(view);
    const DegenerationReport rep = degeneration_check(view, betti);
    Report r;
    r.doc = {{"command", "spectral"},
             {"complex", complex_label(cfg)},
             {"n", cfg.n},
             {"page", io::page_dump(pg)},
             {"e2_sums", rep.e2_sums},
             {"betti_total", rep.total_betti},
             {"degenerate_at_e2", rep.degenerate}};
    if (rep.first_failure) r.doc["first_failure"] = *rep.first_failure;
    std::ostringstream csv;
    csv << "p,q,dimension\n";
    for (const auto& s : pg.nonzero_slots()) csv << s[0] << ',' << s[1] << ',' << s[2] << '\n';
    r.csv = csv.str();
    return r;
}

Report cmd_integrate(const RunConfig& cfg) {
    Report r;
    if (!cfg.form.empty()) {
        const NCForm w = io::form_from_json(io::read_file(cfg.form));
        const GR value = nc_integral_point(w);
        r.doc = {{"command", "integrate"}, {"n", w.n()}, {"degree", w.degree()}, {"integral", io::to_json(value)},
                 {"conventions", conventions()}};
        r.csv = "integral\n" + csv_escape(value.to_string()) + "\n";
        return r;
    }
    // fiber integral of the constant primitive class c_(2n-1) over every star
    check_twisted_n(cfg);
    if (cfg.n < 2) throw UsageError("fiber integration needs n >= 2");
    const auto k = load_complex(cfg);
    const CechComplex cx(load_cocycle(cfg, k));
    const CechComplex scalar(trivial_cocycle(k, 1));
    const CechCochain c = constant_primitive_cochain(cx, cfg.n);
    const CechCochain f = fiber_integrate(c, cx);
    json values = json::array();
    std::ostringstream csv;
    csv << "vertex,value\n";
    for (const auto& v : k->simplices(0)) {
        GR value;
        auto it = f.entries.find(v);
        if (it != f.entries.end()) {
            // constant on the star: read it off the vertex itself
            for (const auto& [key, m] : it->second.parts)
                if (key.first == v) value = m(0, 0);
        }
        const std::string& name = k->vertex_names()[static_cast<size_t>(v[0])];
        values.push_back({{"vertex", name}, {"value", io::to_json(value)}});
        csv << csv_escape(name) << ',' << csv_escape(value.to_string()) << '\n';
    }
    r.doc = {{"command", "integrate"},
             {"complex", complex_label(cfg)},
             {"n", cfg.n},
             {"class_degree", 2 * cfg.n - 1},
             {"closed", total_D(c, cx).is_zero()},
             {"image_closed", total_D(f, scalar).is_zero()},
             {"image_nonzero", !f.is_zero()},
             {"values", values},
             {"conventions", conventions()}};
    r.csv = csv.str();
    return r;
}

Report cmd_verify(const RunConfig& cfg) {
    verify::Options opts;
    opts.seed = cfg.seed;
    opts.allow_large = cfg.allow_large;
    const auto ids = verify::suite_criteria(cfg.suite);
    json crits = json::array();
    std::ostringstream csv;
    csv << "check_name,status,detail\n";
    bool all = true;
    for (int id : ids) {
        const auto res = verify::run_criterion(id, opts);
        json checks = json::array();
        for (const auto& c : res.checks) {
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            csv << csv_escape("c" + std::to_string(id) + " " + c.name) << ',' << (c.passed ? "pass" : "fail") << ','
                << csv_escape(c.detail) << '\n';
        }
        crits.push_back({{"id", id}, {"title", res.title}, {"passed", res.passed()}, {"checks", checks}});
        all = all && res.passed();
    }
    Report r;
    r.doc = {{"command", "verify"}, {"suite", cfg.suite}, {"seed", cfg.seed}, {"passed", all}, {"criteria", crits},
             {"conventions", conventions()}};
    r.csv = csv.str();
    r.status = all ? 0 : 1;
    return r;
}

void emit(const Report& r, const RunConfig& cfg) {
    const std::string text = cfg.format == "csv" ? r.csv : r.doc.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.out);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_config();
    RunConfig cfg;
    CLI::App app{"Exact cohomology of derivation-based forms on matrix bundles"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out, "write the report to a file");
    };
    auto add_n = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "matrix size");
        sub->add_flag("--allow-large", cfg.allow_large, "permit n = 4");
    };
    auto add_space = [&](CLI::App* sub) {
        sub->add_option("--complex", cfg.complex, "bundled name (s1-hexagon, s2-octahedron, t2-nine) or JSON file");
        sub->add_option("--cocycle", cfg.cocycle, "cocycle JSON file, or 'bundled' for the built-in flat cocycle");
    };

    auto* mc = app.add_subcommand("matrix-cohomology", "H(M_n (x) Lambda sl(n)*, d')");
    add_n(mc);
    add_common(mc);
    mc->add_flag("--representatives", cfg.representatives, "include cohomology representatives");
    auto* inv = app.add_subcommand("invariants", "Ad-invariant scalar forms");
    add_n(inv);
    add_common(inv);
    auto* dr = app.add_subcommand("derham", "simplicial cohomology of a complex");
    dr->add_option("--complex", cfg.complex, "bundled name or JSON file");
    add_common(dr);
    auto* tot = app.add_subcommand("total", "total cohomology of the twisted Cech double complex");
    add_n(tot);
    add_space(tot);
    add_common(tot);
    auto* sp = app.add_subcommand("spectral", "a page of the spectral sequence");
    add_n(sp);
    add_space(sp);
    add_common(sp);
    sp->add_option("--page", cfg.page, "page number r");
    auto* in = app.add_subcommand("integrate", "noncommutative integral of a form, or fiber integral of c_(2n-1)");
    add_n(in);
    add_space(in);
    add_common(in);
    in->add_option("--form", cfg.form, "NCForm JSON file");
    auto* ver = app.add_subcommand("verify", "run acceptance suites");
    ver->add_option("--suite", cfg.suite, "suite name")->check(CLI::IsMember(verify::suite_names()));
    ver->add_option("--seed", cfg.seed, "seed for the property trials");
    ver->add_flag("--allow-large", cfg.allow_large, "include n = 4 matrix cohomology");
    add_common(ver);

    CLI11_PARSE(app, argc, argv);

    try {
        Report r;
        if (*mc) r = cmd_matrix_cohomology(cfg);
        else if (*inv) r = cmd_invariants(cfg);
        else if (*dr) r = cmd_derham(cfg);
        else if (*tot) r = cmd_total(cfg);
        else if (*sp) r = cmd_spectral(cfg);
        else if (*in) r = cmd_integrate(cfg);
        else r = cmd_verify(cfg);
        emit(r, cfg);
        return r.status;
    } catch (const CocycleViolation& e) {
        std::string where;
        try {
            const auto k = load_complex(cfg);
            for (int v : e.witness()) where += (where.empty() ? "" : ",") + k->vertex_names()[static_cast<size_t>(v)];
        } catch (...) {
        }
        std::cerr << "error: cocycle condition fails on the 2-simplex {" << where << "}\n";
        return 3;
    } catch (const io::SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
