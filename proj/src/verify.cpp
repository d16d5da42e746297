#include "ncgeo/verify.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "ncgeo/cech.hpp"
#include "ncgeo/random.hpp"

namespace ncgeo::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string list(const std::vector<size_t>& v) {
    std::ostringstream out;
    out << '[';
    for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << ']';
    return out.str();
}

std::shared_ptr<const SimplicialComplex> shared_complex(const std::string& name) {
    return std::make_shared<const SimplicialComplex>(*bundled_complex(name));
}

// Per-criterion seed so suites and single criteria draw the same trials.
TrialRng rng_for(const Options& opts, int id) { return TrialRng(opts.seed * 1000003ULL + static_cast<uint64_t>(id)); }

SparseVector few_nonzeros(TrialRng& rng, size_t dim, size_t count) {
    std::vector<SparseEntry> raw;
    if (dim == 0) return {};
    for (size_t i = 0; i < count; ++i) {
        GR c = rng.coefficient();
        if (c.is_zero()) c = GR(1);
        raw.push_back({static_cast<uint32_t>(rng.index(dim)), c});
    }
    return SparseVector::from_unsorted(std::move(raw));
}

CechCochain random_cochain(TrialRng& rng, const CechComplex& cx, int p, int q, size_t nonzeros) {
    return cx.from_vector(p, q, few_nonzeros(rng, cx.slot_dim(p, q), nonzeros));
}

TransitionCocycle conjugated(const TransitionCocycle& g) {
    const auto elems = extended_test_elements(g.n());
    std::vector<GroupElement> h;
    for (size_t v = 0; v < g.complex()->vertex_names().size(); ++v) h.push_back(elems[(3 * v + 1) % elems.size()]);
    return conjugate_cocycle(g, h);
}

// The three cocycles every twisted check is run against.
std::vector<std::pair<std::string, TransitionCocycle>> cocycles_for(const std::string& name,
                                                                    const std::shared_ptr<const SimplicialComplex>& k, int n) {
    std::vector<std::pair<std::string, TransitionCocycle>> out;
    out.emplace_back("trivial", trivial_cocycle(k, n));
    out.emplace_back("flat", bundled_flat_cocycle(name, k, n));
    out.emplace_back("conjugated", conjugated(out.back().second));
    return out;
}

class Recorder {
public:
    explicit Recorder(CriterionResult& r) : r_(r) {}

    void check(const std::string& name, const std::function<std::string(bool&)>& body) {
        bool ok = true;
        std::string detail;
        try {
            detail = body(ok);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        r_.checks.push_back({name, ok, detail});
    }

private:
    CriterionResult& r_;
};

const std::vector<std::vector<size_t>>& expected_matrix_betti() {
    static const std::vector<std::vector<size_t>> table{{}, {1}, {1, 0, 0, 1}, {1, 0, 0, 1, 0, 1, 0, 0, 1}};
    return table;
}

void criterion_1(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    const std::vector<std::pair<int, double>> cases{{2, 1.0}, {3, 60.0}};
    for (const auto& [n, budget] : cases) {
        rec.check("matrix-cohomology n=" + std::to_string(n), [&, n = n, budget = budget](bool& ok) {
            const auto t0 = Clock::now();
            const auto h = matrix_cohomology(n, false, opts.exec);
            const double dt = seconds_since(t0);
            ok = h.table.betti == invariant_poincare_series(n) && h.table.betti == expected_matrix_betti()[static_cast<size_t>(n)];
            if (dt >= budget) ok = false;
            return "betti " + list(h.table.betti) + (dt >= budget ? " (over the time budget)" : "");
        });
    }
    if (opts.allow_large)
        rec.check("matrix-cohomology n=4", [&](bool& ok) {
            const auto h = matrix_cohomology(4, false, opts.exec);
            ok = h.table.betti == invariant_poincare_series(4);
            return "betti " + list(h.table.betti);
        });
}

void criterion_2(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    for (int n : {2, 3}) {
        rec.check("invariants n=" + std::to_string(n), [&, n](bool& ok) {
            const auto inv = invariant_subspace(n, opts.exec);
            const auto h = matrix_cohomology(n, true, opts.exec);
            ok = inv.betti == h.table.betti && h.invariants_isomorphic;
            for (const auto& deg : inv.representatives)
                for (const auto& w : deg) ok = ok && d_prime(w).is_zero();
            return "invariant dims " + list(inv.betti) + ", cohomology " + list(h.table.betti);
        });
    }
}

void criterion_3(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    for (const auto& [r, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
        rec.check("primitive c" + std::to_string(2 * r - 1) + " n=" + std::to_string(n), [&, r = r, n = n](bool& ok) {
            const NCForm c = primitive_form(r, n);
            const bool closed = d_prime(c).is_zero();
            const bool exact = solve(d_prime_matrix(n, 2 * r - 2, opts.exec), to_vector(c)).has_value();
            ok = closed && !exact && !c.is_zero();
            return std::string(closed ? "closed" : "not closed") + (exact ? ", exact" : ", nonzero class");
        });
    }
    rec.check("stabilization c3 n=2 to 3", [](bool& ok) {
        const auto st = stabilization_check(2, 2);
        ok = st.degree_matches && st.restriction_matches && st.both_closed;
        return std::string("degree ") + (st.degree_matches ? "matches" : "differs") + ", restriction " +
               (st.restriction_matches ? "matches" : "differs");
    });
}

void criterion_4(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    TrialRng rng = rng_for(opts, 4);
    rec.check("d'^2 = 0 on basis forms", [&](bool& ok) {
        size_t products = 0;
        for (int n = 1; n <= 3; ++n)
            for (int q = 0; q + 1 < n * n - 1; ++q) {
                ok = ok && d_prime_matrix(n, q + 1, opts.exec).multiply(d_prime_matrix(n, q, opts.exec)).is_zero();
                ++products;
            }
        // object level as well for n = 2
        for (Mask s = 0; s < 8; ++s)
            for (size_t a = 0; a < 2; ++a)
                for (size_t b = 0; b < 2; ++b)
                    ok = ok && d_prime(d_prime(NCForm::basis_form(2, s, DenseMatrix::unit(2, a, b)))).is_zero();
        return std::to_string(products) + " matrix products, n <= 3";
    });
    rec.check("Leibniz", [&](bool& ok) {
        size_t trials = 0;
        for (int n : {2, 3}) {
            const int top = n * n - 1;
            for (int t = 0; t < 100; ++t) {
                const int da = static_cast<int>(rng.index(static_cast<size_t>(top)));
                const int db = static_cast<int>(rng.index(static_cast<size_t>(top - da)));
                const NCForm a = rng.form(n, da, n == 2 ? 50 : 15);
                const NCForm b = rng.form(n, db, n == 2 ? 50 : 15);
                const GR sign(da % 2 == 0 ? 1 : -1);
                ok = ok && d_prime(wedge(a, b)) == wedge(d_prime(a), b) + sign * wedge(a, d_prime(b));
                ++trials;
            }
        }
        return std::to_string(trials) + " trials";
    });
    rec.check("Cartan homotopy", [&](bool& ok) {
        size_t trials = 0;
        for (int n : {2, 3}) {
            const int top = n * n - 1;
            for (int q = 0; q <= top; ++q)
                for (int t = 0; t < 100; ++t) {
                    const NCForm w = rng.form(n, q, n == 2 ? 50 : 15);
                    const int k = static_cast<int>(rng.index(static_cast<size_t>(top)));
                    ok = ok && lie_derivative(k, w) == lie_action(k, w);
                    ++trials;
                }
        }
        return std::to_string(trials) + " trials, 100 per degree";
    });
    rec.check("theta identity", [](bool& ok) {
        for (int n : {2, 3}) {
            const NCForm t = theta(n);
            ok = ok && d_prime(t) == wedge(t, t);
        }
        return std::string("n = 2, 3");
    });
}

void criterion_5(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    TrialRng rng = rng_for(opts, 5);
    rec.check("gauge commutes with d'", [&](bool& ok) {
        size_t trials = 0;
        for (int n : {2, 3}) {
            const int top = n * n - 1;
            for (const auto& g : extended_test_elements(n))
                for (int t = 0; t < 100; ++t) {
                    const int q = static_cast<int>(rng.index(static_cast<size_t>(top)));
                    const NCForm w = rng.form(n, q, n == 2 ? 50 : 15);
                    ok = ok && gauge_transform(g, d_prime(w)) == d_prime(gauge_transform(g, w));
                    ++trials;
                }
        }
        return std::to_string(trials) + " trials, 100 per element";
    });
    rec.check("invariant forms are fixed points", [&](bool& ok) {
        size_t forms = 0;
        for (int n : {2, 3}) {
            const auto inv = invariant_subspace(n, opts.exec);
            for (const auto& deg : inv.representatives)
                for (const auto& w : deg) {
                    for (const auto& g : extended_test_elements(n)) ok = ok && gauge_transform(g, w) == w;
                    ++forms;
                }
        }
        return std::to_string(forms) + " invariant representatives";
    });
}

void criterion_6(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    TrialRng rng = rng_for(opts, 6);
    for (const auto& name : bundled_complex_names()) {
        const auto k = shared_complex(name);
        for (const auto& [label, g] : cocycles_for(name, k, 2)) {
            rec.check("delta^2 = D^2 = 0 " + name + " " + label, [&, &g = g](bool& ok) {
                const CechComplex cx(g);
                const auto err = cx.view(opts.exec).validation_error();
                ok = !err.has_value();
                for (int t = 0; t < 10; ++t) {
                    const int p = static_cast<int>(rng.index(static_cast<size_t>(cx.p_max() + 1)));
                    const int q = static_cast<int>(rng.index(static_cast<size_t>(cx.q_max() + 1)));
                    const CechCochain c = random_cochain(rng, cx, p, q, 4);
                    ok = ok && cech_delta(cech_delta(c, cx), cx).is_zero() && total_D(total_D(c, cx), cx).is_zero();
                }
                return err ? *err : std::string("all blocks, 10 cochains");
            });
        }
    }
    rec.check("corrupted cocycle witness", [](bool& ok) {
        const auto k = shared_complex("s2-octahedron");
        auto g = bundled_flat_cocycle("s2-octahedron", k, 2);
        g.set(1, 2, g.value(1, 2) * phase_i(2));
        const auto w = g.violation();
        bool thrown = false;
        try {
            const CechComplex cx(g);
        } catch (const CocycleViolation& e) {
            thrown = e.witness() == w;
        }
        ok = w.has_value() && thrown;
        if (!w) return std::string("no witness");
        const auto& names = k->vertex_names();
        std::string s = "witness {";
        for (size_t i = 0; i < w->size(); ++i) s += (i ? "," : "") + names[static_cast<size_t>((*w)[i])];
        return s + "}";
    });
}

void criterion_7(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    TrialRng rng = rng_for(opts, 7);
    for (const auto& name : bundled_complex_names()) {
        const auto k = shared_complex(name);
        const CechComplex cx(bundled_flat_cocycle(name, k, 2));
        for (int p = 0; p <= 2; ++p) {
            rec.check("mv homotopy " + name + " p=" + std::to_string(p), [&, p](bool& ok) {
                if (p > cx.p_max()) return std::string("vacuous: no ") + std::to_string(p) + "-simplices";
                size_t nonzero = 0;
                std::map<int, SubspaceBasis> closed;  // p = 0 kernels by q
                for (int t = 0; t < 50; ++t) {
                    const int q = static_cast<int>(rng.index(static_cast<size_t>(cx.q_max() + 1)));
                    CechCochain c;
                    if (p == 0) {
                        auto it = closed.find(q);
                        if (it == closed.end()) it = closed.emplace(q, kernel_basis(cx.delta_block(0, q, opts.exec))).first;
                        SparseVector v;
                        const auto& vecs = it->second.vectors();
                        for (int j = 0; j < 3 && !vecs.empty(); ++j) v = axpy(v, rng.coefficient(), vecs[rng.index(vecs.size())]);
                        c = cx.from_vector(0, q, v);
                    } else {
                        c = cech_delta(random_cochain(rng, cx, p - 1, q, 3), cx);
                    }
                    if (!c.is_zero()) ++nonzero;
                    const SullivanCochain eta = mv_homotopy(c, cx);
                    ok = ok && eta.p == p - 1 && sullivan_delta(eta, cx) == embed_cochain(c, cx);
                }
                return "50 closed cochains, " + std::to_string(nonzero) + " nonzero";
            });
        }
    }
}

const std::map<std::string, std::vector<size_t>>& expected_total() {
    static const std::map<std::string, std::vector<size_t>> table{
        {"s1-hexagon", {1, 1, 0, 1, 1}},
        {"s2-octahedron", {1, 0, 1, 1, 0, 1}},
        {"t2-nine", {1, 2, 1, 1, 2, 1}},
    };
    return table;
}

void criterion_8(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    for (const auto& name : bundled_complex_names()) {
        const auto k = shared_complex(name);
        const auto prediction = product_prediction(derham_cohomology(*k, opts.exec), 2);
        for (const auto& [label, g] : cocycles_for(name, k, 2)) {
            rec.check("total " + name + " " + label, [&, &g = g](bool& ok) {
                const auto t0 = Clock::now();
                const auto betti = total_cohomology(CechComplex(g), opts.exec);
                const bool slow = seconds_since(t0) >= 120.0;
                ok = betti == prediction && betti == expected_total().at(name) && !slow;
                return "betti " + list(betti) + ", predicted " + list(prediction) + (slow ? " (over the time budget)" : "");
            });
        }
    }
}

void criterion_9(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    const auto fiber = matrix_cohomology(2, false, opts.exec).table.betti;
    for (const auto& name : bundled_complex_names()) {
        const auto k = shared_complex(name);
        for (const auto& [label, g] : cocycles_for(name, k, 2)) {
            rec.check("degeneration " + name + " " + label, [&, &g = g](bool& ok) {
                const CechComplex cx(g);
                const DoubleComplexView view = cx.view(opts.exec);
                const SpectralPage e1 = page(view, 1, opts.exec);
                for (int p = 0; p <= view.p_max(); ++p)
                    for (int q = 0; q <= view.q_max(); ++q) {
                        const size_t b = q < static_cast<int>(fiber.size()) ? fiber[static_cast<size_t>(q)] : 0;
                        ok = ok && e1.dim(p, q) == k->count(p) * b;
                    }
                const SpectralPage e2 = page(view, 2, opts.exec);
                const DegenerationReport rep = degeneration_check(e2, total_betti(view, opts.exec));
                ok = ok && rep.degenerate;
                std::string detail = "E2 sums " + list(rep.e2_sums) + ", total " + list(rep.total_betti);
                if (rep.first_failure) detail += ", first failure in degree " + std::to_string(*rep.first_failure);
                return detail;
            });
        }
    }
}

void criterion_10(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    TrialRng rng = rng_for(opts, 10);
    rec.check("fiber integral is a chain map", [&](bool& ok) {
        size_t trials = 0;
        for (const auto& name : bundled_complex_names()) {
            const auto k = shared_complex(name);
            const CechComplex cx(bundled_flat_cocycle(name, k, 2));
            const CechComplex scalar(trivial_cocycle(k, 1));
            const int top = cx.fiber_dim();
            const int per = name == "s1-hexagon" ? 34 : 33;
            for (int t = 0; t < per; ++t) {
                const int p = static_cast<int>(rng.index(static_cast<size_t>(cx.p_max() + 1)));
                // degrees where the top exterior part can appear on either side
                const int q = top - 1 + static_cast<int>(rng.index(static_cast<size_t>(cx.p_max() + 2)));
                const CechCochain c = random_cochain(rng, cx, p, q, 6);
                ok = ok && fiber_integrate(total_D(c, cx), cx) == total_D(fiber_integrate(c, cx), scalar);
                ++trials;
            }
        }
        return std::to_string(trials) + " bigraded cochains";
    });
    rec.check("integral of d'-exact top forms vanishes", [&](bool& ok) {
        for (int n : {2, 3}) {
            for (int t = 0; t < 100; ++t) ok = ok && nc_integral_point(d_prime(rng.form(n, n * n - 2, n == 2 ? 50 : 10))).is_zero();
            // and on every basis form for n = 2
            if (n == 2)
                for (Mask s : lie_context(2).exterior.of_degree(2))
                    for (size_t a = 0; a < 2; ++a)
                        for (size_t b = 0; b < 2; ++b)
                            ok = ok && nc_integral_point(d_prime(NCForm::basis_form(2, s, DenseMatrix::unit(2, a, b)))).is_zero();
        }
        return std::string("n = 2, 3");
    });
    rec.check("integral is gauge invariant", [&](bool& ok) {
        size_t trials = 0;
        for (int n : {2, 3})
            for (const auto& g : extended_test_elements(n))
                for (int t = 0; t < 10; ++t) {
                    const NCForm w = rng.form(n, n * n - 1);
                    ok = ok && nc_integral_point(gauge_transform(g, w)) == nc_integral_point(w);
                    ++trials;
                }
        return std::to_string(trials) + " trials";
    });
    for (const auto& name : bundled_complex_names()) {
        rec.check("fiber class integrates to H^0 " + name, [&](bool& ok) {
            const auto k = shared_complex(name);
            const CechComplex cx(bundled_flat_cocycle(name, k, 2));
            const CechComplex scalar(trivial_cocycle(k, 1));
            const CechCochain c3 = constant_primitive_cochain(cx, 2);
            const CechCochain f = fiber_integrate(c3, cx);
            // in total degree 0 nothing is exact, so a nonzero cocycle is a nonzero class
            ok = total_D(c3, cx).is_zero() && total_D(f, scalar).is_zero() && !f.is_zero();
            GR value;
            if (!f.is_zero()) value = f.entries.begin()->second.parts.begin()->second(0, 0);
            return "constant value " + value.to_string();
        });
    }
}

void criterion_11(CriterionResult& res, const Options& opts) {
    Recorder rec(res);
    const std::map<std::string, std::vector<size_t>> derham{
        {"s1-hexagon", {1, 1}}, {"s2-octahedron", {1, 0, 1}}, {"t2-nine", {1, 2, 1}}};
    for (const auto& name : bundled_complex_names()) {
        rec.check("n=1 collapse " + name, [&](bool& ok) {
            const auto k = shared_complex(name);
            const auto h = derham_cohomology(*k, opts.exec);
            const auto total = total_cohomology(CechComplex(trivial_cocycle(k, 1)), opts.exec);
            ok = h == derham.at(name) && total == h;
            return "de Rham " + list(h) + ", total " + list(total);
        });
    }
}

}  // namespace

bool CriterionResult::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

std::string criterion_title(int id) {
    static const char* titles[] = {
        "matrix cohomology",
        "invariants equal cohomology",
        "primitive generators",
        "differential identities",
        "gauge compatibility",
        "twisted Cech structure",
        "Mayer-Vietoris exactness",
        "total cohomology",
        "degeneration at E2",
        "noncommutative integral",
        "collapse checks",
    };
    if (id < 1 || id > criterion_count) throw std::out_of_range("criterion id " + std::to_string(id));
    return titles[id - 1];
}

CriterionResult run_criterion(int id, const Options& opts) {
    using Fn = void (*)(CriterionResult&, const Options&);
    static const Fn table[] = {criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5, criterion_6,
                               criterion_7, criterion_8, criterion_9, criterion_10, criterion_11};
    CriterionResult res;
    res.id = id;
    res.title = criterion_title(id);
    const auto t0 = Clock::now();
    table[id - 1](res, opts);
    res.seconds = seconds_since(t0);
    return res;
}

std::vector<std::string> suite_names() { return {"all", "matrix", "calculus", "cech", "total", "integral", "collapse"}; }

std::vector<int> suite_criteria(std::string_view suite) {
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    if (suite == "matrix") return {1, 2, 3};
    if (suite == "calculus") return {4, 5};
    if (suite == "cech") return {6, 7};
    if (suite == "total") return {8, 9};
    if (suite == "integral") return {10};
    if (suite == "collapse") return {11};
    throw std::invalid_argument("unknown suite \"" + std::string(suite) + "\"");
}

std::vector<CriterionResult> run_suite(std::string_view suite, const Options& opts) {
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite)) out.push_back(run_criterion(id, opts));
    return out;
}

}  // namespace ncgeo::verify
