#include "doctest.h"
#include "ncgeo/random.hpp"
#include "ncgeo/simplicial.hpp"
#include "ncgeo/sullivan.hpp"
#include "oracles.hpp"

using namespace ncgeo;

namespace {

std::shared_ptr<const SimplicialComplex> shared(SimplicialComplex k) {
    return std::make_shared<const SimplicialComplex>(std::move(k));
}

WhitneyForm random_whitney(TrialRng& rng, const std::shared_ptr<const SimplicialComplex>& k, int p) {
    return {k, p, rng.vector(k->count(p), 60)};
}

// Betti numbers from boundary matrices assembled here, independent of the
// library's coboundary.
std::vector<size_t> betti_oracle(const SimplicialComplex& k) {
    std::vector<size_t> ranks;
    for (int p = 1; p <= k.dimension(); ++p) {
        std::vector<std::vector<GR>> rows(k.count(p - 1), std::vector<GR>(k.count(p)));
        const auto tops = k.simplices(p);
        for (size_t c = 0; c < tops.size(); ++c)
            for (size_t i = 0; i < tops[c].size(); ++i) {
                Simplex f = tops[c];
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                rows[*k.index_of(f)][c] = GR(i % 2 ? -1 : 1);
            }
        ranks.push_back(oracle::dense_rank(rows));
    }
    std::vector<size_t> out;
    for (int p = 0; p <= k.dimension(); ++p) {
        const auto up = static_cast<size_t>(p);
        const size_t in = up < ranks.size() ? ranks[up] : 0;  // boundary from p+1
        const size_t outgoing = p > 0 ? ranks[up - 1] : 0;
        out.push_back(k.count(p) - in - outgoing);
    }
    return out;
}

}  // namespace

TEST_CASE("bundled complexes have the expected shape") {
    const auto hex = hexagon_circle();
    CHECK(hex.count(0) == 6);
    CHECK(hex.count(1) == 6);
    const auto oct = octahedron_sphere();
    CHECK(oct.count(0) == 6);
    CHECK(oct.count(1) == 12);
    CHECK(oct.count(2) == 8);
    const auto tor = nine_vertex_torus();
    CHECK(tor.count(0) == 9);
    CHECK(tor.count(1) == 27);
    CHECK(tor.count(2) == 18);
    CHECK_FALSE(bundled_complex("klein").has_value());
}

TEST_CASE("face closure on construction") {
    const auto k = SimplicialComplex::from_simplices({"a", "b", "c"}, {{2, 0, 1}});
    CHECK(k.count(0) == 3);
    CHECK(k.count(1) == 3);
    CHECK(k.count(2) == 1);
    CHECK(k.contains({0, 2}));
    CHECK_THROWS(SimplicialComplex::from_simplices({"a", "b"}, {{0, 0}}));
    CHECK_THROWS(SimplicialComplex::from_simplices({"a", "b"}, {{0, 2}}));
    CHECK_THROWS(SimplicialComplex::from_simplices({"a", "a"}, {{0, 1}}));
}

TEST_CASE("star examples") {
    const auto tri = SimplicialComplex::from_simplices({"a", "b", "c"}, {{0, 1, 2}});
    CHECK(star(tri, {0}) == tri);
    const auto hex = hexagon_circle();
    const auto st = star(hex, {1, 2});
    CHECK(st.total_count() == 3);
    CHECK(st.contains({1, 2}));
    CHECK(st.contains({1}));
    CHECK(st.contains({2}));
    CHECK(st.is_subcomplex_of(hex));
    CHECK_THROWS_AS((void)star(hex, {0, 2}), NotInComplex);
}

TEST_CASE("stars of every simplex are acyclic") {
    for (const auto& name : bundled_complex_names()) {
        const auto k = *bundled_complex(name);
        for (int p = 0; p <= k.dimension(); ++p)
            for (const auto& s : k.simplices(p)) {
                auto b = derham_cohomology(star(k, s));
                REQUIRE(!b.empty());
                CHECK(b[0] == 1);
                for (size_t i = 1; i < b.size(); ++i) CHECK(b[i] == 0);
            }
    }
}

TEST_CASE("whitney d examples") {
    const auto hex = shared(hexagon_circle());
    const WhitneyForm v0{hex, 0, SparseVector::unit(0)};
    const WhitneyForm dv = whitney_d(v0);
    // edges (0,1) and (0,5) touch v0; it is the first vertex of both
    CHECK(dv.coefficients.nnz() == 2);
    CHECK(dv.coefficients.at(*hex->index_of({0, 1})) == GR(-1));
    CHECK(dv.coefficients.at(*hex->index_of({0, 5})) == GR(-1));
    const WhitneyForm v1{hex, 0, SparseVector::unit(1)};
    CHECK(whitney_d(v1).coefficients.at(*hex->index_of({0, 1})) == GR(1));
    CHECK(whitney_d(v1).coefficients.at(*hex->index_of({1, 2})) == GR(-1));
    std::vector<GR> ones(6, GR(1));
    CHECK(whitney_d({hex, 0, to_sparse(ones)}).coefficients.empty());
    TrialRng rng(1);
    const auto oct = shared(octahedron_sphere());
    for (int t = 0; t < 20; ++t) CHECK(whitney_d(whitney_d(random_whitney(rng, oct, 0))).coefficients.empty());
}

TEST_CASE("de Rham cohomology of bundled complexes") {
    CHECK(derham_cohomology(hexagon_circle()) == std::vector<size_t>{1, 1});
    CHECK(derham_cohomology(octahedron_sphere()) == std::vector<size_t>{1, 0, 1});
    CHECK(derham_cohomology(nine_vertex_torus()) == std::vector<size_t>{1, 2, 1});
    for (const auto& name : bundled_complex_names()) {
        const auto k = *bundled_complex(name);
        CHECK(derham_cohomology(k) == betti_oracle(k));
    }
}

TEST_CASE("relabeling preserves cohomology") {
    const auto tor = nine_vertex_torus();
    std::vector<int> perm{4, 7, 1, 0, 8, 2, 6, 3, 5};
    const auto r = relabel(tor, perm);
    CHECK(r.count(2) == 18);
    CHECK(derham_cohomology(r) == derham_cohomology(tor));
    CHECK(r.vertex_names()[4] == tor.vertex_names()[0]);
}

TEST_CASE("polynomial forms: d squares to zero, Leibniz") {
    const int vars = 2;
    const PolyForm l0 = PolyForm::lambda(vars, 0);
    const PolyForm l1 = PolyForm::lambda(vars, 1);
    const PolyForm l2 = PolyForm::lambda(vars, 2);
    CHECK((l0 + l1 + l2) == PolyForm::constant(vars, GR(1)));
    CHECK(PolyForm::constant(vars, GR(5)).d().is_zero());
    const PolyForm prod = wedge(l1, l2);
    CHECK(prod.d() == wedge(l1, l2.d()) + wedge(l2, l1.d()));
    const PolyForm cube = wedge(wedge(l0, l0), l1);
    CHECK(cube.d().d().is_zero());
    CHECK(wedge(l0.d(), l1.d()).d().is_zero());
}

TEST_CASE("Whitney embedding is compatible and intertwines d") {
    TrialRng rng(2);
    for (const auto& name : bundled_complex_names()) {
        const auto k = shared(*bundled_complex(name));
        for (int p = 0; p < k->dimension(); ++p) {
            const WhitneyForm w = random_whitney(rng, k, p);
            const SullivanForm s = SullivanForm::from_whitney(w);
            CHECK(s.is_valid());
            CHECK(sullivan_d(s) == SullivanForm::from_whitney(whitney_d(w)));
            CHECK(sullivan_d(sullivan_d(s)).is_zero());
            CHECK(sullivan_restrict(s, k) == s);
        }
    }
}

TEST_CASE("barycentric multiplication") {
    TrialRng rng(3);
    const auto k = shared(octahedron_sphere());
    const WhitneyForm w = random_whitney(rng, k, 1);
    const SullivanForm s = SullivanForm::from_whitney(w);
    SullivanForm total(k, 1, 2);
    for (int a = 0; a < 6; ++a) {
        const SullivanForm m = barycentric_multiply(a, s);
        CHECK(m.is_valid());
        CHECK(m.cap() == 2);
        total += m;
    }
    CHECK(total == s);

    // a vertex outside the domain gives zero
    const auto st = shared(star(*k, {0, 1, 2}));
    const SullivanForm local = sullivan_restrict(s, st);
    CHECK(barycentric_multiply(5, local).is_zero());

    // pointwise check against linear interpolation
    const WhitneyForm f = random_whitney(rng, k, 0);
    const SullivanForm sf = SullivanForm::from_whitney(f);
    const SullivanForm prod = barycentric_multiply(2, sf);
    for (const auto& tri : k->simplices(2)) {
        const std::vector<std::vector<GR>> points{
            {GR(Rational(1, 3)), GR(Rational(1, 3)), GR(Rational(1, 3))},
            {GR(Rational(1, 2)), GR(Rational(1, 4)), GR(Rational(1, 4))},
            {GR(Rational(1, 5)), GR(Rational(3, 5)), GR(Rational(1, 5))}};
        for (const auto& pt : points) {
            GR interp;
            GR lam2;
            for (size_t i = 0; i < 3; ++i) {
                interp += f.coefficients.at(static_cast<uint32_t>(tri[i])) * pt[i];
                if (tri[i] == 2) lam2 = pt[i];
            }
            CHECK(evaluate_at(prod, tri, pt) == lam2 * interp);
        }
    }
}

TEST_CASE("zero extension of a product from a star") {
    TrialRng rng(4);
    const auto k = shared(nine_vertex_torus());
    const auto big = shared(star(*k, {0}));
    const auto small = shared(star(*k, {0, 1}));
    const WhitneyForm w = random_whitney(rng, small, 1);
    const SullivanForm s = SullivanForm::from_whitney(w);
    const SullivanForm ext = barycentric_multiply(1, s, big);
    CHECK(ext.is_valid());
    CHECK(sullivan_restrict(ext, small) == barycentric_multiply(1, s));
    // vertex 0 lies in simplices of big outside small
    CHECK_THROWS_AS((void)barycentric_multiply(0, s, big), NotInComplex);
}
