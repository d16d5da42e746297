#include "doctest.h"
#include "ncgeo/nc_form.hpp"
#include "ncgeo/random.hpp"
#include "oracles.hpp"

using namespace ncgeo;

namespace {

Mask bit(int k) { return Mask{1} << k; }

DenseMatrix unit2(size_t r, size_t c) { return DenseMatrix::unit(2, r, c); }

}  // namespace

TEST_CASE("wedge examples") {
    TrialRng rng(1);
    const NCForm a = rng.form(2, 2);
    const NCForm one = NCForm::scalar(2, 0);
    CHECK(wedge(one, a) == a);
    CHECK(wedge(a, one) == a);
    const NCForm x = NCForm::basis_form(2, bit(0), unit2(0, 1));
    const NCForm y = NCForm::basis_form(2, bit(1), unit2(1, 0));
    const NCForm xy = wedge(x, y);
    CHECK(xy.components().size() == 1);
    CHECK(xy.component(bit(0) | bit(1)) == unit2(0, 1) * unit2(1, 0));
    // reversed order picks up the shuffle sign and the other matrix product
    CHECK(wedge(y, x).component(bit(0) | bit(1)) == unit2(1, 0) * unit2(0, 1) * GR(-1));
    NCForm odd = NCForm::scalar(2, bit(0), GR(2)) + NCForm::scalar(2, bit(2), GR::i());
    CHECK(wedge(odd, odd).is_zero());
}

TEST_CASE("wedge agrees with the shuffle formula") {
    TrialRng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const int p = static_cast<int>(rng.index(3));
        const int q = static_cast<int>(rng.index(2));
        const NCForm a = rng.form(2, p);
        const NCForm b = rng.form(2, q);
        const NCForm direct = oracle::from_values(2, p + q, [&](const std::vector<int>& t) {
            DenseMatrix acc = oracle::zero(2);
            // all (p, q) shuffles of t
            std::vector<int> choose(t.size(), 0);
            std::fill(choose.begin() + p, choose.end(), 1);
            do {
                std::vector<int> first, second, order;
                for (size_t k = 0; k < t.size(); ++k) (choose[k] ? second : first).push_back(t[k]);
                order = first;
                order.insert(order.end(), second.begin(), second.end());
                acc += oracle::eval_basis(a, first) * oracle::eval_basis(b, second) * GR(oracle::inversion_sign(order));
            } while (std::next_permutation(choose.begin(), choose.end()));
            return acc;
        });
        CHECK(wedge(a, b) == direct);
    }
}

TEST_CASE("d prime examples") {
    CHECK(d_prime(NCForm::scalar(2, 0)).is_zero());
    const NCForm e12 = NCForm::basis_form(2, 0, unit2(0, 1));
    const NCForm d = d_prime(e12);
    CHECK(d.component(bit(2)) == unit2(0, 1) * GR(2));
    CHECK(d == oracle::d_prime_direct(e12));
}

TEST_CASE("d prime matches the Chevalley-Eilenberg formula") {
    TrialRng rng(3);
    for (int n = 2; n <= 3; ++n) {
        const int top = n * n - 1;
        for (int q = 0; q <= top; ++q) {
            const int trials = n == 2 ? 6 : (q >= 3 && q <= 5 ? 1 : 2);
            for (int t = 0; t < trials; ++t) {
                const NCForm w = rng.form(n, q, n == 2 ? 50 : 10);
                CHECK(d_prime(w) == oracle::d_prime_direct(w));
            }
        }
    }
}

TEST_CASE("d prime matrix reproduces d prime and squares to zero") {
    TrialRng rng(4);
    for (int n = 1; n <= 3; ++n) {
        const int top = n * n - 1;
        for (int q = 0; q <= top; ++q) {
            const SparseMatrix dq = d_prime_matrix(n, q);
            const NCForm w = rng.form(n, q);
            CHECK(from_vector(n, q < top ? q + 1 : q, dq.apply(to_vector(w))) == d_prime(w));
            if (q + 1 <= top) CHECK(d_prime_matrix(n, q + 1).multiply(dq).is_zero());
        }
    }
}

TEST_CASE("d prime squares to zero on every basis form for n = 2") {
    for (Mask s = 0; s < 8; ++s)
        for (size_t a = 0; a < 2; ++a)
            for (size_t b = 0; b < 2; ++b) CHECK(d_prime(d_prime(NCForm::basis_form(2, s, unit2(a, b)))).is_zero());
}

TEST_CASE("interior examples") {
    CHECK(interior(0, NCForm::basis_form(2, 0, unit2(0, 1))).is_zero());
    CHECK(interior(0, NCForm::scalar(2, bit(0))) == NCForm::scalar(2, 0));
    CHECK(interior(1, NCForm::scalar(2, bit(0) | bit(1))) == NCForm::scalar(2, bit(0), GR(-1)));
    CHECK_THROWS((void)interior(3, NCForm::scalar(2, 0)));
}

TEST_CASE("Lie derivative: Cartan formula agrees with the direct formula") {
    TrialRng rng(5);
    for (int n = 2; n <= 3; ++n) {
        const int top = n * n - 1;
        for (int q = 0; q <= top; ++q) {
            const NCForm w = rng.form(n, q, n == 2 ? 50 : 10);
            const int k = static_cast<int>(rng.index(static_cast<size_t>(top)));
            CHECK(lie_derivative(k, w) == oracle::lie_derivative_direct(k, w));
            CHECK(lie_action(k, w) == oracle::lie_derivative_direct(k, w));
        }
    }
}

TEST_CASE("theta") {
    const NCForm th = theta(2);
    const SlBasis b(2);
    for (int k = 0; k < 3; ++k) CHECK(th.component(bit(k)) == b[k]);
    CHECK_THROWS_AS((void)theta(1), std::invalid_argument);
    for (int n = 2; n <= 3; ++n) {
        const NCForm t = theta(n);
        CHECK(d_prime(t) == wedge(t, t));
        // both sides on (ad A, ad B) equal [A, B]
        const SlBasis bn(n);
        for (int i = 0; i < bn.dim(); ++i)
            for (int j = i + 1; j < bn.dim(); ++j)
                CHECK(wedge(t, t).component(bit(i) | bit(j)) == bracket(bn[i], bn[j]));
        for (int k = 0; k < n * n - 1; ++k) CHECK(lie_derivative(k, t).is_zero());
        for (const auto& g : extended_test_elements(n)) CHECK(gauge_transform(g, t) == t);
    }
}

TEST_CASE("gauge transform examples") {
    TrialRng rng(6);
    const NCForm w = rng.form(2, 2);
    CHECK(gauge_transform(GroupElement::identity(2), w) == w);
    DenseMatrix m(2, 2);
    m(0, 0) = GR::i();
    m(1, 1) = -GR::i();
    const GroupElement g(m);
    CHECK(gauge_transform(g, NCForm::basis_form(2, 0, unit2(0, 1))) == NCForm::basis_form(2, 0, unit2(0, 1) * GR(-1)));
}

TEST_CASE("gauge transform agrees with evaluation on transported arguments") {
    TrialRng rng(7);
    for (int n = 2; n <= 3; ++n) {
        const SlBasis b(n);
        for (const auto& g : extended_test_elements(n)) {
            const int q = static_cast<int>(1 + rng.index(3));
            const NCForm w = rng.form(n, q, n == 2 ? 60 : 15);
            const NCForm direct = oracle::from_values(n, q, [&](const std::vector<int>& t) {
                std::vector<std::vector<GR>> args;
                for (int k : t) args.push_back(b.coordinates(g.matrix() * b[k] * g.inverse().matrix()));
                return g.inverse().matrix() * oracle::eval(w, args) * g.matrix();
            });
            CHECK(gauge_transform(g, w) == direct);
            CHECK(from_vector(n, q, gauge_matrix(g, q).apply(to_vector(w))) == direct);
        }
    }
}

TEST_CASE("gauge transform composes as a right action and commutes with d prime") {
    TrialRng rng(8);
    for (int n = 2; n <= 3; ++n) {
        const auto group = extended_test_elements(n);
        for (size_t i = 0; i < group.size(); ++i) {
            const int q = static_cast<int>(rng.index(static_cast<size_t>(n * n - 1)));
            const NCForm w = rng.form(n, q, n == 2 ? 60 : 15);
            CHECK(gauge_transform(group[i], d_prime(w)) == d_prime(gauge_transform(group[i], w)));
            const auto& h = group[(i + 1) % group.size()];
            CHECK(gauge_transform(h, gauge_transform(group[i], w)) == gauge_transform(group[i] * h, w));
        }
    }
}

TEST_CASE("nc integral") {
    const Mask top2 = 0b111;
    CHECK(nc_integral_point(NCForm::scalar(2, top2)) == GR(1));
    CHECK(nc_integral_point(NCForm::basis_form(2, top2, unit2(0, 1))).is_zero());
    CHECK(nc_integral_point(NCForm::scalar(2, bit(0))).is_zero());
    for (Mask s : lie_context(2).exterior.of_degree(2))
        for (size_t a = 0; a < 2; ++a)
            for (size_t b = 0; b < 2; ++b) CHECK(nc_integral_point(d_prime(NCForm::basis_form(2, s, unit2(a, b)))).is_zero());
    TrialRng rng(9);
    for (int n = 2; n <= 3; ++n) {
        const NCForm w = rng.form(n, n * n - 1);
        for (const auto& g : extended_test_elements(n)) CHECK(nc_integral_point(gauge_transform(g, w)) == nc_integral_point(w));
    }
}

TEST_CASE("primitive forms") {
    const NCForm c3 = primitive_form(2, 2);
    CHECK(c3 == oracle::primitive_brute(2, 2));
    CHECK(c3.is_scalar());
    CHECK(c3.component(0b111) == DenseMatrix::identity(2) * GR(6));
    CHECK(d_prime(c3).is_zero());
    CHECK(primitive_form(2, 3) == oracle::primitive_brute(2, 3));
    CHECK(primitive_form(3, 3) == oracle::primitive_brute(3, 3));
    CHECK_THROWS((void)primitive_form(1, 2));
    CHECK_THROWS((void)primitive_form(3, 2));
    const auto st = stabilization_check(2, 2);
    CHECK(st.degree_matches);
    CHECK(st.restriction_matches);
    CHECK(st.both_closed);
}

TEST_CASE("invariant subspace") {
    CHECK(invariant_subspace(1).betti == std::vector<size_t>{1});
    CHECK(invariant_subspace(2).betti == std::vector<size_t>{1, 0, 0, 1});
    const auto inv3 = invariant_subspace(3);
    CHECK(inv3.betti == std::vector<size_t>{1, 0, 0, 1, 0, 1, 0, 0, 1});
    for (const auto& deg : inv3.representatives)
        for (const auto& w : deg) {
            CHECK(w.is_scalar());
            for (const auto& g : test_group_elements(3)) CHECK(gauge_transform(g, w) == w);
        }
    CHECK(invariant_poincare_series(3) == std::vector<size_t>{1, 0, 0, 1, 0, 1, 0, 0, 1});
}

TEST_CASE("matrix cohomology") {
    const auto h1 = matrix_cohomology(1);
    CHECK(h1.table.betti == std::vector<size_t>{1});
    const auto h2 = matrix_cohomology(2);
    CHECK(h2.table.betti == std::vector<size_t>{1, 0, 0, 1});
    CHECK(h2.invariants_isomorphic);
    for (size_t q = 0; q < h2.table.representatives.size(); ++q)
        for (const auto& w : h2.table.representatives[q]) CHECK(d_prime(w).is_zero());
    CHECK(matrix_cohomology(2, false).table.betti == h2.table.betti);
}
