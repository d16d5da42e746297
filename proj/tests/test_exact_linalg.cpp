#include "doctest.h"
#include "ncgeo/linalg.hpp"
#include "ncgeo/random.hpp"
#include "oracles.hpp"

using namespace ncgeo;

namespace {

SparseMatrix dense(size_t rows, size_t cols, const std::vector<GR>& values) {
    std::vector<Triplet> t;
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) t.push_back({static_cast<uint32_t>(r), static_cast<uint32_t>(c), values[r * cols + c]});
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

SparseMatrix random_matrix(TrialRng& rng, size_t rows, size_t cols, unsigned density) {
    std::vector<Triplet> t;
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            if (rng.chance(density)) t.push_back({static_cast<uint32_t>(r), static_cast<uint32_t>(c), rng.coefficient()});
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

// Low-rank matrix as a product, so rank deficiency is guaranteed.
SparseMatrix random_low_rank(TrialRng& rng, size_t rows, size_t cols, size_t inner) {
    return random_matrix(rng, rows, inner, 60).multiply(random_matrix(rng, inner, cols, 60));
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical") {
    Rational a(6, -4);
    CHECK(a.to_string() == "-3/2");
    CHECK(Rational(4, 2).is_integer());
    CHECK(Rational::parse("10/-4") == Rational(-5, 2));
    const Rational big = Rational(int64_t{1} << 62) * Rational(int64_t{1} << 62);
    CHECK_FALSE(big.is_small());
    CHECK((big / Rational(int64_t{1} << 62)).is_small());
    CHECK((big - big).is_zero());
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("gaussian rational field operations round-trip") {
    TrialRng rng(11);
    for (int k = 0; k < 300; ++k) {
        const GR a = rng.coefficient() / GR(Rational(rng.small_int() == 0 ? 5 : 7));
        const GR b = rng.coefficient();
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        CHECK(a * GR(1) == a);
    }
    CHECK(GR::i() * GR::i() == GR(-1));
    CHECK(GR(Rational(3), Rational(4)).norm() == Rational(25));
    CHECK((GR(Rational(1), Rational(1)).inverse() == GR(Rational(1, 2), Rational(-1, 2))));
}

TEST_CASE("rank examples") {
    CHECK(rank(SparseMatrix::identity(2)) == 2);
    CHECK(rank(SparseMatrix(3, 4)) == 0);
    const SparseMatrix m = dense(2, 2, {GR(1), GR::i(), GR::i(), GR(-1)});
    CHECK(rank(m) == 1);
    CHECK(rank_sparse(m) == 1);
    CHECK(rank_reference(m) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(SparseMatrix::identity(3)).dim() == 0);
    CHECK(kernel_basis(SparseMatrix(2, 3)).dim() == 3);
    const SparseMatrix m = dense(2, 2, {GR(1), GR::i(), GR::i(), GR(-1)});
    const SubspaceBasis k = kernel_basis(m);
    REQUIRE(k.dim() == 1);
    const SparseVector& v = k.vectors()[0];
    CHECK(v.at(0) + GR::i() * v.at(1) == GR(0));
    CHECK(m.apply(v).empty());
}

TEST_CASE("quotient representatives examples") {
    const auto e1 = SparseVector::unit(0);
    const auto e2 = SparseVector::unit(1);
    const std::vector<SparseVector> both{e1, e2};
    const SubspaceBasis closed = SubspaceBasis::span(3, both);
    CHECK(quotient_representatives(closed, closed).dim() == 0);
    CHECK(quotient_representatives(closed, SubspaceBasis(3)) == closed);
    const std::vector<SparseVector> diag{axpy(e1, GR(1), e2)};
    const SubspaceBasis exact = SubspaceBasis::span(3, diag);
    const SubspaceBasis reps = quotient_representatives(closed, exact);
    REQUIRE(reps.dim() == 1);
    // exact has its pivot at column 0, so the representative pivots at column 1
    CHECK(reps.pivots()[0] == 1);
    CHECK(reps.vectors()[0] == e2);
    const std::vector<SparseVector> outside{SparseVector::unit(2)};
    CHECK_THROWS_AS((void)quotient_representatives(closed, SubspaceBasis::span(3, outside)), NotASubspace);
}

TEST_CASE("rank-nullity and kernel soundness on random matrices") {
    TrialRng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const size_t rows = 1 + rng.index(30);
        const size_t cols = 1 + rng.index(30);
        const SparseMatrix m = trial % 2 ? random_matrix(rng, rows, cols, 30)
                                         : random_low_rank(rng, rows, cols, 1 + rng.index(6));
        const size_t r = rank(m);
        const SubspaceBasis k = kernel_basis(m);
        CHECK(r + k.dim() == cols);
        CHECK(r == oracle::dense_rank(oracle::dense_rows(m)));
        CHECK(image_basis(m).dim() == r);
        for (const auto& v : k.vectors()) CHECK(m.apply(v).empty());
    }
}

TEST_CASE("sparse, reference and parallel ranks agree on larger matrices") {
    TrialRng rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        const size_t rows = 30 + rng.index(40);
        const size_t cols = 35 + rng.index(40);
        const SparseMatrix m = random_low_rank(rng, rows, cols, 10 + rng.index(20));
        const size_t ref = rank_reference(m);
        CHECK(rank_sparse(m, Execution::serial) == ref);
        CHECK(rank_sparse(m, Execution::parallel) == ref);
        CHECK(rank(m) == ref);
        CHECK(rank(m.transpose()) == ref);
    }
}

TEST_CASE("quotient representatives are deterministic and independent") {
    TrialRng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const size_t dim = 12;
        std::vector<SparseVector> gens;
        for (int k = 0; k < 6; ++k) gens.push_back(rng.vector(dim, 40));
        const SubspaceBasis closed = SubspaceBasis::span(dim, gens);
        std::vector<SparseVector> sub;
        for (int k = 0; k < 2; ++k) sub.push_back(axpy(gens[static_cast<size_t>(k)], rng.coefficient(), gens[5]));
        const SubspaceBasis exact = SubspaceBasis::span(dim, sub);
        const SubspaceBasis a = quotient_representatives(closed, exact);
        const SubspaceBasis b = quotient_representatives(closed, exact);
        CHECK(a == b);
        CHECK(a.dim() + exact.dim() == closed.dim());
        std::vector<SparseVector> all(exact.vectors().begin(), exact.vectors().end());
        all.insert(all.end(), a.vectors().begin(), a.vectors().end());
        CHECK(SubspaceBasis::span(dim, all).dim() == closed.dim());
    }
}

TEST_CASE("quotient classes and solve") {
    TrialRng rng(21);
    const SparseMatrix m = random_low_rank(rng, 8, 10, 4);
    const SparseVector x = rng.vector(10, 60);
    const SparseVector b = m.apply(x);
    const auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == b);
    // a vector outside the image has no solution
    const SubspaceBasis img = image_basis(m);
    for (uint32_t k = 0; k < 8; ++k) {
        const auto u = SparseVector::unit(k);
        if (!img.contains(u)) {
            CHECK_FALSE(solve(m, u).has_value());
            break;
        }
    }
    const QuotientSpace q(SubspaceBasis::whole(10), kernel_basis(m));
    CHECK(q.dim() == 4);
    const auto k0 = kernel_basis(m).vectors()[0];
    for (const auto& c : q.class_of(k0)) CHECK(c.is_zero());
}

TEST_CASE("dense matrix determinant and rank") {
    DenseMatrix a(3, 3);
    a(0, 0) = GR(2);
    a(0, 1) = GR::i();
    a(1, 0) = GR::i();
    a(1, 1) = GR(1);
    a(2, 2) = GR(Rational(1, 2));
    // (2·1 − i·i)·1/2 = 3/2
    CHECK(a.determinant() == GR(Rational(3, 2)));
    CHECK(a.rank() == 3);
    a(2, 2) = GR(0);
    CHECK(a.rank() == 2);
    CHECK(a.determinant().is_zero());
}
