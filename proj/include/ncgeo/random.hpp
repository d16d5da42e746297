#pragma once

#include <cstdint>
#include <random>

#include "ncgeo/nc_form.hpp"

namespace ncgeo {

/// Seeded source of exact test data. Uses std::mt19937_64; every coefficient
/// is a + b·i with a, b drawn as (next() mod 7) − 3, so values lie in −3…3.
class TrialRng {
public:
    explicit TrialRng(uint64_t seed) : engine_(seed) {}

    int small_int() { return static_cast<int>(engine_() % 7) - 3; }
    GR coefficient() { return {Rational(small_int()), Rational(small_int())}; }
    /// Index in [0, bound).
    size_t index(size_t bound) { return static_cast<size_t>(engine_() % bound); }
    bool chance(unsigned percent) { return engine_() % 100 < percent; }

    DenseMatrix matrix(int n);
    /// Form of the given degree with roughly density percent of the index
    /// subsets carrying a random matrix (at least one when possible).
    NCForm form(int n, int degree, unsigned density = 40);
    SparseVector vector(size_t dim, unsigned density = 50);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace ncgeo
