#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "samplim/event.hpp"
#include "samplim/value_space.hpp"

namespace samplim {

struct EmpiricalDistribution {
    std::vector<std::uint64_t> counts;  // one per label
    std::uint64_t total = 0;
    std::vector<Rational> frequencies;  // exact, sum to 1
};

EmpiricalDistribution empirical_dist(std::span<const Label> sample, const ValueSpace& vs);

// n_rows x n_cols of i.i.d. draws; cell (i,j) is a pure function of
// (seed, i, j), so the matrix regenerates bit-for-bit from its seed and any
// row can be produced independently.
struct SampleMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint64_t seed = 0;
    std::vector<Label> cells;

    Label at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
    static SampleMatrix generate(const ValueSpace& vs, std::size_t rows, std::size_t cols,
                                 std::uint64_t seed);
};

struct GcReport {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    Rational epsilon;
    std::vector<Rational> deviations;  // per label, |freq - weight|
    Rational max_deviation;
    bool pass = false;
    double false_failure_bound = 0.0;  // Hoeffding union bound 2*|R|*exp(-2*n*eps^2)
};

// One sample of size n from one coordinate's stream; passes iff the largest
// per-label deviation from the exact weights stays below epsilon.
GcReport gc_test(const ValueSpace& vs, std::size_t n, std::uint64_t seed, const Rational& eps);

struct HomogeneityMcReport {
    std::size_t subset_size = 0;
    Rational expected;                  // nu(A) * mu(B)
    std::vector<Rational> deviations;   // per row
    std::vector<bool> within;
    Rational fraction_within;
};

// Per row: the fraction of columns in `subset` whose entry lies in B
// (normalized by n_cols) against nu(A)*mu(B). Rows are independent, so the
// scan parallelizes across workers with order-independent aggregation.
HomogeneityMcReport homogeneity_mc(const SampleMatrix& m, const ValueSpace& vs,
                                   std::span<const std::uint32_t> subset, LabelSet b_set,
                                   const Rational& eps, unsigned workers = 1);

struct SplitResult {
    AlgebraEvent sub;      // A with omega* additionally pinned to B
    Rational nu_a;
    Rational mu_b;
    Rational product;      // == nu_a * mu_b, exactly
};

// Nonatomicity split: a sub-event of strictly smaller positive measure,
// obtained by pinning a coordinate outside A's support to B (0 < mu(B) < 1).
SplitResult nonatomic_split(const AlgebraEvent& a, LabelSet b_set, std::uint64_t omega_star,
                            const ValueSpace& vs);

struct FgReport {
    unsigned n = 0;
    bool exhaustive = false;         // every vector visited (n small enough)
    std::uint64_t vectors_checked = 0;
    std::uint64_t satisfying = 0;    // always 0
    unsigned first_obstruction = 0;  // prefix length where every vector dies (always 1)
    std::uint64_t dfs_nodes = 0;     // nodes visited by the pruned search
};

// Exhaustive / pruned search for a {0,1}-vector whose every length-k prefix
// sums to exactly k/2. The satisfying set is empty for every n >= 1: the
// k = 1 prefix already demands the value 1/2.
FgReport fg_impossibility(unsigned n);

}  // namespace samplim
