#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "samplim/verify.hpp"

namespace samplim {

// A product set: a subset of rows times a subset of columns, as bool masks
// sized to a SampleMatrix.
struct Rectangle {
    std::vector<bool> row_mask;
    std::vector<bool> col_mask;
};

// Finitely many rectangles with pairwise disjoint products (two products are
// disjoint iff their row sets or their column sets are).
class RectangleFamily {
  public:
    RectangleFamily(std::vector<Rectangle> rects, std::size_t rows, std::size_t cols);

    const std::vector<Rectangle>& rectangles() const { return rects_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool covers(std::size_t r, std::size_t c) const;

  private:
    std::vector<Rectangle> rects_;
    std::size_t rows_;
    std::size_t cols_;
};

// Density of the symmetric difference between the preimage of A under the
// matrix and the family's union, exact over rows*cols.
Rational rectangle_error(const SampleMatrix& m, LabelSet a_set, const RectangleFamily& fam);

struct RectOracleResult {
    Rational minimum;
    RectangleFamily witness;
    bool exhaustive = false;
};

// Minimizes rectangle_error over all disjoint families of at most max_rects
// rectangles. Exhaustive within the guard (rows, cols <= 4 and
// max_rects <= 2); beyond it, only with allow_heuristic, via a seeded
// random-restart hill climb flagged non-exhaustive.
RectOracleResult min_rectangle_error(const SampleMatrix& m, LabelSet a_set, unsigned max_rects,
                                     bool allow_heuristic = false,
                                     std::uint64_t heuristic_seed = 0);

struct ThmdIdentity {
    Rational a;
    Rational b;           // (a - a^2)/2
    Rational a_minus_2b;
    Rational a_squared;
    bool holds = false;   // a - 2b == a^2, exactly
};

// The quantitative mechanism: with b = (a - a^2)/2, a - 2b equals a^2.
ThmdIdentity thmd_mechanism_check(const Rational& a);

struct OverlapWitness {
    std::uint32_t eta;
    std::uint32_t theta;
    Rational dev_eta;           // density of column-eta section symdiff J
    Rational dev_theta;
    Rational overlap_density;   // density of J ∩ eta-section ∩ theta-section
    Rational threshold;         // a - 2b
    bool exceeds = false;       // overlap > threshold realized on the sample
};

// Looks for two distinct columns with identical family-membership patterns
// whose sections both approximate the same union J within b, and reports the
// realized overlap density against a - 2b (a = mu(A)).
std::optional<OverlapWitness> overlap_check(const SampleMatrix& m, const ValueSpace& vs,
                                            LabelSet a_set, const RectangleFamily& fam,
                                            const Rational& b);

}  // namespace samplim
