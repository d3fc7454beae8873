#pragma once

#include <iosfwd>
#include <vector>

#include "samplim/cylinder.hpp"

namespace samplim {

// An element of the cylinder algebra: a finite disjoint union of cylinders
// over one product space. Pairwise disjointness is verified on construction;
// the piece list is otherwise unnormalized, so equality of events is
// semantic (mutual refinement leaves empty differences), not syntactic.
class AlgebraEvent {
  public:
    explicit AlgebraEvent(Side side) : side_(side) {}  // the empty event
    static AlgebraEvent full(Side side);
    AlgebraEvent(Side side, std::vector<CylinderSpec> pieces);

    Side side() const { return side_; }
    const std::vector<CylinderSpec>& pieces() const { return pieces_; }
    bool is_empty() const { return pieces_.empty(); }

    Rational measure(const ValueSpace& vs) const;
    std::set<std::uint64_t> support() const;

  private:
    Side side_;
    std::vector<CylinderSpec> pieces_;
};

// Sum of cylinder measures after verifying pairwise disjointness; overlap
// raises NotAPartitionError carrying a witness point in the overlap.
Rational partition_measure(const std::vector<CylinderSpec>& pieces, const ValueSpace& vs);

// The common refinement {A\B, A∩B, B\A} of two events over the same space.
// Measures are exact and additive: k(A) = k(A\B) + k(A∩B).
struct Refinement {
    AlgebraEvent a_minus_b;
    AlgebraEvent a_and_b;
    AlgebraEvent b_minus_a;
};
Refinement refine(const AlgebraEvent& a, const AlgebraEvent& b, const ValueSpace& vs);

AlgebraEvent complement(const AlgebraEvent& a, const ValueSpace& vs);

bool semantically_equal(const AlgebraEvent& a, const AlgebraEvent& b, const ValueSpace& vs);
bool subset_of(const AlgebraEvent& a, const AlgebraEvent& b, const ValueSpace& vs);

// Line-oriented text form:
//   space theta
//   cyl 3=a,b 7=c
//   cyl 9=a
// A bare "cyl" line is the unconstrained cylinder. '#' starts a comment.
AlgebraEvent parse_event(std::istream& in, const ValueSpace& vs);
void print_event(std::ostream& out, const AlgebraEvent& event, const ValueSpace& vs);

}  // namespace samplim
