#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "samplim/coordinates.hpp"
#include "samplim/value_space.hpp"

namespace samplim {

// A cylinder: finitely many coordinates of one product space constrained to
// nonempty label subsets, all other coordinates free. Constraints equal to
// the full label set are dropped at construction, so the constraint map is
// canonical: two cylinders denote the same set iff their maps are equal.
class CylinderSpec {
  public:
    // The unconstrained cylinder (the whole product space).
    explicit CylinderSpec(Side side) : side_(side) {}

    CylinderSpec(Side side, std::map<std::uint64_t, LabelSet> constraints, const ValueSpace& vs);

    // Convenience constructor from tagged coordinates; all must share a side.
    CylinderSpec(const std::map<CoordinateId, LabelSet>& constraints, const ValueSpace& vs);

    Side side() const { return side_; }
    const std::map<std::uint64_t, LabelSet>& constraints() const { return constraints_; }
    bool unconstrained() const { return constraints_.empty(); }

    // Membership of a concrete point. The point must assign a label to every
    // constrained coordinate; free coordinates never reject.
    bool contains(const std::map<std::uint64_t, Label>& point) const;

    // Product over constrained coordinates of the constraint's weight.
    Rational measure(const ValueSpace& vs) const;

    // Constraint-wise intersection; nullopt when some coordinate's sets are
    // disjoint (the intersection is empty). Sides must match.
    std::optional<CylinderSpec> intersect(const CylinderSpec& other, const ValueSpace& vs) const;

    bool disjoint_with(const CylinderSpec& other) const;

    // Complement as a disjoint cylinder list: piece i keeps constraints
    // 0..i-1 and escapes through the complement of constraint i.
    std::vector<CylinderSpec> complement_pieces(const ValueSpace& vs) const;

    std::set<std::uint64_t> support() const;

    // A concrete point inside this cylinder, assigning the lowest allowed
    // label on every coordinate of `coords` (constrained or not).
    std::map<std::uint64_t, Label> some_point(const std::set<std::uint64_t>& coords) const;

    bool operator==(const CylinderSpec&) const = default;

  private:
    Side side_;
    std::map<std::uint64_t, LabelSet> constraints_;
};

// Renders "cyl 3=a,b 7=c" (bare "cyl" for the unconstrained cylinder).
std::string format_cylinder(const CylinderSpec& cyl, const ValueSpace& vs);

}  // namespace samplim
