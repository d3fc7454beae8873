#include "samplim/cylinder.hpp"

#include "samplim/errors.hpp"

namespace samplim {

CylinderSpec::CylinderSpec(Side side, std::map<std::uint64_t, LabelSet> constraints,
                           const ValueSpace& vs)
    : side_(side) {
    for (auto& [coord, set] : constraints) {
        if (set.empty()) {
            throw DomainError("cylinder: empty constraint set at coordinate " +
                              std::to_string(coord));
        }
        if ((set.bits() & ~vs.full_set().bits()) != 0) {
            throw DomainError("cylinder: constraint references unknown labels at coordinate " +
                              std::to_string(coord));
        }
        if (!set.is_full(vs.size())) constraints_.emplace(coord, set);
    }
}

CylinderSpec::CylinderSpec(const std::map<CoordinateId, LabelSet>& constraints,
                           const ValueSpace& vs)
    : side_(Side::theta) {
    std::map<std::uint64_t, LabelSet> raw;
    bool first = true;
    for (const auto& [id, set] : constraints) {
        if (first) {
            side_ = id.side;
            first = false;
        } else if (id.side != side_) {
            throw DomainError("cylinder: constraints mix theta and omega coordinates");
        }
        raw.emplace(id.index, set);
    }
    *this = CylinderSpec(side_, std::move(raw), vs);
}

bool CylinderSpec::contains(const std::map<std::uint64_t, Label>& point) const {
    for (const auto& [coord, set] : constraints_) {
        const auto it = point.find(coord);
        if (it == point.end()) {
            throw UnderspecifiedPointError("cylinder: point does not assign coordinate " +
                                           std::to_string(coord));
        }
        if (!set.contains(it->second)) return false;
    }
    return true;
}

Rational CylinderSpec::measure(const ValueSpace& vs) const {
    Rational product(1);
    for (const auto& [coord, set] : constraints_) {
        (void)coord;
        product *= vs.measure(set);
    }
    return product;
}

std::optional<CylinderSpec> CylinderSpec::intersect(const CylinderSpec& other,
                                                    const ValueSpace& vs) const {
    if (side_ != other.side_) {
        throw DomainError("cylinder: cannot intersect across spaces");
    }
    std::map<std::uint64_t, LabelSet> merged = constraints_;
    for (const auto& [coord, set] : other.constraints_) {
        auto [it, inserted] = merged.emplace(coord, set);
        if (!inserted) {
            const LabelSet both = it->second & set;
            if (both.empty()) return std::nullopt;
            it->second = both;
        }
    }
    return CylinderSpec(side_, std::move(merged), vs);
}

bool CylinderSpec::disjoint_with(const CylinderSpec& other) const {
    // Disjoint iff some coordinate is constrained on both sides to disjoint
    // sets; a coordinate free on either side never separates.
    for (const auto& [coord, set] : constraints_) {
        const auto it = other.constraints_.find(coord);
        if (it != other.constraints_.end() && (set & it->second).empty()) return true;
    }
    return false;
}

std::vector<CylinderSpec> CylinderSpec::complement_pieces(const ValueSpace& vs) const {
    std::vector<CylinderSpec> pieces;
    std::map<std::uint64_t, LabelSet> prefix;
    for (const auto& [coord, set] : constraints_) {
        // Points agreeing with the constraints before `coord` and escaping at
        // `coord`; these pieces are disjoint by the first-escape coordinate.
        std::map<std::uint64_t, LabelSet> piece = prefix;
        piece[coord] = set.complement_within(vs.size());
        pieces.emplace_back(side_, std::move(piece), vs);
        prefix.emplace(coord, set);
    }
    return pieces;  // empty for the full space: its complement is empty
}

std::set<std::uint64_t> CylinderSpec::support() const {
    std::set<std::uint64_t> out;
    for (const auto& [coord, set] : constraints_) {
        (void)set;
        out.insert(coord);
    }
    return out;
}

std::map<std::uint64_t, Label> CylinderSpec::some_point(
    const std::set<std::uint64_t>& coords) const {
    std::map<std::uint64_t, Label> point;
    for (const auto coord : coords) {
        const auto it = constraints_.find(coord);
        point[coord] = it == constraints_.end() ? Label{0} : it->second.lowest();
    }
    for (const auto& [coord, set] : constraints_) {
        point.emplace(coord, set.lowest());
    }
    return point;
}

std::string format_cylinder(const CylinderSpec& cyl, const ValueSpace& vs) {
    std::string out = "cyl";
    for (const auto& [coord, set] : cyl.constraints()) {
        out += " " + std::to_string(coord) + "=" + vs.format_label_set(set);
    }
    return out;
}

}  // namespace samplim
