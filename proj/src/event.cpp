#include "samplim/event.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "samplim/errors.hpp"

namespace samplim {

namespace {

// Witness point inside the (nonempty) intersection of two cylinders,
// formatted over the union of both supports.
std::string describe_overlap(const CylinderSpec& a, const CylinderSpec& b, const ValueSpace& vs) {
    const auto both = a.intersect(b, vs);
    std::set<std::uint64_t> coords = a.support();
    const auto sb = b.support();
    coords.insert(sb.begin(), sb.end());
    const auto point = both->some_point(coords);
    std::string msg = "{";
    bool first = true;
    for (const auto& [coord, label] : point) {
        if (!first) msg += ", ";
        first = false;
        msg += std::to_string(coord) + "=" + vs.label_name(label);
    }
    msg += "}";
    return msg;
}

void verify_disjoint(const std::vector<CylinderSpec>& pieces, const ValueSpace& vs) {
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].side() != pieces[0].side()) {
            throw DomainError("event: pieces from different spaces");
        }
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            if (!pieces[i].disjoint_with(pieces[j])) {
                throw NotAPartitionError("event: pieces " + std::to_string(i) + " and " +
                                         std::to_string(j) + " overlap at " +
                                         describe_overlap(pieces[i], pieces[j], vs));
            }
        }
    }
}

// P \ b for a disjoint piece list P; results stay pairwise disjoint.
std::vector<CylinderSpec> subtract_cylinder(const std::vector<CylinderSpec>& pieces,
                                            const CylinderSpec& b, const ValueSpace& vs) {
    std::vector<CylinderSpec> out;
    const auto complement = b.complement_pieces(vs);
    for (const auto& p : pieces) {
        if (!p.intersect(b, vs)) {
            out.push_back(p);
            continue;
        }
        for (const auto& c : complement) {
            if (auto piece = p.intersect(c, vs)) out.push_back(std::move(*piece));
        }
    }
    return out;
}

std::vector<CylinderSpec> subtract_event(std::vector<CylinderSpec> pieces, const AlgebraEvent& b,
                                         const ValueSpace& vs) {
    for (const auto& bp : b.pieces()) {
        pieces = subtract_cylinder(pieces, bp, vs);
    }
    return pieces;
}

}  // namespace

AlgebraEvent AlgebraEvent::full(Side side) {
    AlgebraEvent e(side);
    e.pieces_.emplace_back(side);
    return e;
}

AlgebraEvent::AlgebraEvent(Side side, std::vector<CylinderSpec> pieces)
    : side_(side), pieces_(std::move(pieces)) {
    for (const auto& p : pieces_) {
        if (p.side() != side_) throw DomainError("event: piece from the wrong space");
    }
    // Disjointness is part of the representation invariant; the witness check
    // needs a ValueSpace only for formatting, so use the structural test here.
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
            if (!pieces_[i].disjoint_with(pieces_[j])) {
                throw NotAPartitionError("event: pieces " + std::to_string(i) + " and " +
                                         std::to_string(j) + " overlap");
            }
        }
    }
}

Rational AlgebraEvent::measure(const ValueSpace& vs) const {
    Rational sum(0);
    for (const auto& p : pieces_) sum += p.measure(vs);
    return sum;
}

std::set<std::uint64_t> AlgebraEvent::support() const {
    std::set<std::uint64_t> out;
    for (const auto& p : pieces_) {
        const auto s = p.support();
        out.insert(s.begin(), s.end());
    }
    return out;
}

Rational partition_measure(const std::vector<CylinderSpec>& pieces, const ValueSpace& vs) {
    verify_disjoint(pieces, vs);
    Rational sum(0);
    for (const auto& p : pieces) sum += p.measure(vs);
    return sum;
}

Refinement refine(const AlgebraEvent& a, const AlgebraEvent& b, const ValueSpace& vs) {
    if (a.side() != b.side()) throw DomainError("event: cannot refine across spaces");

    std::vector<CylinderSpec> met;
    for (const auto& pa : a.pieces()) {
        for (const auto& pb : b.pieces()) {
            if (auto piece = pa.intersect(pb, vs)) met.push_back(std::move(*piece));
        }
    }
    return Refinement{
        AlgebraEvent(a.side(), subtract_event(a.pieces(), b, vs)),
        AlgebraEvent(a.side(), std::move(met)),
        AlgebraEvent(a.side(), subtract_event(b.pieces(), a, vs)),
    };
}

AlgebraEvent complement(const AlgebraEvent& a, const ValueSpace& vs) {
    return refine(AlgebraEvent::full(a.side()), a, vs).a_minus_b;
}

bool semantically_equal(const AlgebraEvent& a, const AlgebraEvent& b, const ValueSpace& vs) {
    const auto r = refine(a, b, vs);
    return r.a_minus_b.is_empty() && r.b_minus_a.is_empty();
}

bool subset_of(const AlgebraEvent& a, const AlgebraEvent& b, const ValueSpace& vs) {
    return refine(a, b, vs).a_minus_b.is_empty();
}

AlgebraEvent parse_event(std::istream& in, const ValueSpace& vs) {
    std::optional<Side> side;
    std::vector<CylinderSpec> pieces;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "space") {
            std::string name;
            if (!(ls >> name) || (name != "theta" && name != "omega")) {
                throw UsageError("event file line " + std::to_string(line_no) +
                                 ": expected 'space theta' or 'space omega'");
            }
            side = name == "theta" ? Side::theta : Side::omega;
        } else if (head == "cyl") {
            if (!side) {
                throw UsageError("event file line " + std::to_string(line_no) +
                                 ": 'space' must come before 'cyl'");
            }
            std::map<std::uint64_t, LabelSet> constraints;
            std::string item;
            while (ls >> item) {
                const auto eq = item.find('=');
                if (eq == std::string::npos) {
                    throw UsageError("event file line " + std::to_string(line_no) +
                                     ": expected <coord>=<labels>, got '" + item + "'");
                }
                std::uint64_t coord;
                try {
                    coord = std::stoull(item.substr(0, eq));
                } catch (const std::exception&) {
                    throw UsageError("event file line " + std::to_string(line_no) +
                                     ": bad coordinate in '" + item + "'");
                }
                LabelSet set;
                try {
                    set = vs.parse_label_set(item.substr(eq + 1));
                } catch (const DomainError& e) {
                    throw UsageError("event file line " + std::to_string(line_no) + ": " +
                                     e.what());
                }
                if (set.empty()) {
                    throw UsageError("event file line " + std::to_string(line_no) +
                                     ": empty constraint in '" + item + "'");
                }
                if (!constraints.emplace(coord, set).second) {
                    throw UsageError("event file line " + std::to_string(line_no) +
                                     ": coordinate repeated in one cylinder");
                }
            }
            pieces.emplace_back(*side, std::move(constraints), vs);
        } else {
            throw UsageError("event file line " + std::to_string(line_no) +
                             ": unknown directive '" + head + "'");
        }
    }
    if (!side) throw UsageError("event file: missing 'space' line");
    try {
        return AlgebraEvent(*side, std::move(pieces));
    } catch (const NotAPartitionError& e) {
        throw UsageError(std::string("event file: ") + e.what());
    }
}

void print_event(std::ostream& out, const AlgebraEvent& event, const ValueSpace& vs) {
    out << "space " << side_name(event.side()) << "\n";
    for (const auto& p : event.pieces()) {
        out << format_cylinder(p, vs) << "\n";
    }
}

}  // namespace samplim
