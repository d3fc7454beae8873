#include "samplim/forcing.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "samplim/errors.hpp"
#include "samplim/rng.hpp"

namespace samplim {

namespace {
// Stream tag separating sequence draws from every other consumer of mix3.
constexpr std::uint64_t kSequenceStream = 0x73657175656e6365ULL;
}

ValueSequence ValueSequence::constant(Label r) {
    ValueSequence s(Kind::constant);
    s.items_ = {r};
    return s;
}

ValueSequence ValueSequence::periodic(std::vector<Label> cycle) {
    if (cycle.empty()) throw DomainError("sequence: empty period");
    ValueSequence s(Kind::periodic);
    s.items_ = std::move(cycle);
    return s;
}

ValueSequence ValueSequence::explicit_list(std::vector<Label> items) {
    if (items.empty()) throw DomainError("sequence: empty list");
    ValueSequence s(Kind::explicit_list);
    s.items_ = std::move(items);
    return s;
}

ValueSequence ValueSequence::random(std::uint64_t seed, const ValueSpace& vs) {
    ValueSequence s(Kind::random);
    s.seed_ = seed;
    s.common_den_ = vs.sampling_denominator();
    s.cum_num_ = vs.cumulative_numerators();
    if (s.common_den_ == 0) {
        throw DomainError("sequence: value space does not support exact sampling");
    }
    return s;
}

Label ValueSequence::at(std::size_t n) const {
    switch (kind_) {
        case Kind::constant:
            return items_[0];
        case Kind::periodic:
            return items_[n % items_.size()];
        case Kind::explicit_list:
            if (n >= items_.size()) {
                throw DomainError("sequence: index " + std::to_string(n) +
                                  " beyond explicit list of length " +
                                  std::to_string(items_.size()));
            }
            return items_[n];
        case Kind::random: {
            const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % common_den_);
            for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
                const std::uint64_t z = mix3(seed_, kSequenceStream, n | (attempt << 56));
                if (z >= limit) continue;
                const std::uint64_t u = z % common_den_;
                for (Label l = 0; l < cum_num_.size(); ++l) {
                    if (u < cum_num_[l]) return l;
                }
            }
            throw InternalConsistencyError("sequence: sampling rejection budget exhausted");
        }
    }
    throw InternalConsistencyError("sequence: bad kind");
}

std::optional<std::size_t> ValueSequence::length() const {
    if (kind_ == Kind::explicit_list) return items_.size();
    return std::nullopt;
}

std::string ValueSequence::spec_string(const ValueSpace& vs) const {
    auto names = [&](const std::vector<Label>& ls) {
        std::string out;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            if (i) out.push_back(',');
            out += vs.label_name(ls[i]);
        }
        return out;
    };
    switch (kind_) {
        case Kind::constant:
            return "const:" + vs.label_name(items_[0]);
        case Kind::periodic:
            return "periodic:" + names(items_);
        case Kind::explicit_list:
            return "list:" + names(items_);
        case Kind::random:
            return "rand:" + std::to_string(seed_);
    }
    return {};
}

Feature::Feature(Kind kind, std::optional<ValueSequence> h, std::vector<std::uint64_t> ids,
                 std::uint64_t omega, std::uint64_t theta)
    : kind_(kind), h_(std::move(h)), ids_(std::move(ids)), omega_(omega), theta_(theta) {}

Feature Feature::row(ValueSequence h, std::vector<std::uint64_t> thetas) {
    std::set<std::uint64_t> seen(thetas.begin(), thetas.end());
    if (seen.size() != thetas.size()) {
        throw MalformedFeatureError("feature: row index list is not injective");
    }
    if (const auto len = h.length(); len && *len < thetas.size()) {
        throw MalformedFeatureError("feature: explicit pattern shorter than index list");
    }
    return Feature(Kind::row, std::move(h), std::move(thetas), 0, 0);
}

Feature Feature::col(ValueSequence h, std::vector<std::uint64_t> omegas) {
    std::set<std::uint64_t> seen(omegas.begin(), omegas.end());
    if (seen.size() != omegas.size()) {
        throw MalformedFeatureError("feature: column index list is not injective");
    }
    if (const auto len = h.length(); len && *len < omegas.size()) {
        throw MalformedFeatureError("feature: explicit pattern shorter than index list");
    }
    return Feature(Kind::col, std::move(h), std::move(omegas), 0, 0);
}

Feature Feature::point(std::uint64_t omega, std::uint64_t theta) {
    return Feature(Kind::point, std::nullopt, {}, omega, theta);
}

const ValueSequence& Feature::sequence() const {
    if (!h_) throw DomainError("feature: point features carry no pattern");
    return *h_;
}

const std::vector<std::uint64_t>& Feature::ids() const { return ids_; }

std::uint64_t Feature::point_omega() const {
    if (kind_ != Kind::point) throw DomainError("feature: not a point feature");
    return omega_;
}

std::uint64_t Feature::point_theta() const {
    if (kind_ != Kind::point) throw DomainError("feature: not a point feature");
    return theta_;
}

std::string Feature::describe(const ValueSpace& vs) const {
    switch (kind_) {
        case Kind::row:
        case Kind::col: {
            std::string out = kind_ == Kind::row ? "ROW " : "COL ";
            out += h_->spec_string(vs);
            for (const auto id : ids_) out += " " + std::to_string(id);
            return out;
        }
        case Kind::point:
            return "POINT " + std::to_string(omega_) + " " + std::to_string(theta_);
    }
    return {};
}

void ForcingStore::note_omega(std::uint64_t omega) {
    next_omega_ = std::max(next_omega_, omega + 1);
}

void ForcingStore::note_theta(std::uint64_t theta) {
    next_theta_ = std::max(next_theta_, theta + 1);
}

std::optional<Label> ForcingStore::eval(CoordinateId omega, CoordinateId theta) const {
    if (omega.side != Side::omega || theta.side != Side::theta) {
        throw DomainError("forcing: eval expects an omega id and a theta id");
    }
    return eval_raw(omega.index, theta.index);
}

std::optional<Label> ForcingStore::eval_raw(std::uint64_t omega, std::uint64_t theta) const {
    if (const auto it = assign_.find({omega, theta}); it != assign_.end()) return it->second;
    if (const auto rit = row_lines_.find(omega); rit != row_lines_.end()) {
        if (const auto pos = rit->second.index_of.find(theta); pos != rit->second.index_of.end()) {
            return rit->second.h.at(pos->second);
        }
    }
    if (const auto cit = col_lines_.find(theta); cit != col_lines_.end()) {
        if (const auto pos = cit->second.index_of.find(omega); pos != cit->second.index_of.end()) {
            return cit->second.h.at(pos->second);
        }
    }
    return std::nullopt;
}

void ForcingStore::materialize(std::uint64_t omega, std::uint64_t theta, Label value) {
    const auto [it, inserted] = assign_.emplace(std::make_pair(omega, theta), value);
    if (!inserted && it->second != value) {
        throw InternalConsistencyError("forcing: collision at (" + std::to_string(omega) + "," +
                                       std::to_string(theta) + ")");
    }
    omegas_used_.insert(omega);
    thetas_used_.insert(theta);
    note_omega(omega);
    note_theta(theta);
}

ForcingStore::ForceResult ForcingStore::force(const Feature& feat, std::size_t length) {
    const std::size_t stage = journal_.size();
    std::size_t added = 0;
    std::optional<CoordinateId> allocated;

    switch (feat.kind()) {
        case Feature::Kind::row: {
            for (const auto theta : feat.ids()) note_theta(theta);
            const std::uint64_t fresh = next_omega_++;
            // Fresh by the counter invariant; verify anyway.
            if (omegas_used_.contains(fresh)) {
                throw InternalConsistencyError("forcing: fresh omega already in domain");
            }
            const std::size_t m = std::min(length, feat.ids().size());
            for (std::size_t n = 0; n < m; ++n) {
                materialize(fresh, feat.ids()[n], feat.sequence().at(n));
                ++added;
            }
            if (!feat.ids().empty()) {
                GeneratorLine line{feat.sequence(), feat.ids(), {}};
                for (std::size_t n = 0; n < line.ids.size(); ++n) line.index_of[line.ids[n]] = n;
                row_lines_.emplace(fresh, std::move(line));
                omegas_used_.insert(fresh);
                for (const auto theta : feat.ids()) thetas_used_.insert(theta);
            }
            note_omega(fresh);
            allocated = CoordinateId::omega(fresh);
            break;
        }
        case Feature::Kind::col: {
            for (const auto omega : feat.ids()) note_omega(omega);
            const std::uint64_t fresh = next_theta_++;
            if (thetas_used_.contains(fresh)) {
                throw InternalConsistencyError("forcing: fresh theta already in domain");
            }
            const std::size_t m = std::min(length, feat.ids().size());
            for (std::size_t n = 0; n < m; ++n) {
                materialize(feat.ids()[n], fresh, feat.sequence().at(n));
                ++added;
            }
            if (!feat.ids().empty()) {
                GeneratorLine line{feat.sequence(), feat.ids(), {}};
                for (std::size_t n = 0; n < line.ids.size(); ++n) line.index_of[line.ids[n]] = n;
                col_lines_.emplace(fresh, std::move(line));
                thetas_used_.insert(fresh);
                for (const auto omega : feat.ids()) omegas_used_.insert(omega);
            }
            note_theta(fresh);
            allocated = CoordinateId::theta(fresh);
            break;
        }
        case Feature::Kind::point: {
            note_omega(feat.point_omega());
            note_theta(feat.point_theta());
            if (!defined(feat.point_omega(), feat.point_theta())) {
                materialize(feat.point_omega(), feat.point_theta(), default_label_);
                ++added;
            }
            break;
        }
    }

    const bool ok = forces(feat);
    journal_.push_back(StageRecord{stage, feat, added, ok, assign_.size()});
    if (!ok) {
        throw InternalConsistencyError("forcing: stage " + std::to_string(stage) +
                                       " failed to force its feature");
    }
    return ForceResult{stage, allocated, added};
}

bool ForcingStore::forces(const Feature& feat) const {
    switch (feat.kind()) {
        case Feature::Kind::point:
            return defined(feat.point_omega(), feat.point_theta());
        case Feature::Kind::row: {
            if (feat.ids().empty()) return true;  // vacuous pattern
            // Newest candidates first: the allocated witness is typically the
            // most recent row.
            for (auto it = omegas_used_.rbegin(); it != omegas_used_.rend(); ++it) {
                bool match = true;
                for (std::size_t n = 0; n < feat.ids().size() && match; ++n) {
                    match = eval_raw(*it, feat.ids()[n]) == feat.sequence().at(n);
                }
                if (match) return true;
            }
            return false;
        }
        case Feature::Kind::col: {
            if (feat.ids().empty()) return true;
            for (auto it = thetas_used_.rbegin(); it != thetas_used_.rend(); ++it) {
                bool match = true;
                for (std::size_t n = 0; n < feat.ids().size() && match; ++n) {
                    match = eval_raw(feat.ids()[n], *it) == feat.sequence().at(n);
                }
                if (match) return true;
            }
            return false;
        }
    }
    return false;
}

std::vector<std::uint64_t> ForcingStore::level_set_extend(std::uint64_t omega, Label r,
                                                          std::size_t k) {
    std::vector<std::uint64_t> thetas;
    thetas.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto res = force(Feature::col(ValueSequence::constant(r), {omega}), 1);
        thetas.push_back(res.allocated->index);
    }
    return thetas;
}

bool store_subset_of(const ForcingStore& a, const ForcingStore& b) {
    for (const auto& [key, value] : a.assignments()) {
        const auto it = b.assignments().find(key);
        if (it == b.assignments().end() || it->second != value) return false;
    }
    for (const auto& [omega, line] : a.row_lines()) {
        const auto it = b.row_lines().find(omega);
        if (it == b.row_lines().end() || !(it->second == line)) return false;
    }
    for (const auto& [theta, line] : a.col_lines()) {
        const auto it = b.col_lines().find(theta);
        if (it == b.col_lines().end() || !(it->second == line)) return false;
    }
    return a.next_omega() <= b.next_omega() && a.next_theta() <= b.next_theta();
}

ForcingStore run_enumeration(ForcingStore store, std::span<const Feature> feats,
                             std::size_t length) {
    for (std::size_t i = 0; i < feats.size(); ++i) {
        try {
            store.force(feats[i], length);
        } catch (const InternalConsistencyError&) {
            throw;
        } catch (const Error& e) {
            throw Error("stage " + std::to_string(i) + ": " + e.what());
        }
    }
    return store;
}

std::vector<Feature> parse_feature_script(std::istream& in, const ValueSpace& vs) {
    std::vector<Feature> feats;
    std::string line;
    std::size_t line_no = 0;

    auto parse_labels = [&](std::string_view csv) {
        std::vector<Label> out;
        std::size_t pos = 0;
        while (pos <= csv.size()) {
            auto end = csv.find(',', pos);
            if (end == std::string_view::npos) end = csv.size();
            const auto name = csv.substr(pos, end - pos);
            const auto l = vs.find_label(name);
            if (!l) {
                throw UsageError("script line " + std::to_string(line_no) + ": unknown label '" +
                                 std::string(name) + "'");
            }
            out.push_back(*l);
            if (end == csv.size()) break;
            pos = end + 1;
        }
        return out;
    };

    auto parse_sequence = [&](const std::string& spec) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) {
            throw UsageError("script line " + std::to_string(line_no) +
                             ": generator must be kind:args, got '" + spec + "'");
        }
        const auto kind = spec.substr(0, colon);
        const auto args = spec.substr(colon + 1);
        if (kind == "const") {
            const auto ls = parse_labels(args);
            if (ls.size() != 1) {
                throw UsageError("script line " + std::to_string(line_no) +
                                 ": const takes exactly one label");
            }
            return ValueSequence::constant(ls[0]);
        }
        if (kind == "periodic") return ValueSequence::periodic(parse_labels(args));
        if (kind == "list") return ValueSequence::explicit_list(parse_labels(args));
        if (kind == "rand") {
            try {
                return ValueSequence::random(std::stoull(args), vs);
            } catch (const std::exception&) {
                throw UsageError("script line " + std::to_string(line_no) + ": bad seed '" +
                                 args + "'");
            }
        }
        throw UsageError("script line " + std::to_string(line_no) + ": unknown generator kind '" +
                         kind + "'");
    };

    auto parse_id = [&](const std::string& tok) {
        try {
            return std::stoull(tok);
        } catch (const std::exception&) {
            throw UsageError("script line " + std::to_string(line_no) + ": bad id '" + tok + "'");
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        try {
            if (head == "ROW" || head == "COL") {
                std::string spec;
                if (!(ls >> spec)) {
                    throw UsageError("script line " + std::to_string(line_no) +
                                     ": missing generator");
                }
                auto seq = parse_sequence(spec);
                std::vector<std::uint64_t> ids;
                std::string tok;
                while (ls >> tok) ids.push_back(parse_id(tok));
                feats.push_back(head == "ROW" ? Feature::row(std::move(seq), std::move(ids))
                                              : Feature::col(std::move(seq), std::move(ids)));
            } else if (head == "POINT") {
                std::string w, t;
                if (!(ls >> w >> t)) {
                    throw UsageError("script line " + std::to_string(line_no) +
                                     ": POINT takes two ids");
                }
                feats.push_back(Feature::point(parse_id(w), parse_id(t)));
            } else {
                throw UsageError("script line " + std::to_string(line_no) +
                                 ": unknown directive '" + head + "'");
            }
        } catch (const MalformedFeatureError& e) {
            throw UsageError("script line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return feats;
}

}  // namespace samplim
