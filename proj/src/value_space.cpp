#include "samplim/value_space.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "samplim/errors.hpp"
#include "samplim/rng.hpp"

namespace samplim {

LabelSet LabelSet::full(std::size_t count) {
    if (count == 0) return LabelSet(0);
    if (count >= kMaxLabels) return LabelSet(~std::uint64_t{0});
    return LabelSet((std::uint64_t{1} << count) - 1);
}

std::size_t LabelSet::count() const { return static_cast<std::size_t>(std::popcount(bits_)); }

LabelSet LabelSet::complement_within(std::size_t label_count) const {
    return LabelSet(~bits_ & full(label_count).bits_);
}

Label LabelSet::lowest() const { return static_cast<Label>(std::countr_zero(bits_)); }

std::vector<Label> LabelSet::to_labels() const {
    std::vector<Label> out;
    for (Label l = 0; l < kMaxLabels; ++l) {
        if (contains(l)) out.push_back(l);
    }
    return out;
}

ValueSpace::ValueSpace(std::vector<std::string> labels, std::vector<Rational> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
    if (labels_.size() < 2) throw DomainError("value-space: need at least 2 labels");
    if (labels_.size() > LabelSet::kMaxLabels) {
        throw DomainError("value-space: more than 64 labels not supported");
    }
    if (labels_.size() != weights_.size()) {
        throw DomainError("value-space: label/weight count mismatch");
    }
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) throw DomainError("value-space: empty label");
        if (!seen.insert(l).second) throw DomainError("value-space: duplicate label '" + l + "'");
    }
    Rational sum(0);
    for (const auto& w : weights_) {
        if (w.sign() < 0) throw DomainError("value-space: negative weight " + w.to_string());
        sum += w;
    }
    if (sum != Rational(1)) {
        throw DomainError("value-space: weights sum " + sum.to_string() + " != 1");
    }

    // Precompute the exact sampling table: lcm of denominators (must fit in
    // 63 bits) and cumulative numerators over that common denominator.
    std::uint64_t den = 1;
    bool overflow = false;
    for (const auto& w : weights_) {
        std::uint64_t d;
        try {
            d = w.den().to_uint64();
        } catch (const DomainError&) {
            overflow = true;
            break;
        }
        const std::uint64_t g = std::gcd(den, d);
        const std::uint64_t step = d / g;
        if (den > (std::uint64_t{1} << 62) / step) {
            overflow = true;
            break;
        }
        den *= step;
    }
    if (!overflow) {
        common_den_ = den;
        std::uint64_t acc = 0;
        for (const auto& w : weights_) {
            const std::uint64_t scaled =
                w.num().to_uint64() * (den / w.den().to_uint64());
            acc += scaled;
            cum_num_.push_back(acc);
        }
    }
}

std::optional<Label> ValueSpace::find_label(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == name) return static_cast<Label>(i);
    }
    return std::nullopt;
}

Rational ValueSpace::measure(LabelSet set) const {
    if ((set.bits() & ~full_set().bits()) != 0) {
        throw DomainError("value-space: label set references unknown labels");
    }
    Rational sum(0);
    for (Label l = 0; l < size(); ++l) {
        if (set.contains(l)) sum += weights_[l];
    }
    return sum;
}

bool ValueSpace::is_nondegenerate() const {
    return std::any_of(weights_.begin(), weights_.end(), [](const Rational& w) {
        return w.sign() > 0 && w < Rational(1);
    });
}

LabelSet ValueSpace::parse_label_set(std::string_view csv) const {
    LabelSet out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto end = csv.find(',', pos);
        if (end == std::string_view::npos) end = csv.size();
        const auto name = csv.substr(pos, end - pos);
        const auto l = find_label(name);
        if (!l) throw DomainError("value-space: unknown label '" + std::string(name) + "'");
        out = out.with(*l);
        pos = end + 1;
    }
    return out;
}

std::string ValueSpace::format_label_set(LabelSet set) const {
    std::string out;
    for (Label l = 0; l < size(); ++l) {
        if (set.contains(l)) {
            if (!out.empty()) out.push_back(',');
            out += labels_[l];
        }
    }
    return out;
}

Label ValueSpace::sample(std::uint64_t seed, std::uint64_t stream, std::uint64_t cell) const {
    if (common_den_ == 0) {
        throw DomainError("value-space: weight denominators too large for exact sampling");
    }
    // Counters pack (cell, rejection attempt); rejection triggers with
    // probability < den/2^64 per attempt, so the attempt budget is cosmetic.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % common_den_);
    for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
        const std::uint64_t z = mix3(seed, stream, cell | (attempt << 56));
        if (z >= limit) continue;
        const std::uint64_t u = z % common_den_;
        for (Label l = 0; l < size(); ++l) {
            if (u < cum_num_[l]) return l;
        }
    }
    throw InternalConsistencyError("value-space: sampling rejection budget exhausted");
}

}  // namespace samplim
