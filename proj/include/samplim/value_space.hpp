#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "samplim/rational.hpp"

namespace samplim {

using Label = std::uint32_t;  // index into a ValueSpace's label list

// Canonical subset of a ValueSpace's labels, stored as a bitmask. Equality
// and disjointness are O(1); order of insertion never matters.
class LabelSet {
  public:
    static constexpr std::size_t kMaxLabels = 64;

    LabelSet() = default;
    static LabelSet single(Label l) { return LabelSet(std::uint64_t{1} << l); }
    static LabelSet full(std::size_t count);
    static LabelSet from_bits(std::uint64_t bits) { return LabelSet(bits); }

    bool empty() const { return bits_ == 0; }
    bool contains(Label l) const { return l < kMaxLabels && ((bits_ >> l) & 1u); }
    std::size_t count() const;
    bool is_full(std::size_t label_count) const { return *this == full(label_count); }
    std::uint64_t bits() const { return bits_; }

    LabelSet with(Label l) const { return LabelSet(bits_ | (std::uint64_t{1} << l)); }
    LabelSet complement_within(std::size_t label_count) const;
    Label lowest() const;  // smallest member; set must be nonempty
    std::vector<Label> to_labels() const;

    friend LabelSet operator&(LabelSet a, LabelSet b) { return LabelSet(a.bits_ & b.bits_); }
    friend LabelSet operator|(LabelSet a, LabelSet b) { return LabelSet(a.bits_ | b.bits_); }
    bool operator==(const LabelSet&) const = default;

  private:
    explicit LabelSet(std::uint64_t bits) : bits_(bits) {}
    std::uint64_t bits_ = 0;
};

// The value distribution R = (labels, exact weights). Weights are exact
// rationals, each >= 0, summing exactly to 1. Construction enforces the
// structural invariants; degenerate (point-mass) spaces are representable
// and flagged through is_nondegenerate(), since several operations need the
// hypothesis that some weight lies strictly in (0,1) while the statistical
// tests deliberately exercise the point-mass case.
class ValueSpace {
  public:
    ValueSpace(std::vector<std::string> labels, std::vector<Rational> weights);

    std::size_t size() const { return labels_.size(); }
    const std::string& label_name(Label l) const { return labels_.at(l); }
    std::optional<Label> find_label(std::string_view name) const;
    const Rational& weight(Label l) const { return weights_.at(l); }

    // Sum of the weights of a subset; rejects masks with bits outside [0,size).
    Rational measure(LabelSet set) const;

    bool is_nondegenerate() const;  // some weight strictly in (0,1)
    LabelSet full_set() const { return LabelSet::full(size()); }

    // Parses "a,b,c" against the label list; empty string means the empty set.
    LabelSet parse_label_set(std::string_view csv) const;
    std::string format_label_set(LabelSet set) const;

    // Exact i.i.d. draw: the value is a pure function of (seed, stream, cell)
    // and is distributed exactly as the weights (common-denominator inverse
    // CDF over an unbiased uniform integer).
    Label sample(std::uint64_t seed, std::uint64_t stream, std::uint64_t cell) const;

    std::uint64_t sampling_denominator() const { return common_den_; }
    const std::vector<std::uint64_t>& cumulative_numerators() const { return cum_num_; }

    bool operator==(const ValueSpace& o) const {
        return labels_ == o.labels_ && weights_ == o.weights_;
    }

  private:
    std::vector<std::string> labels_;
    std::vector<Rational> weights_;
    std::uint64_t common_den_ = 0;          // lcm of weight denominators
    std::vector<std::uint64_t> cum_num_;    // cumulative weight numerators over common_den_
};

}  // namespace samplim
