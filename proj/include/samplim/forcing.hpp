#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "samplim/coordinates.hpp"
#include "samplim/value_space.hpp"

namespace samplim {

// A value pattern h: N -> labels. Explicit lists are finite; the generator
// kinds (constant, periodic, seeded pseudorandom) are total, so a forced row
// or column can be evaluated at any index ever asked for.
class ValueSequence {
  public:
    enum class Kind { constant, periodic, explicit_list, random };

    static ValueSequence constant(Label r);
    static ValueSequence periodic(std::vector<Label> cycle);
    static ValueSequence explicit_list(std::vector<Label> items);
    static ValueSequence random(std::uint64_t seed, const ValueSpace& vs);

    Kind kind() const { return kind_; }
    Label at(std::size_t n) const;  // explicit lists reject n >= length
    std::optional<std::size_t> length() const;

    std::string spec_string(const ValueSpace& vs) const;  // "const:a", "rand:42", ...

    bool operator==(const ValueSequence&) const = default;

  private:
    ValueSequence(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::vector<Label> items_;               // constant: {r}; periodic/explicit: the list
    std::uint64_t seed_ = 0;                 // random only
    std::uint64_t common_den_ = 0;           // random only: captured sampling table
    std::vector<std::uint64_t> cum_num_;
};

// One demand on the function under construction: a row pattern (h over
// theta ids), a column pattern (h over omega ids), or a point of definition.
class Feature {
  public:
    enum class Kind { row, col, point };

    static Feature row(ValueSequence h, std::vector<std::uint64_t> thetas);
    static Feature col(ValueSequence h, std::vector<std::uint64_t> omegas);
    static Feature point(std::uint64_t omega, std::uint64_t theta);

    Kind kind() const { return kind_; }
    const ValueSequence& sequence() const;
    const std::vector<std::uint64_t>& ids() const;  // thetas for row, omegas for col
    std::uint64_t point_omega() const;
    std::uint64_t point_theta() const;

    std::string describe(const ValueSpace& vs) const;  // script syntax

    bool operator==(const Feature&) const = default;

  private:
    Feature(Kind kind, std::optional<ValueSequence> h, std::vector<std::uint64_t> ids,
            std::uint64_t omega, std::uint64_t theta);

    Kind kind_;
    std::optional<ValueSequence> h_;
    std::vector<std::uint64_t> ids_;
    std::uint64_t omega_ = 0;
    std::uint64_t theta_ = 0;
};

struct StageRecord {
    std::size_t stage;
    Feature feature;
    std::size_t new_assignments;
    bool forces_ok;
    std::size_t store_size;  // materialized assignments after the stage
};

// The partial function p under construction, with its stage journal. Forcing
// a row/column records the generator, so the whole index list of the feature
// belongs to the (semantic) domain from that stage on; eval answers those
// pairs by evaluating h on demand and never mutates. Single-writer: force and
// level_set_extend are the only mutators; copies serve as immutable
// snapshots.
class ForcingStore {
  public:
    explicit ForcingStore(Label default_label = 0) : default_label_(default_label) {}

    Label default_label() const { return default_label_; }

    std::optional<Label> eval(CoordinateId omega, CoordinateId theta) const;
    std::optional<Label> eval_raw(std::uint64_t omega, std::uint64_t theta) const;
    bool defined(std::uint64_t omega, std::uint64_t theta) const {
        return eval_raw(omega, theta).has_value();
    }

    struct ForceResult {
        std::size_t stage;
        std::optional<CoordinateId> allocated;  // the fresh id, for row/col features
        std::size_t new_assignments;
    };

    // Row: allocate a fresh omega* and assign (omega*, f(n)) = h(n) for
    // n < min(L, |f|), remembering the generator. Col: dual. Point: no-op if
    // already defined, else assign the default label.
    ForceResult force(const Feature& feat, std::size_t length);

    // Direct scan for the forces-predicate: some row (column) realizes the
    // pattern; a point feature is forced when it is defined.
    bool forces(const Feature& feat) const;

    // k fresh theta ids, each assigned r at row omega (column features with
    // the constant pattern r).
    std::vector<std::uint64_t> level_set_extend(std::uint64_t omega, Label r, std::size_t k);

    const std::vector<StageRecord>& journal() const { return journal_; }
    std::size_t materialized_count() const { return assign_.size(); }

    bool in_row_domain(std::uint64_t omega) const { return omegas_used_.contains(omega); }
    bool in_col_domain(std::uint64_t theta) const { return thetas_used_.contains(theta); }
    std::uint64_t next_omega() const { return next_omega_; }
    std::uint64_t next_theta() const { return next_theta_; }

    struct GeneratorLine {
        ValueSequence h;
        std::vector<std::uint64_t> ids;
        std::map<std::uint64_t, std::size_t> index_of;
        bool operator==(const GeneratorLine& o) const { return h == o.h && ids == o.ids; }
    };

    const std::map<std::pair<std::uint64_t, std::uint64_t>, Label>& assignments() const {
        return assign_;
    }
    const std::map<std::uint64_t, GeneratorLine>& row_lines() const { return row_lines_; }
    const std::map<std::uint64_t, GeneratorLine>& col_lines() const { return col_lines_; }

    bool operator==(const ForcingStore& o) const {
        return default_label_ == o.default_label_ && assign_ == o.assign_ &&
               row_lines_ == o.row_lines_ && col_lines_ == o.col_lines_ &&
               next_omega_ == o.next_omega_ && next_theta_ == o.next_theta_;
    }

  private:
    void note_omega(std::uint64_t omega);
    void note_theta(std::uint64_t theta);
    void materialize(std::uint64_t omega, std::uint64_t theta, Label value);

    Label default_label_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Label> assign_;
    std::map<std::uint64_t, GeneratorLine> row_lines_;  // omega -> its forced pattern
    std::map<std::uint64_t, GeneratorLine> col_lines_;  // theta -> its forced pattern
    std::set<std::uint64_t> omegas_used_;               // semantic row domain
    std::set<std::uint64_t> thetas_used_;               // semantic column domain
    std::uint64_t next_omega_ = 0;  // strictly above every omega ever mentioned
    std::uint64_t next_theta_ = 0;
    std::vector<StageRecord> journal_;
};

// Every assignment, line and counter of `a` is present in `b`.
bool store_subset_of(const ForcingStore& a, const ForcingStore& b);

// Applies the features in order; deterministic, so a re-run from the same
// initial store and stream reproduces the final store exactly. Errors carry
// the failing stage index.
ForcingStore run_enumeration(ForcingStore store, std::span<const Feature> feats,
                             std::size_t length);

// Feature scripts, one feature per line:
//   ROW <gen-spec> <theta-ids...>
//   COL <gen-spec> <omega-ids...>
//   POINT <omega> <theta>
// where <gen-spec> is const:<label> | periodic:<l,...> | list:<l,...> |
// rand:<seed>. '#' starts a comment.
std::vector<Feature> parse_feature_script(std::istream& in, const ValueSpace& vs);

}  // namespace samplim
