#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "samplim/value_space.hpp"

namespace samplim {

// Resolved run configuration: the value space, the command, its parameters,
// and the output settings. Reports echo the resolved form verbatim, so a
// rerun with the same config and seed is byte-identical.
struct RunConfig {
    std::vector<std::string> labels;
    std::vector<Rational> weights;
    std::string command;
    std::map<std::string, std::string> params;  // command-specific
    std::uint64_t seed;                         // defaulted from kDefaultSeed
    std::string out_dir = ".";
    std::string format = "text";                // stdout flavor: text | csv
    unsigned workers = 1;

    bool has_value_space() const { return !labels.empty(); }
    ValueSpace value_space() const;  // UsageError when labels/weights absent

    const std::string& param(const std::string& key) const;  // required
    std::optional<std::string> param_opt(const std::string& key) const;
    std::uint64_t param_u64(const std::string& key) const;
    std::uint64_t param_u64_or(const std::string& key, std::uint64_t fallback) const;
    Rational param_rational(const std::string& key) const;

    std::string echo() const;  // deterministic "key = value" listing
};

// Line-oriented "key = value" text; '#' starts a comment. Every key must be
// known for the resolved command; the command comes from the config's
// command key or from `cli_command` (both present must agree).
RunConfig parse_config(std::istream& in, const std::optional<std::string>& cli_command = {});

bool known_command(const std::string& command);
std::vector<std::string> command_names();

}  // namespace samplim
