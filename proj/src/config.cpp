#include "samplim/config.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

#include "samplim/errors.hpp"
#include "samplim/version.hpp"

namespace samplim {

namespace {

struct CommandSpec {
    const char* name;
    bool needs_value_space;
    std::set<std::string> keys;  // allowed command-specific keys
};

const std::vector<CommandSpec>& command_table() {
    static const std::vector<CommandSpec> table = {
        {"force-script", true, {"script", "length", "default_label"}},
        {"measure", true, {"input"}},
        {"homogeneity-exact", true, {"input", "b_labels", "omega_star"}},
        {"null-cover", true, {"omega", "threshold", "subset", "r"}},
        {"gc-test", true, {"n", "epsilon"}},
        {"homogeneity-mc", true, {"rows", "cols", "subset_size", "b_labels", "epsilon"}},
        {"fg-demo", false, {"n"}},
        {"rect-oracle", true, {"rows", "cols", "max_rects", "a_labels", "heuristic"}},
        {"thmd-check", false, {"a"}},
        {"nonatomic-split", true, {"input", "b_labels", "omega_star"}},
    };
    return table;
}

const CommandSpec* find_command(const std::string& name) {
    for (const auto& c : command_table()) {
        if (name == c.name) return &c;
    }
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto end = s.find(',', pos);
        if (end == std::string::npos) end = s.size();
        out.push_back(trim(s.substr(pos, end - pos)));
        if (end == s.size()) break;
        pos = end + 1;
    }
    return out;
}

}  // namespace

bool known_command(const std::string& command) { return find_command(command) != nullptr; }

std::vector<std::string> command_names() {
    std::vector<std::string> out;
    for (const auto& c : command_table()) out.push_back(c.name);
    return out;
}

ValueSpace RunConfig::value_space() const {
    if (labels.empty()) {
        throw UsageError("config: command '" + command + "' needs labels and weights");
    }
    try {
        return ValueSpace(labels, weights);
    } catch (const DomainError& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

const std::string& RunConfig::param(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw UsageError("config: command '" + command + "' requires key '" + key + "'");
    }
    return it->second;
}

std::optional<std::string> RunConfig::param_opt(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
}

std::uint64_t RunConfig::param_u64(const std::string& key) const {
    const auto& text = param(key);
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: key '" + key + "' needs an unsigned integer, got '" + text +
                         "'");
    }
}

std::uint64_t RunConfig::param_u64_or(const std::string& key, std::uint64_t fallback) const {
    if (!params.contains(key)) return fallback;
    return param_u64(key);
}

Rational RunConfig::param_rational(const std::string& key) const {
    const auto& text = param(key);
    try {
        return Rational::from_string(text);
    } catch (const DomainError&) {
        throw UsageError("config: key '" + key + "' needs a rational 'p/q', got '" + text + "'");
    }
}

std::string RunConfig::echo() const {
    std::ostringstream out;
    out << "command = " << command << "\n";
    if (!labels.empty()) {
        out << "labels = ";
        for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
        out << "\n";
        out << "weights = ";
        for (std::size_t i = 0; i < weights.size(); ++i) {
            out << (i ? "," : "") << weights[i].to_string();
        }
        out << "\n";
    }
    for (const auto& [k, v] : params) out << k << " = " << v << "\n";
    out << "seed = " << seed << "\n";
    out << "out = " << out_dir << "\n";
    out << "format = " << format << "\n";
    out << "workers = " << workers << "\n";
    return out.str();
}

RunConfig parse_config(std::istream& in, const std::optional<std::string>& cli_command) {
    RunConfig cfg;
    cfg.seed = kDefaultSeed;

    std::map<std::string, std::pair<std::string, std::size_t>> pairs;  // key -> (value, line)
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(line_no) +
                             ": expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw UsageError("config line " + std::to_string(line_no) + ": empty key");
        }
        if (!pairs.emplace(key, std::make_pair(value, line_no)).second) {
            throw UsageError("config line " + std::to_string(line_no) + ": duplicate key '" +
                             key + "'");
        }
    }

    auto take = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = pairs.find(key);
        if (it == pairs.end()) return std::nullopt;
        auto v = it->second.first;
        pairs.erase(it);
        return v;
    };

    // Command resolution: config key and/or the command-line positional.
    const auto cfg_command = take("command");
    if (cfg_command && cli_command && *cfg_command != *cli_command) {
        throw UsageError("config: command '" + *cfg_command +
                         "' conflicts with command-line command '" + *cli_command + "'");
    }
    if (cfg_command) {
        cfg.command = *cfg_command;
    } else if (cli_command) {
        cfg.command = *cli_command;
    } else {
        throw UsageError("config: no command given");
    }
    const auto* spec = find_command(cfg.command);
    if (!spec) throw UsageError("config: unknown command '" + cfg.command + "'");

    if (const auto labels = take("labels")) {
        cfg.labels = split_csv(*labels);
        const auto weights = take("weights");
        if (!weights) throw UsageError("config: labels without weights");
        Rational sum(0);
        for (const auto& w : split_csv(*weights)) {
            try {
                cfg.weights.push_back(Rational::from_string(w));
            } catch (const DomainError&) {
                throw UsageError("config: malformed rational '" + w + "' in weights");
            }
            sum += cfg.weights.back();
        }
        if (cfg.weights.size() != cfg.labels.size()) {
            throw UsageError("config: " + std::to_string(cfg.labels.size()) + " labels but " +
                             std::to_string(cfg.weights.size()) + " weights");
        }
        if (sum != Rational(1)) {
            throw UsageError("config: weights sum " + sum.to_string() + " != 1");
        }
    } else if (pairs.contains("weights")) {
        throw UsageError("config: weights without labels");
    }

    if (const auto seed = take("seed")) {
        try {
            cfg.seed = std::stoull(*seed);
        } catch (const std::exception&) {
            throw UsageError("config: bad seed '" + *seed + "'");
        }
    }
    if (const auto out = take("out")) cfg.out_dir = *out;
    if (const auto format = take("format")) {
        if (*format != "text" && *format != "csv") {
            throw UsageError("config: format must be text or csv");
        }
        cfg.format = *format;
    }
    if (const auto workers = take("workers")) {
        try {
            cfg.workers = static_cast<unsigned>(std::stoul(*workers));
        } catch (const std::exception&) {
            throw UsageError("config: bad workers '" + *workers + "'");
        }
        if (cfg.workers == 0) cfg.workers = 1;
    }

    // Whatever remains must be a parameter of the resolved command.
    for (const auto& [key, value_line] : pairs) {
        if (!spec->keys.contains(key)) {
            throw UsageError("config line " + std::to_string(value_line.second) +
                             ": unknown key '" + key + "' for command '" + cfg.command + "'");
        }
        cfg.params[key] = value_line.first;
    }

    if (spec->needs_value_space && cfg.labels.empty()) {
        throw UsageError("config: command '" + cfg.command + "' needs labels and weights");
    }
    return cfg;
}

}  // namespace samplim
