#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "samplim/commands.hpp"
#include "samplim/errors.hpp"
#include "samplim/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact cylinder-set measures, forcing, and statistical verification"};
    app.set_version_flag("--version",
                         std::string(samplim::kToolName) + " " + std::string(samplim::kVersion));

    std::string command;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<unsigned> workers;

    app.add_option("command", command, "command to run (may also come from the config file)");
    app.add_option("--config", config_path, "path to a key = value config file")->required();
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--out", out_dir, "override the output directory");
    app.add_option("--workers", workers, "worker threads for batch verification");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file '" << config_path << "'\n";
            return 2;
        }
        auto cfg = samplim::parse_config(
            in, command.empty() ? std::nullopt : std::optional<std::string>(command));
        if (seed) cfg.seed = *seed;
        if (out_dir) cfg.out_dir = *out_dir;
        if (workers) cfg.workers = *workers == 0 ? 1 : *workers;
        return samplim::run(cfg);
    } catch (const samplim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
