#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "samplim/commands.hpp"
#include "samplim/errors.hpp"

using namespace samplim;
namespace fs = std::filesystem;

namespace {

// run() echoes its report to stdout; keep the test log clean.
int run_quiet(const RunConfig& cfg) {
    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    const int rc = run(cfg);
    std::cout.rdbuf(old);
    return rc;
}

RunConfig parse(const std::string& text, std::optional<std::string> cli_command = {}) {
    std::istringstream in(text);
    return parse_config(in, cli_command);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("minimal valid config") {
        const auto cfg = parse(
            "labels = 0,1\n"
            "weights = 1/2,1/2\n"
            "command = gc-test\n"
            "n = 10000\n");
        CHECK(cfg.command == "gc-test");
        CHECK(cfg.labels.size() == 2);
        CHECK(cfg.param_u64("n") == 10000);
        CHECK(cfg.workers == 1);
        const auto vs = cfg.value_space();
        CHECK(vs.size() == 2);
    }
    SUBCASE("weights must sum to one") {
        CHECK_THROWS_WITH_AS(parse("labels = 0,1\n"
                                   "weights = 1/2,1/3\n"
                                   "command = gc-test\n"),
                             doctest::Contains("weights sum 5/6 != 1"), UsageError);
    }
    SUBCASE("unknown command") {
        CHECK_THROWS_WITH_AS(parse("command = frobnicate\n"),
                             doctest::Contains("unknown command"), UsageError);
    }
    SUBCASE("unknown keys are rejected with their line") {
        CHECK_THROWS_WITH_AS(parse("command = fg-demo\n"
                                   "n = 4\n"
                                   "bogus = 1\n"),
                             doctest::Contains("line 3"), UsageError);
    }
    SUBCASE("command may come from the command line") {
        const auto cfg = parse("n = 4\n", "fg-demo");
        CHECK(cfg.command == "fg-demo");
        CHECK_THROWS_AS(parse("command = fg-demo\nn = 4\n", "gc-test"), UsageError);
        CHECK_THROWS_AS(parse("n = 4\n"), UsageError);  // no command at all
    }
    SUBCASE("value space required by the command") {
        CHECK_THROWS_AS(parse("command = gc-test\nn = 10\n"), UsageError);
    }
    SUBCASE("duplicate and malformed lines") {
        CHECK_THROWS_AS(parse("command = fg-demo\ncommand = fg-demo\n"), UsageError);
        CHECK_THROWS_WITH_AS(parse("command = fg-demo\nnonsense\n"),
                             doctest::Contains("line 2"), UsageError);
    }
}

TEST_CASE("run dispatch and exit codes") {
    SUBCASE("thmd-check passes") {
        TempDir dir("samplim_cli_thmd");
        auto cfg = parse("command = thmd-check\na = 1/2\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 0);
        const auto report = slurp(dir.path / "thmd_check.txt");
        CHECK(report.find("b = 1/8") != std::string::npos);
        CHECK(report.find("identity = ok") != std::string::npos);
    }
    SUBCASE("fg-demo reports the obstruction") {
        TempDir dir("samplim_cli_fg");
        auto cfg = parse("command = fg-demo\nn = 8\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 0);
        const auto report = slurp(dir.path / "fg_demo.txt");
        CHECK(report.find("0 of 256") != std::string::npos);
        CHECK(report.find("k=1") != std::string::npos);
    }
    SUBCASE("a failed statistical test exits 1") {
        TempDir dir("samplim_cli_gcfail");
        auto cfg = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = gc-test\n"
            "n = 1000\nepsilon = 1/100000000\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 1);
        CHECK(slurp(dir.path / "gc_test.txt").find("pass = no") != std::string::npos);
    }
    SUBCASE("measure on a malformed event file exits 2") {
        TempDir dir("samplim_cli_measure");
        const auto bad = dir.path / "bad.event";
        std::ofstream(bad) << "space theta\ncyl 1=zzz\n";
        auto cfg = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = measure\ninput = " + bad.string() + "\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 2);
    }
    SUBCASE("measure on a well-formed event file") {
        TempDir dir("samplim_cli_measure2");
        const auto path = dir.path / "ok.event";
        std::ofstream(path) << "space theta\ncyl 1=1 2=1\ncyl 1=0\n";
        auto cfg = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = measure\ninput = " + path.string() +
            "\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 0);
        const auto csv = slurp(dir.path / "measure.csv");
        CHECK(csv.find("total,3/4") != std::string::npos);
    }
    SUBCASE("null-cover writes the cover") {
        TempDir dir("samplim_cli_null");
        auto cfg = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = null-cover\n"
            "omega = 0\nthreshold = 1/10\nsubset = 1\nr = 1\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 0);
        const auto report = slurp(dir.path / "null_cover.txt");
        CHECK(report.find("n = 4") != std::string::npos);
        CHECK(report.find("measure = 1/16") != std::string::npos);
        CHECK(report.find("member = yes") != std::string::npos);
    }
    SUBCASE("force-script runs and journals") {
        TempDir dir("samplim_cli_force");
        const auto script = dir.path / "feats.script";
        std::ofstream(script) << "ROW const:1 0 1 2\nPOINT 0 1\nCOL periodic:0,1 0\n";
        auto cfg = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = force-script\nscript = " +
            script.string() + "\nlength = 4\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 0);
        const auto csv = slurp(dir.path / "force_script.csv");
        CHECK(csv.find("\"ROW const:1 0 1 2\",3,1") != std::string::npos);
        CHECK(csv.find("\"POINT 0 1\",0,1") != std::string::npos);  // covered, adds nothing
    }
    SUBCASE("nonatomic-split reports the strict chain") {
        TempDir dir("samplim_cli_split");
        const auto path = dir.path / "a.event";
        std::ofstream(path) << "space omega\ncyl 1=1\n";
        auto cfg = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = nonatomic-split\n"
            "input = " + path.string() + "\nb_labels = 1\nomega_star = 5\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 0);
        const auto report = slurp(dir.path / "nonatomic_split.txt");
        CHECK(report.find("split measure = 1/4") != std::string::npos);
        CHECK(report.find("strict chain = ok") != std::string::npos);
        CHECK(report.find("cyl 1=1 5=1") != std::string::npos);

        // mu(B) = 1 violates the hypothesis: usage error.
        auto degenerate = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = nonatomic-split\n"
            "input = " + path.string() + "\nb_labels = 0,1\nomega_star = 5\n");
        degenerate.out_dir = dir.path.string();
        CHECK(run_quiet(degenerate) == 2);
    }
    SUBCASE("rect-oracle on a small grid") {
        TempDir dir("samplim_cli_rect");
        auto cfg = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = rect-oracle\n"
            "rows = 4\ncols = 4\nmax_rects = 2\na_labels = 1\nseed = 6\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 0);
        const auto report = slurp(dir.path / "rect_oracle.txt");
        CHECK(report.find("exhaustive = yes") != std::string::npos);

        // Beyond the guard without the heuristic flag: usage error.
        auto large = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = rect-oracle\n"
            "rows = 6\ncols = 6\nmax_rects = 2\na_labels = 1\n");
        large.out_dir = dir.path.string();
        CHECK(run_quiet(large) == 2);

        auto heuristic = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = rect-oracle\n"
            "rows = 6\ncols = 6\nmax_rects = 2\na_labels = 1\nheuristic = yes\n");
        heuristic.out_dir = dir.path.string();
        CHECK(run_quiet(heuristic) == 0);
        CHECK(slurp(dir.path / "rect_oracle.txt").find("no (heuristic)") != std::string::npos);
    }
    SUBCASE("force-script with an unknown default label") {
        TempDir dir("samplim_cli_badlabel");
        const auto script = dir.path / "s";
        std::ofstream(script) << "POINT 0 0\n";
        auto cfg = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = force-script\nscript = " +
            script.string() + "\ndefault_label = zz\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 2);
    }
    SUBCASE("homogeneity-exact verdict") {
        TempDir dir("samplim_cli_hom");
        const auto path = dir.path / "alpha.event";
        std::ofstream(path) << "space omega\ncyl 1=1\n";
        auto cfg = parse(
            "labels = 0,1\nweights = 1/2,1/2\ncommand = homogeneity-exact\n"
            "input = " + path.string() + "\nb_labels = 1\nomega_star = 2\n");
        cfg.out_dir = dir.path.string();
        CHECK(run_quiet(cfg) == 0);
        const auto csv = slurp(dir.path / "homogeneity_exact.csv");
        CHECK(csv.find("1/2,1/2,1/4,1,1") != std::string::npos);
    }
}

TEST_CASE("identical config and seed reproduce identical bytes") {
    TempDir d1("samplim_repro_1");
    TempDir d2("samplim_repro_2");
    const std::string text =
        "labels = 0,1\nweights = 1/2,1/2\ncommand = gc-test\nn = 2000\nepsilon = 1/20\n"
        "seed = 99\n";

    auto c1 = parse(text);
    c1.out_dir = d1.path.string();
    auto c2 = parse(text);
    c2.out_dir = d2.path.string();
    CHECK(run_quiet(c1) == 0);
    CHECK(run_quiet(c2) == 0);
    CHECK(slurp(d1.path / "gc_test.csv") == slurp(d2.path / "gc_test.csv"));

    // A different seed must change the sample (and so, generically, the CSV).
    auto c3 = parse(text);
    c3.seed = 100;
    c3.out_dir = d2.path.string();
    CHECK(run_quiet(c3) == 0);
    CHECK(slurp(d1.path / "gc_test.csv") != slurp(d2.path / "gc_test.csv"));
}
