#include "samplim/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "samplim/errors.hpp"
#include "samplim/pullback.hpp"
#include "samplim/rectangles.hpp"
#include "samplim/rng.hpp"
#include "samplim/verify.hpp"
#include "samplim/version.hpp"

namespace samplim {

namespace {

constexpr std::uint64_t kSubsetStream = 0x73756273ULL;  // column-subset draws

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string file_stem(const std::string& command) {
    std::string out = command;
    for (auto& ch : out) {
        if (ch == '-') ch = '_';
    }
    return out;
}

// Accumulates the structured-text report and the CSV table, then writes both
// files. Content is a pure function of the resolved config, so reruns are
// byte-identical.
class Report {
  public:
    Report(const RunConfig& cfg, const std::string& identity) : cfg_(cfg) {
        text_ << "# " << kToolName << " " << kVersion << "\n";
        text_ << "# identity: " << identity << "\n";
        text_ << "# resolved config:\n";
        std::istringstream echo(cfg.echo());
        std::string line;
        while (std::getline(echo, line)) text_ << "#   " << line << "\n";
        text_ << "\n";
    }

    std::ostream& text() { return text_; }
    std::ostream& csv() { return csv_; }

    void write() const {
        namespace fs = std::filesystem;
        fs::create_directories(cfg_.out_dir);
        const auto stem = file_stem(cfg_.command);
        {
            std::ofstream out(fs::path(cfg_.out_dir) / (stem + ".txt"));
            out << text_.str();
        }
        {
            std::ofstream out(fs::path(cfg_.out_dir) / (stem + ".csv"));
            out << csv_.str();
        }
        std::cout << (cfg_.format == "csv" ? csv_.str() : text_.str());
    }

  private:
    const RunConfig& cfg_;
    std::ostringstream text_;
    std::ostringstream csv_;
};

AlgebraEvent load_event(const RunConfig& cfg, const ValueSpace& vs) {
    const auto& path = cfg.param("input");
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open input file '" + path + "'");
    return parse_event(in, vs);
}

int cmd_measure(const RunConfig& cfg) {
    const auto vs = cfg.value_space();
    const auto event = load_event(cfg, vs);
    Report rep(cfg, "finite additivity of the product measure over a disjoint cylinder union");

    const auto total = event.measure(vs);
    rep.text() << "space = " << side_name(event.side()) << "\n";
    rep.text() << "pieces = " << event.pieces().size() << "\n";
    rep.text() << "measure = " << total.to_string() << "\n";
    rep.text() << "support =";
    for (const auto c : event.support()) rep.text() << " " << c;
    rep.text() << "\n";

    rep.csv() << "piece,measure,cylinder\n";
    for (std::size_t i = 0; i < event.pieces().size(); ++i) {
        const auto& p = event.pieces()[i];
        // Constraint lists contain commas; quote the column.
        rep.csv() << i << "," << p.measure(vs).to_string() << ",\""
                  << format_cylinder(p, vs) << "\"\n";
    }
    rep.csv() << "total," << total.to_string() << ",\n";
    rep.write();
    return 0;
}

int cmd_force_script(const RunConfig& cfg) {
    const auto vs = cfg.value_space();
    const auto& path = cfg.param("script");
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open script file '" + path + "'");
    const auto feats = parse_feature_script(in, vs);
    const auto length = cfg.param_u64_or("length", 8);

    Label default_label = 0;
    if (const auto name = cfg.param_opt("default_label")) {
        const auto l = vs.find_label(*name);
        if (!l) throw UsageError("config: unknown default_label '" + *name + "'");
        default_label = *l;
    }

    const auto store = run_enumeration(ForcingStore(default_label), feats, length);

    Report rep(cfg, "stagewise forcing with nested domains");
    rep.text() << "stages = " << store.journal().size() << "\n";
    rep.text() << "materialized = " << store.materialized_count() << "\n";
    rep.text() << "next_omega = " << store.next_omega() << "\n";
    rep.text() << "next_theta = " << store.next_theta() << "\n";
    rep.text() << "\nassignments (omega theta label):\n";
    for (const auto& [key, label] : store.assignments()) {
        rep.text() << key.first << " " << key.second << " " << vs.label_name(label) << "\n";
    }

    rep.csv() << "stage,feature,new_assignments,forces_ok,store_size\n";
    for (const auto& s : store.journal()) {
        // Feature descriptions may contain commas (periodic:a,b); quote them.
        rep.csv() << s.stage << ",\"" << s.feature.describe(vs) << "\"," << s.new_assignments
                  << "," << (s.forces_ok ? 1 : 0) << "," << s.store_size << "\n";
    }
    rep.write();
    return 0;
}

int cmd_homogeneity_exact(const RunConfig& cfg) {
    const auto vs = cfg.value_space();
    const auto event = load_event(cfg, vs);
    if (event.side() != Side::omega) {
        throw UsageError("config: homogeneity-exact expects an omega-side event");
    }
    const auto b_set = vs.parse_label_set(cfg.param("b_labels"));
    const auto omega_star = cfg.param_u64("omega_star");

    const auto t = homogeneity_exact_event(event, b_set, omega_star, vs);

    Report rep(cfg, "nu(A /\\ pin B at omega*) = nu(A)*mu(B), exact on the algebra");
    rep.text() << "nu(A) = " << t.alpha_measure.to_string() << "\n";
    rep.text() << "mu(B) = " << t.beta_measure.to_string() << "\n";
    rep.text() << "nu(A /\\ pin) = " << t.gamma_measure.to_string() << "\n";
    rep.text() << "structural = " << (t.structural_ok ? "ok" : "VIOLATED") << "\n";
    rep.text() << "identity = " << (t.identity_ok ? "ok" : "VIOLATED") << "\n";

    rep.csv() << "nu_a,mu_b,nu_cut,structural_ok,identity_ok\n";
    rep.csv() << t.alpha_measure.to_string() << "," << t.beta_measure.to_string() << ","
              << t.gamma_measure.to_string() << "," << (t.structural_ok ? 1 : 0) << ","
              << (t.identity_ok ? 1 : 0) << "\n";
    rep.write();
    return (t.identity_ok && t.structural_ok) ? 0 : 1;
}

int cmd_null_cover(const RunConfig& cfg) {
    const auto vs = cfg.value_space();
    const auto omega = cfg.param_u64("omega");
    const auto threshold = cfg.param_rational("threshold");
    const auto subset = vs.parse_label_set(cfg.param("subset"));
    const auto r_name = cfg.param("r");
    const auto r = vs.find_label(r_name);
    if (!r) throw UsageError("config: unknown label '" + r_name + "' for r");

    ForcingStore store;
    const auto cover = null_cover(store, omega, threshold, subset, *r, vs);
    const auto verdict = member(cover.event, CoordinateId::omega(omega), store);

    Report rep(cfg, "level-set cylinder powers shrink below any positive threshold");
    rep.text() << "mu(X) = " << vs.measure(subset).to_string() << "\n";
    rep.text() << "threshold = " << threshold.to_string() << "\n";
    rep.text() << "n = " << cover.exponent << "\n";
    rep.text() << "measure = " << cover.measure.to_string() << "\n";
    rep.text() << "member = " << to_string(verdict) << "\n";
    rep.text() << "thetas =";
    for (const auto t : cover.thetas) rep.text() << " " << t;
    rep.text() << "\n";

    rep.csv() << "n,measure,member,thetas\n";
    rep.csv() << cover.exponent << "," << cover.measure.to_string() << "," << to_string(verdict)
              << ",";
    for (std::size_t i = 0; i < cover.thetas.size(); ++i) {
        rep.csv() << (i ? " " : "") << cover.thetas[i];
    }
    rep.csv() << "\n";
    rep.write();
    return verdict == Membership::yes && cover.measure < threshold ? 0 : 1;
}

int cmd_gc_test(const RunConfig& cfg) {
    const auto vs = cfg.value_space();
    const auto n = cfg.param_u64("n");
    const auto eps = cfg.param_rational("epsilon");
    const auto r = gc_test(vs, n, cfg.seed, eps);

    Report rep(cfg, "empirical max-atom deviation vs exact weights (Hoeffding-bounded)");
    rep.text() << "n = " << r.n << "\n";
    rep.text() << "epsilon = " << r.epsilon.to_string() << "\n";
    rep.text() << "max_deviation = " << r.max_deviation.to_string() << " ("
               << fmt_double(r.max_deviation.to_double()) << ")\n";
    rep.text() << "pass = " << (r.pass ? "yes" : "no") << "\n";
    rep.text() << "false_failure_bound = " << fmt_double(r.false_failure_bound) << "\n";

    rep.csv() << "label,weight,deviation,deviation_double\n";
    for (Label l = 0; l < vs.size(); ++l) {
        rep.csv() << vs.label_name(l) << "," << vs.weight(l).to_string() << ","
                  << r.deviations[l].to_string() << ","
                  << fmt_double(r.deviations[l].to_double()) << "\n";
    }
    rep.write();
    return r.pass ? 0 : 1;
}

int cmd_homogeneity_mc(const RunConfig& cfg) {
    const auto vs = cfg.value_space();
    const auto rows = cfg.param_u64("rows");
    const auto cols = cfg.param_u64("cols");
    const auto subset_size = cfg.param_u64("subset_size");
    const auto b_set = vs.parse_label_set(cfg.param("b_labels"));
    const auto eps = cfg.param_rational("epsilon");
    if (subset_size == 0 || subset_size > cols) {
        throw UsageError("config: subset_size must be in [1, cols]");
    }

    const auto m = SampleMatrix::generate(vs, rows, cols, cfg.seed);

    // Seeded sample of distinct columns (partial Fisher-Yates).
    std::vector<std::uint32_t> all(cols);
    for (std::size_t i = 0; i < cols; ++i) all[i] = static_cast<std::uint32_t>(i);
    SplitStream rng(cfg.seed, kSubsetStream);
    for (std::size_t i = 0; i < subset_size; ++i) {
        const auto j = i + rng.next_below(cols - i);
        std::swap(all[i], all[j]);
    }
    all.resize(subset_size);

    const auto r = homogeneity_mc(m, vs, all, b_set, eps, cfg.workers);
    const Rational pass_bar(99, 100);
    const bool pass = r.fraction_within >= pass_bar;

    Report rep(cfg, "per-row subset frequencies vs nu(A)*mu(B)");
    rep.text() << "rows = " << rows << ", cols = " << cols << "\n";
    rep.text() << "subset_size = " << subset_size << "\n";
    rep.text() << "expected = " << r.expected.to_string() << "\n";
    rep.text() << "fraction_within = " << r.fraction_within.to_string() << " ("
               << fmt_double(r.fraction_within.to_double()) << ")\n";
    rep.text() << "pass (>= 99/100) = " << (pass ? "yes" : "no") << "\n";

    rep.csv() << "row,deviation,deviation_double,within\n";
    for (std::size_t i = 0; i < r.deviations.size(); ++i) {
        rep.csv() << i << "," << r.deviations[i].to_string() << ","
                  << fmt_double(r.deviations[i].to_double()) << "," << (r.within[i] ? 1 : 0)
                  << "\n";
    }
    rep.write();
    return pass ? 0 : 1;
}

int cmd_fg_demo(const RunConfig& cfg) {
    const auto n = static_cast<unsigned>(cfg.param_u64("n"));
    const auto r = fg_impossibility(n);

    Report rep(cfg, "no {0,1} vector has every prefix averaging exactly 1/2");
    if (r.exhaustive) {
        rep.text() << r.satisfying << " of " << r.vectors_checked
                   << " vectors satisfy exact homogeneity; first obstruction k="
                   << r.first_obstruction << "\n";
    } else {
        rep.text() << "pruned search: satisfying set empty; first obstruction k="
                   << r.first_obstruction << "\n";
    }
    rep.text() << "the k=1 prefix demands the value 1/2, which is not in {0,1}\n";
    rep.text() << "dfs_nodes = " << r.dfs_nodes << "\n";

    rep.csv() << "n,exhaustive,vectors_checked,satisfying,first_obstruction,dfs_nodes\n";
    rep.csv() << r.n << "," << (r.exhaustive ? 1 : 0) << "," << r.vectors_checked << ","
              << r.satisfying << "," << r.first_obstruction << "," << r.dfs_nodes << "\n";
    rep.write();
    return r.satisfying == 0 ? 0 : 1;
}

int cmd_rect_oracle(const RunConfig& cfg) {
    const auto vs = cfg.value_space();
    const auto rows = cfg.param_u64("rows");
    const auto cols = cfg.param_u64("cols");
    const auto max_rects = static_cast<unsigned>(cfg.param_u64_or("max_rects", 1));
    const auto a_set = vs.parse_label_set(cfg.param("a_labels"));
    const bool heuristic = cfg.param_opt("heuristic").value_or("no") == "yes";

    const auto m = SampleMatrix::generate(vs, rows, cols, cfg.seed);
    const auto r = min_rectangle_error(m, a_set, max_rects, heuristic, cfg.seed);

    Report rep(cfg, "minimal symmetric-difference density over disjoint rectangle families");
    rep.text() << "grid = " << rows << "x" << cols << ", max_rects = " << max_rects << "\n";
    rep.text() << "exhaustive = " << (r.exhaustive ? "yes" : "no (heuristic)") << "\n";
    rep.text() << "minimum = " << r.minimum.to_string() << " ("
               << fmt_double(r.minimum.to_double()) << ")\n";

    auto mask_string = [](const std::vector<bool>& mask) {
        std::string out;
        for (const auto b : mask) out.push_back(b ? '1' : '0');
        return out;
    };
    rep.csv() << "rect,row_mask,col_mask\n";
    for (std::size_t i = 0; i < r.witness.rectangles().size(); ++i) {
        const auto& rect = r.witness.rectangles()[i];
        rep.csv() << i << "," << mask_string(rect.row_mask) << "," << mask_string(rect.col_mask)
                  << "\n";
    }
    rep.csv() << "minimum," << r.minimum.to_string() << "," << (r.exhaustive ? 1 : 0) << "\n";
    rep.write();
    return 0;
}

int cmd_thmd_check(const RunConfig& cfg) {
    const auto a = cfg.param_rational("a");
    const auto id = thmd_mechanism_check(a);

    Report rep(cfg, "with b=(a-a^2)/2, a-2b = a^2");
    rep.text() << "a = " << id.a.to_string() << "\n";
    rep.text() << "b = " << id.b.to_string() << "\n";
    rep.text() << "a-2b = " << id.a_minus_2b.to_string() << "\n";
    rep.text() << "a^2 = " << id.a_squared.to_string() << "\n";
    rep.text() << "identity = " << (id.holds ? "ok" : "VIOLATED") << "\n";

    rep.csv() << "a,b,a_minus_2b,a_squared,holds\n";
    rep.csv() << id.a.to_string() << "," << id.b.to_string() << ","
              << id.a_minus_2b.to_string() << "," << id.a_squared.to_string() << ","
              << (id.holds ? 1 : 0) << "\n";
    rep.write();
    return id.holds ? 0 : 1;
}

int cmd_nonatomic_split(const RunConfig& cfg) {
    const auto vs = cfg.value_space();
    const auto event = load_event(cfg, vs);
    const auto b_set = vs.parse_label_set(cfg.param("b_labels"));
    const auto omega_star = cfg.param_u64("omega_star");

    const auto r = nonatomic_split(event, b_set, omega_star, vs);
    const bool chain = r.product.sign() > 0 && r.product < r.nu_a;

    Report rep(cfg, "0 < nu(A)*mu(B) < nu(A) for 0 < mu(B) < 1");
    rep.text() << "nu(A) = " << r.nu_a.to_string() << "\n";
    rep.text() << "mu(B) = " << r.mu_b.to_string() << "\n";
    rep.text() << "split measure = " << r.product.to_string() << "\n";
    rep.text() << "strict chain = " << (chain ? "ok" : "VIOLATED") << "\n";
    rep.text() << "\nsub-event:\n";
    print_event(rep.text(), r.sub, vs);

    rep.csv() << "nu_a,mu_b,split_measure,strict_chain\n";
    rep.csv() << r.nu_a.to_string() << "," << r.mu_b.to_string() << "," << r.product.to_string()
              << "," << (chain ? 1 : 0) << "\n";
    rep.write();
    return chain ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg) {
    try {
        if (cfg.command == "measure") return cmd_measure(cfg);
        if (cfg.command == "force-script") return cmd_force_script(cfg);
        if (cfg.command == "homogeneity-exact") return cmd_homogeneity_exact(cfg);
        if (cfg.command == "null-cover") return cmd_null_cover(cfg);
        if (cfg.command == "gc-test") return cmd_gc_test(cfg);
        if (cfg.command == "homogeneity-mc") return cmd_homogeneity_mc(cfg);
        if (cfg.command == "fg-demo") return cmd_fg_demo(cfg);
        if (cfg.command == "rect-oracle") return cmd_rect_oracle(cfg);
        if (cfg.command == "thmd-check") return cmd_thmd_check(cfg);
        if (cfg.command == "nonatomic-split") return cmd_nonatomic_split(cfg);
        throw UsageError("config: unknown command '" + cfg.command + "'");
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace samplim
