// Command-line front end: curve tables, probability tables, Monte Carlo
// sessions, the selective-forwarding scenario, and a one-shot validation
// verdict.  All numeric output uses 12 significant digits.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpb/analytics.hpp"
#include "fpb/montecarlo.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolName = "fpb-probe";
constexpr const char* kToolVersion = "0.1.0";

std::string num12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) { return std::strtod(num12(v).c_str(), nullptr); }

struct OutputSpec {
    std::string format = "csv";  // csv | json
    std::string out;             // empty: stdout
};

void add_output_flags(CLI::App* cmd, OutputSpec& spec) {
    cmd->add_option("--format", spec.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", spec.out, "Output path (default: standard output)");
}

void emit(const OutputSpec& spec, const std::string& text) {
    if (spec.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(spec.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + spec.out);
        f << text;
    }
}

std::string csv_meta_line(const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& params) {
    std::ostringstream os;
    os << "# tool=" << kToolName << " version=" << kToolVersion
       << " command=" << command;
    for (const auto& [k, v] : params) os << ' ' << k << '=' << v;
    os << '\n';
    return os.str();
}

json json_meta(const std::string& command,
               const std::vector<std::pair<std::string, std::string>>& params) {
    json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["command"] = command;
    json p = json::object();
    for (const auto& [k, v] : params) p[k] = v;
    meta["params"] = p;
    return meta;
}

// ---------------------------------------------------------------- curves

int cmd_curves(int grid_points, const OutputSpec& spec) {
    std::vector<std::pair<std::string, std::string>> params = {
        {"grid", std::to_string(grid_points)}};
    std::ostringstream os;
    json rows = json::array();
    if (spec.format == "csv") {
        os << csv_meta_line("curves", params);
        os << "pe,renyi_projective,renyi_povm\n";
    }
    for (int i = 0; i < grid_points; ++i) {
        double pe = (1.0 / 3.0) * static_cast<double>(i) /
                    static_cast<double>(grid_points - 1);
        double rp = fpb::renyi_projective(pe);
        double rc = fpb::renyi_povm(pe);
        if (spec.format == "csv") {
            os << num12(pe) << ',' << num12(rp) << ',' << num12(rc) << '\n';
        } else {
            rows.push_back({{"pe", round12(pe)},
                            {"renyi_projective", round12(rp)},
                            {"renyi_povm", round12(rc)}});
        }
    }
    if (spec.format == "json") {
        json doc;
        doc["meta"] = json_meta("curves", params);
        doc["rows"] = rows;
        os << doc.dump(2) << '\n';
    }
    emit(spec, os.str());
    return 0;
}

// ----------------------------------------------------------------- table

int cmd_table(double pe, const std::string& level, const OutputSpec& spec) {
    std::vector<std::pair<std::string, std::string>> params = {
        {"pe", num12(pe)}, {"level", level}};
    std::ostringstream os;
    json rows = json::array();
    if (level == "state") {
        fpb::JointDistribution t = fpb::table1(pe);
        if (spec.format == "csv") {
            os << csv_meta_line("table", params) << "alice,bob,eve,probability\n";
        }
        for (fpb::Bb84Symbol a : {fpb::Bb84Symbol::H, fpb::Bb84Symbol::V,
                                  fpb::Bb84Symbol::P45, fpb::Bb84Symbol::M45}) {
            fpb::Basis basis = fpb::basis_of(a);
            for (int slot = 0; slot < 2; ++slot) {
                for (int e = 0; e < 3; ++e) {
                    auto outcome = static_cast<fpb::EveOutcome>(e);
                    auto decoded = fpb::decode_outcome(outcome, basis);
                    std::string eve =
                        decoded ? fpb::symbol_name(*decoded) : "inc";
                    double p = t.probs()[static_cast<size_t>(
                        fpb::JointDistribution::state_index(a, slot, outcome))];
                    std::string bob = fpb::symbol_name(fpb::symbol_from(basis, slot));
                    if (spec.format == "csv") {
                        os << fpb::symbol_name(a) << ',' << bob << ',' << eve
                           << ',' << num12(p) << '\n';
                    } else {
                        rows.push_back({{"alice", fpb::symbol_name(a)},
                                        {"bob", bob},
                                        {"eve", eve},
                                        {"probability", round12(p)}});
                    }
                }
            }
        }
    } else {
        fpb::JointDistribution t = fpb::table2(pe);
        if (spec.format == "csv") {
            os << csv_meta_line("table", params) << "a,b,e,probability\n";
        }
        const char* enames[3] = {"0", "1", "inc"};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int e = 0; e < 3; ++e) {
                    double p = t.at_bit(a, b, e);
                    if (spec.format == "csv") {
                        os << a << ',' << b << ',' << enames[e] << ','
                           << num12(p) << '\n';
                    } else {
                        rows.push_back({{"a", a},
                                        {"b", b},
                                        {"e", enames[e]},
                                        {"probability", round12(p)}});
                    }
                }
            }
        }
    }
    if (spec.format == "json") {
        json doc;
        doc["meta"] = json_meta("table", params);
        doc["rows"] = rows;
        os << doc.dump(2) << '\n';
    }
    emit(spec, os.str());
    return 0;
}

// -------------------------------------------------------------- simulate

json comparison_json(const fpb::ComparisonReport& rep) {
    json c;
    c["pass"] = rep.pass;
    c["max_abs_z"] = round12(rep.max_abs_z);
    c["zero_violations"] = rep.zero_violations;
    return c;
}

int cmd_simulate(std::uint64_t trials, std::uint64_t seed, double pe,
                 const std::string& probe, const OutputSpec& spec) {
    fpb::SimConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.pe = pe;
    cfg.probe = probe == "povm" ? fpb::ProbeKind::Povm : fpb::ProbeKind::Projective;
    fpb::SessionStats stats = fpb::run_session(cfg);

    fpb::JointDistribution analytic =
        fpb::joint_from_model(pe, cfg.probe);
    fpb::ComparisonReport rep = fpb::compare_to_analytic(stats, analytic);
    double empirical_renyi = fpb::renyi_from_joint(stats.empirical_bit());
    double analytic_renyi = cfg.probe == fpb::ProbeKind::Povm
                                ? fpb::renyi_povm(pe)
                                : fpb::renyi_projective(pe);

    std::vector<std::pair<std::string, std::string>> params = {
        {"trials", std::to_string(trials)},
        {"seed", std::to_string(seed)},
        {"pe", num12(pe)},
        {"probe", probe}};

    std::ostringstream os;
    if (spec.format == "csv") {
        os << csv_meta_line("simulate", params);
        os << "sift_count=" << stats.sift_count
           << " error_rate=" << num12(stats.sifted_error_rate())
           << " inconclusive_rate="
           << num12(static_cast<double>(stats.inconclusive_count) /
                    static_cast<double>(stats.sift_count))
           << " empirical_renyi=" << num12(empirical_renyi)
           << " analytic_renyi=" << num12(analytic_renyi)
           << " comparison_pass=" << (rep.pass ? 1 : 0)
           << " max_abs_z=" << num12(rep.max_abs_z)
           << " zero_violations=" << rep.zero_violations << '\n';
        os << "alice,bob,eve,count,empirical,analytic,z\n";
        for (const fpb::CellComparison& cc : rep.cells) {
            std::string label = cc.label;
            for (char& ch : label)
                if (ch == '/') ch = ',';
            os << label << ','
               << stats.state_counts[static_cast<size_t>(cc.cell)] << ','
               << num12(cc.empirical) << ',' << num12(cc.analytic) << ','
               << num12(cc.z) << '\n';
        }
    } else {
        json doc;
        doc["meta"] = json_meta("simulate", params);
        json s;
        s["trials"] = stats.trials;
        s["seed"] = stats.seed;
        s["sift_count"] = stats.sift_count;
        s["error_count"] = stats.error_count;
        s["inconclusive_count"] = stats.inconclusive_count;
        s["error_rate"] = round12(stats.sifted_error_rate());
        s["empirical_renyi"] = round12(empirical_renyi);
        s["analytic_renyi"] = round12(analytic_renyi);
        doc["stats"] = s;
        doc["comparison"] = comparison_json(rep);
        json rows = json::array();
        for (const fpb::CellComparison& cc : rep.cells) {
            rows.push_back(
                {{"cell", cc.label},
                 {"count", stats.state_counts[static_cast<size_t>(cc.cell)]},
                 {"empirical", round12(cc.empirical)},
                 {"analytic", round12(cc.analytic)},
                 {"z", round12(cc.z)}});
        }
        doc["rows"] = rows;
        os << doc.dump(2) << '\n';
    }
    emit(spec, os.str());
    return 0;
}

// ----------------------------------------------------------------- lossy

int cmd_lossy(double eta, std::uint64_t trials, std::uint64_t seed,
              const OutputSpec& spec) {
    fpb::LossyScenario analytic = fpb::lossy_scenario(eta);

    fpb::SimConfig attack;
    attack.trials = trials;
    attack.seed = seed;
    attack.scenario = fpb::Scenario::Lossy;
    attack.eta = eta;
    attack.probe = fpb::ProbeKind::Povm;
    fpb::SessionStats st = fpb::run_session(attack);

    fpb::SimConfig baseline = attack;
    baseline.eve_present = false;
    fpb::SessionStats base = fpb::run_session(baseline);

    double forwarded_fraction = static_cast<double>(st.forwarded_count) /
                                static_cast<double>(st.trials);
    double baseline_delivered = static_cast<double>(base.delivered_count) /
                                static_cast<double>(base.trials);
    double cond_error = st.sifted_error_rate();
    double cond_renyi = fpb::renyi_from_joint(st.empirical_bit());

    std::vector<std::pair<std::string, std::string>> params = {
        {"eta", num12(eta)},
        {"trials", std::to_string(trials)},
        {"seed", std::to_string(seed)}};

    std::ostringstream os;
    if (spec.format == "csv") {
        os << csv_meta_line("lossy", params);
        os << "key,value\n";
        auto kv = [&os](const char* k, double v) {
            os << k << ',' << num12(v) << '\n';
        };
        kv("analytic_pe", analytic.pe);
        kv("analytic_forwarded_fraction", analytic.forwarded_fraction);
        kv("analytic_error_given_conclusive", analytic.error_given_conclusive);
        kv("analytic_renyi_conditional", analytic.renyi_conditional);
        kv("empirical_forwarded_fraction", forwarded_fraction);
        kv("baseline_delivered_fraction", baseline_delivered);
        kv("empirical_error_given_conclusive", cond_error);
        kv("empirical_renyi_conditional", cond_renyi);
        os << "sift_count," << st.sift_count << '\n';
        os << "baseline_sift_count," << base.sift_count << '\n';
    } else {
        json doc;
        doc["meta"] = json_meta("lossy", params);
        doc["analytic"] = {
            {"eta", round12(analytic.eta)},
            {"pe", round12(analytic.pe)},
            {"forwarded_fraction", round12(analytic.forwarded_fraction)},
            {"error_given_conclusive", round12(analytic.error_given_conclusive)},
            {"renyi_conditional", round12(analytic.renyi_conditional)}};
        doc["empirical"] = {
            {"forwarded_fraction", round12(forwarded_fraction)},
            {"baseline_delivered_fraction", round12(baseline_delivered)},
            {"error_given_conclusive", round12(cond_error)},
            {"renyi_conditional", round12(cond_renyi)},
            {"sift_count", st.sift_count},
            {"baseline_sift_count", base.sift_count}};
        os << doc.dump(2) << '\n';
    }
    emit(spec, os.str());
    return 0;
}

// -------------------------------------------------------------- validate

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<double> pe_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 33; ++i) g.push_back(0.01 * i);
    g.push_back(1.0 / 3.0);
    return g;
}

double max_table_diff(const fpb::JointDistribution& a,
                      const fpb::JointDistribution& b) {
    double mx = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        mx = std::max(mx, std::abs(a.probs()[static_cast<size_t>(i)] -
                                   b.probs()[static_cast<size_t>(i)]));
    }
    return mx;
}

int cmd_validate(bool inject_fault) {
    std::vector<CheckResult> results;
    auto grid = pe_grid();

    {
        CheckResult r{"povm_validity", true, ""};
        double worst_resid = 0.0, worst_ev = 0.0;
        for (double pe : grid) {
            fpb::Povm p = fpb::conclusive_povm(fpb::ProbeParams(pe));
            if (inject_fault) {
                // Test hook: perturb the inconclusive effect so that
                // completeness fails.
                p.effects[2] = p.effects[2] +
                               fpb::Operator::outer(fpb::plus_ket()) *
                                   fpb::cplx{1e-6, 0.0};
            }
            fpb::PovmReport rep = fpb::validate_povm(p);
            worst_resid = std::max(worst_resid, rep.completeness_residual);
            worst_ev = std::min(worst_ev, rep.min_eigenvalue);
            if (!rep.pass) r.pass = false;
        }
        r.detail = "max completeness residual " + num12(worst_resid) +
                   ", min eigenvalue " + num12(worst_ev);
        results.push_back(r);
    }
    {
        CheckResult r{"cnot_identities", true, ""};
        double worst = 0.0;
        for (double pe : grid) {
            fpb::ProbeParams params(pe);
            fpb::TargetOutputs outs = fpb::target_outputs(params);
            auto check = [&](fpb::Bb84Symbol in, fpb::Bb84Symbol keep,
                             fpb::Bb84Symbol flip, const fpb::PureState& t_keep) {
                fpb::PureState lhs = fpb::joint_output(in, params);
                fpb::PureState rhs =
                    fpb::tensor(fpb::bb84_state(keep), t_keep) +
                    fpb::tensor(fpb::bb84_state(flip), outs.t_err);
                fpb::PureState diff = lhs - rhs;
                worst = std::max(worst, std::sqrt(diff.norm2()));
            };
            check(fpb::Bb84Symbol::H, fpb::Bb84Symbol::H, fpb::Bb84Symbol::V,
                  outs.t_minus);
            check(fpb::Bb84Symbol::V, fpb::Bb84Symbol::V, fpb::Bb84Symbol::H,
                  outs.t_plus);
            check(fpb::Bb84Symbol::P45, fpb::Bb84Symbol::P45, fpb::Bb84Symbol::M45,
                  outs.t_plus);
            check(fpb::Bb84Symbol::M45, fpb::Bb84Symbol::M45, fpb::Bb84Symbol::P45,
                  outs.t_minus);
        }
        r.pass = worst <= fpb::kTol;
        r.detail = "max residual " + num12(worst);
        results.push_back(r);
    }
    {
        CheckResult r{"oracle_equivalence", true, ""};
        double worst = 0.0;
        for (double pe : grid) {
            worst = std::max(worst, max_table_diff(
                                        fpb::joint_from_model(pe, fpb::ProbeKind::Povm),
                                        fpb::table1(pe)));
        }
        r.pass = worst <= fpb::kTol;
        r.detail = "max entrywise diff " + num12(worst);
        results.push_back(r);
    }
    {
        CheckResult r{"renyi_consistency", true, ""};
        double worst = 0.0;
        for (double pe : grid) {
            worst = std::max(
                worst, std::abs(fpb::renyi_from_joint(fpb::table2(pe)) -
                                fpb::renyi_povm(pe)));
            worst = std::max(
                worst,
                std::abs(fpb::renyi_from_joint(
                             fpb::joint_from_model(pe, fpb::ProbeKind::Projective)) -
                         fpb::renyi_projective(pe)));
        }
        r.pass = worst <= fpb::kTol;
        r.detail = "max diff " + num12(worst);
        results.push_back(r);
    }
    {
        CheckResult r{"marginals", true, ""};
        double worst = 0.0;
        for (double pe : grid) {
            fpb::JointDistribution t = fpb::table2(pe);
            worst = std::max(worst, std::abs(fpb::error_prob(t) - pe));
            worst = std::max(worst,
                             std::abs(fpb::inconclusive_prob(t) - (1.0 - 3.0 * pe)));
        }
        r.pass = worst <= fpb::kTol;
        r.detail = "max diff " + num12(worst);
        results.push_back(r);
    }
    {
        CheckResult r{"conclusive_conditioning", true, ""};
        double worst = 0.0;
        for (double pe : grid) {
            if (pe <= 0.0) continue;
            fpb::JointDistribution cond =
                fpb::condition_on_conclusive(fpb::table2(pe));
            worst = std::max(worst, std::abs(fpb::error_prob(cond) - 1.0 / 3.0));
            worst = std::max(worst, std::abs(fpb::renyi_from_joint(cond) - 1.0));
        }
        r.pass = worst <= fpb::kTol;
        r.detail = "max diff " + num12(worst);
        results.push_back(r);
    }
    {
        CheckResult r{"boundaries_and_dominance", true, ""};
        double worst = std::max(
            {std::abs(fpb::renyi_projective(0.0)), std::abs(fpb::renyi_povm(0.0)),
             std::abs(fpb::renyi_projective(1.0 / 3.0) - 1.0),
             std::abs(fpb::renyi_povm(1.0 / 3.0) - 1.0)});
        bool dominated = true;
        for (double pe : grid) {
            if (pe <= 0.0 || pe >= 1.0 / 3.0) continue;
            if (!(fpb::renyi_projective(pe) > fpb::renyi_povm(pe))) dominated = false;
        }
        r.pass = worst <= fpb::kTol && dominated;
        r.detail = "endpoint residual " + num12(worst) +
                   (dominated ? ", projective dominates interior"
                              : ", dominance violated");
        results.push_back(r);
    }
    {
        CheckResult r{"monte_carlo_smoke", true, ""};
        fpb::SimConfig cfg;
        cfg.trials = 100000;
        cfg.seed = 7;
        cfg.pe = 0.2;
        cfg.probe = fpb::ProbeKind::Povm;
        fpb::SessionStats st = fpb::run_session(cfg);
        fpb::ComparisonReport rep =
            fpb::compare_to_analytic(st, fpb::table1(cfg.pe));
        r.pass = rep.pass;
        r.detail = "max |z| " + num12(rep.max_abs_z) + ", zero violations " +
                   std::to_string(rep.zero_violations);
        results.push_back(r);
    }

    bool all = true;
    for (const CheckResult& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": "
                  << r.detail << '\n';
        if (!r.pass) all = false;
    }
    std::cout << (all ? "validation OK" : "validation FAILED") << '\n';
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytics and Monte Carlo toolkit for the entangling-probe "
                 "attack on BB84 quantum key distribution"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    int grid_points = 35;
    double pe = 0.0;
    double eta = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string probe = "povm";
    std::string level = "state";
    bool inject_fault = false;
    OutputSpec curves_out, table_out, sim_out, lossy_out;

    CLI::App* curves = app.add_subcommand(
        "curves", "Renyi-information curves for both probes on a pe grid");
    curves->add_option("--grid", grid_points, "Number of grid points")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    add_output_flags(curves, curves_out);

    CLI::App* table = app.add_subcommand(
        "table", "Joint sifted-event probability table at a given pe");
    table->add_option("--pe", pe, "Induced sifted-bit error probability")
        ->required();
    table->add_option("--level", level, "Table granularity")
        ->check(CLI::IsMember({"state", "bit"}))
        ->capture_default_str();
    add_output_flags(table, table_out);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo session with comparison against analytics");
    simulate->add_option("--trials", trials, "Number of trials")->required();
    simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
    simulate->add_option("--pe", pe, "Induced sifted-bit error probability")
        ->required();
    simulate->add_option("--probe", probe, "Probe variant")
        ->check(CLI::IsMember({"projective", "povm"}))
        ->capture_default_str();
    add_output_flags(simulate, sim_out);

    CLI::App* lossy = app.add_subcommand(
        "lossy", "Selective forwarding over a pure-loss channel");
    lossy->add_option("--eta", eta, "Channel transmissivity")->required();
    lossy->add_option("--trials", trials, "Number of trials")->required();
    lossy->add_option("--seed", seed, "RNG seed")->capture_default_str();
    add_output_flags(lossy, lossy_out);

    CLI::App* validate = app.add_subcommand(
        "validate", "Run the full invariant suite; exit 0 on pass, 2 on failure");
    validate
        ->add_flag("--inject-fault", inject_fault,
                   "Test hook: perturb the inconclusive POVM effect")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (curves->parsed()) return cmd_curves(grid_points, curves_out);
        if (table->parsed()) return cmd_table(pe, level, table_out);
        if (simulate->parsed())
            return cmd_simulate(trials, seed, pe, probe, sim_out);
        if (lossy->parsed()) return cmd_lossy(eta, trials, seed, lossy_out);
        if (validate->parsed()) return cmd_validate(inject_fault);
    } catch (const std::invalid_argument& e) {
        std::cerr << kToolName << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << kToolName << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
