// urnlab: two-colour urn processes with random reinforcement.
//
// Subcommands: theory, simulate, oracle, diagnose, experiment, verify.
// Exit codes: 0 ok, 1 acceptance failure, 2 config error, 3 runtime limit.

#include "urnlab/config.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/report_io.hpp"
#include "urnlab/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<uint64_t> seed_override;
    std::optional<uint32_t> workers_override;
    bool paper_variant = false;
};

urnlab::RunConfig load(const CommonArgs& args) {
    if (args.config_path.empty()) throw urnlab::ConfigError("--config: required");
    urnlab::RunConfig rc = urnlab::load_config(args.config_path);
    if (args.seed_override) rc.seed = *args.seed_override;
    if (args.workers_override) rc.workers = *args.workers_override;
    if (const char* env = std::getenv("URNLAB_BUDGET")) {
        try {
            rc.budget = std::stoull(env);
        } catch (const std::exception&) {
            throw urnlab::ConfigError("URNLAB_BUDGET: not a number");
        }
    }
    return rc;
}

void emit(const CommonArgs& args, const std::string& name, const std::string& content) {
    if (args.out_dir.empty()) return;
    std::filesystem::create_directories(args.out_dir);
    urnlab::write_file_atomic(args.out_dir + "/" + name, content);
}

void write_manifest(const CommonArgs& args, const std::string& subcommand, uint64_t seed,
                    std::chrono::steady_clock::time_point started) {
    if (args.out_dir.empty()) return;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["config_path"] = args.config_path;
    j["out_dir"] = args.out_dir;
    j["master_seed"] = seed;
    j["tool_version"] = kVersion;
    j["duration_seconds"] = secs;
    emit(args, "manifest.json", j.dump(2) + "\n");
}

urnlab::DecompVariant variant_of(const CommonArgs& args) {
    return args.paper_variant ? urnlab::DecompVariant::PaperPrinted
                              : urnlab::DecompVariant::Corrected;
}

int cmd_theory(const CommonArgs& args) {
    const auto started = std::chrono::steady_clock::now();
    const urnlab::RunConfig rc = load(args);
    const urnlab::ModelMoments mm =
        urnlab::ModelMoments::from(rc.m, rc.dx, rc.dy ? &*rc.dy : nullptr);
    const auto profile = urnlab::asymptotic_profile(rc.model, mm);
    const std::string text = urnlab::profile_to_json(profile).dump(2) + "\n";
    std::cout << text;
    emit(args, "theory.json", text);
    write_manifest(args, "theory", rc.seed, started);
    return 0;
}

int cmd_simulate(const CommonArgs& args) {
    const auto started = std::chrono::steady_clock::now();
    const urnlab::RunConfig rc = load(args);
    urnlab::RunOptions opts;
    opts.full_records = rc.full_records;
    opts.checkpoints = rc.checkpoints;
    if (!rc.full_records && opts.checkpoints.empty() && rc.horizon > 0)
        opts.checkpoints = {rc.horizon};
    const urnlab::UrnState initial{urnlab::Count(rc.w0), urnlab::Count(rc.b0), 0};
    const urnlab::Trajectory traj = urnlab::run(initial, rc.model, rc.dx,
                                                rc.dy ? &*rc.dy : nullptr, rc.m, rc.horizon,
                                                rc.seed, opts);
    const std::string csv = urnlab::trajectory_to_csv(traj, rc.full_records);
    if (args.out_dir.empty())
        std::cout << csv;
    else
        emit(args, "trajectory.csv", csv);
    write_manifest(args, "simulate", rc.seed, started);
    return 0;
}

int cmd_oracle(const CommonArgs& args) {
    const auto started = std::chrono::steady_clock::now();
    const urnlab::RunConfig rc = load(args);
    const urnlab::DiscreteDist* dy = rc.dy ? &*rc.dy : nullptr;
    const urnlab::StateDist sd = urnlab::exact_distribution(rc.w0, rc.b0, rc.m, rc.model, rc.dx,
                                                            dy, rc.horizon, rc.budget);
    const urnlab::ExactMoments em = urnlab::exact_moments(sd);
    const urnlab::Rational defect = urnlab::check_martingale(
        rc.w0, rc.b0, rc.m, rc.model, rc.dx, dy, rc.horizon, variant_of(args), rc.budget);

    nlohmann::json j = urnlab::exact_moments_to_json(sd, em);
    j["martingale_defect"] = urnlab::rational_to_string(defect);
    const std::string csv = urnlab::state_dist_to_csv(sd);
    if (args.out_dir.empty()) {
        std::cout << csv << j.dump(2) << "\n";
    } else {
        emit(args, "distribution.csv", csv);
        emit(args, "moments.json", j.dump(2) + "\n");
    }
    write_manifest(args, "oracle", rc.seed, started);
    return 0;
}

int cmd_diagnose(const CommonArgs& args) {
    const auto started = std::chrono::steady_clock::now();
    urnlab::RunConfig rc = load(args);
    rc.full_records = true;
    urnlab::RunOptions opts;
    opts.full_records = true;
    const urnlab::DiscreteDist* dy = rc.dy ? &*rc.dy : nullptr;
    const urnlab::UrnState initial{urnlab::Count(rc.w0), urnlab::Count(rc.b0), 0};
    const urnlab::Trajectory traj =
        urnlab::run(initial, rc.model, rc.dx, dy, rc.m, rc.horizon, rc.seed, opts);
    const urnlab::ModelMoments mm = urnlab::ModelMoments::from(rc.m, rc.dx, dy);
    const urnlab::SaDecomposition dec = urnlab::decompose(traj, mm, variant_of(args));
    const urnlab::SaConditionReport rep = urnlab::sa_condition_bounds(traj, mm, rc.dx, dy);

    nlohmann::json j = urnlab::sa_conditions_to_json(rep);
    j["max_abs_residual"] = dec.max_abs_residual;
    const std::string csv = urnlab::decomposition_to_csv(dec);
    if (args.out_dir.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        emit(args, "decomposition.csv", csv);
        emit(args, "sa_conditions.json", j.dump(2) + "\n");
    }
    write_manifest(args, "diagnose", rc.seed, started);
    return 0;
}

int cmd_experiment(const CommonArgs& args) {
    const auto started = std::chrono::steady_clock::now();
    const urnlab::RunConfig rc = load(args);
    const urnlab::ExperimentConfig cfg = urnlab::to_experiment_config(rc);
    const urnlab::ExperimentReport report = urnlab::run_experiment(cfg);
    const std::string jtext = urnlab::report_to_json(report).dump(2) + "\n";
    const std::string csv = urnlab::report_to_csv(report);
    if (args.out_dir.empty()) {
        std::cout << jtext;
    } else {
        emit(args, "report.json", jtext);
        emit(args, "report.csv", csv);
    }
    write_manifest(args, "experiment", rc.seed, started);
    return 0;
}

int cmd_verify(const CommonArgs& args, const std::string& only) {
    const auto started = std::chrono::steady_clock::now();
    urnlab::VerifyOptions opts;
    opts.only = only;
    if (args.workers_override) opts.workers = *args.workers_override;
    const auto results = urnlab::run_acceptance(opts);
    bool all_ok = true;
    std::string lines;
    for (const auto& r : results) {
        const std::string line =
            std::string(r.passed ? "PASS" : "FAIL") + " " + r.name + ": " + r.detail;
        std::cout << line << "\n";
        lines += line + "\n";
        all_ok = all_ok && r.passed;
    }
    if (results.empty()) {
        std::cerr << "no criteria match --only filter '" << only << "'\n";
        return 2;
    }
    std::cout << (all_ok ? "ALL CRITERIA PASSED" : "ACCEPTANCE FAILED") << " ("
              << results.size() << " criteria)\n";
    emit(args, "verify.txt", lines);
    write_manifest(args, "verify", 0, started);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"urnlab: two-colour urn processes with random reinforcement"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonArgs args;
    std::string only;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* conf = sub->add_option("--config", args.config_path, "JSON config file");
        if (needs_config) conf->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--seed", args.seed_override, "override config seed");
        sub->add_option("--workers", args.workers_override, "worker thread count (0 = cores)");
        // undocumented: swaps in the printed (inconsistent) martingale-increment
        // formulas so the defect checks can demonstrate the discrepancy
        sub->add_flag("--paper-variant", args.paper_variant)->group("");
    };

    CLI::App* theory = app.add_subcommand("theory", "closed-form limit profile");
    add_common(theory, true);
    CLI::App* simulate = app.add_subcommand("simulate", "run one seeded trajectory");
    add_common(simulate, true);
    CLI::App* oracle = app.add_subcommand("oracle", "exact finite-horizon law");
    add_common(oracle, true);
    CLI::App* diagnose = app.add_subcommand("diagnose", "stochastic-approximation decomposition");
    add_common(diagnose, true);
    CLI::App* experiment = app.add_subcommand("experiment", "replicated Monte Carlo experiment");
    add_common(experiment, true);
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    add_common(verify, false);
    verify->add_option("--only", only, "run only criteria whose name contains this string");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad flags/config are exit 2; help/version exit 0
    }

    try {
        if (app.got_subcommand(theory)) return cmd_theory(args);
        if (app.got_subcommand(simulate)) return cmd_simulate(args);
        if (app.got_subcommand(oracle)) return cmd_oracle(args);
        if (app.got_subcommand(diagnose)) return cmd_diagnose(args);
        if (app.got_subcommand(experiment)) return cmd_experiment(args);
        if (app.got_subcommand(verify)) return cmd_verify(args, only);
    } catch (const urnlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const urnlab::RuntimeLimitError& e) {
        std::cerr << "runtime limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
