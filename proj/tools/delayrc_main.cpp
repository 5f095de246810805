// Command-line front end: parameter points, timescale scans, recall
// profiles, and the NARMA10 benchmark, all emitting CSV plus a JSON run
// record.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "delayrc/delayrc.hpp"

namespace fs = std::filesystem;
using namespace delayrc;

namespace {

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct CommonOptions {
    std::string config_path;
    std::string preset = "desk";
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    unsigned workers = 1;
    std::optional<std::string> model;
    std::optional<double> tau;
    std::optional<double> clock;
    std::string emit_config;
    std::string dump_states;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "Configuration file (INI-style sections)");
    cmd->add_option("--preset", opt.preset, "Base preset: desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("--seed", opt.seed, "Master seed");
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_option("--workers", opt.workers, "Concurrent scan points");
    cmd->add_option("--model", opt.model, "Reservoir model: hopf or class_a")
        ->check(CLI::IsMember({"hopf", "class_a"}));
    cmd->add_option("--tau", opt.tau, "Delay time override");
    cmd->add_option("--clock", opt.clock, "Clock cycle override");
    cmd->add_option("--emit-config", opt.emit_config,
                    "Write the resolved configuration to this path and exit");
    cmd->add_option("--dump-states", opt.dump_states,
                    "Write the harvested state matrix to this CSV (point runs)");
}

ExperimentConfig resolve_config(const CommonOptions& opt) {
    ExperimentConfig cfg = ExperimentConfig::with_preset(parse_preset(opt.preset));
    if (!opt.config_path.empty()) cfg = load_config_file(opt.config_path, cfg);
    if (opt.seed) cfg.master_seed = *opt.seed;
    if (opt.model) cfg.model = parse_model_kind(*opt.model);
    if (opt.tau) cfg.reservoir.tau = *opt.tau;
    if (opt.clock) cfg.timing.clock_cycle = *opt.clock;
    return cfg;
}

/// Returns true if the config was emitted and the run should stop.
bool maybe_emit_config(const CommonOptions& opt, const ExperimentConfig& cfg) {
    if (opt.emit_config.empty()) return false;
    std::ofstream out(opt.emit_config);
    if (!out) throw ConfigError("cannot write config to " + opt.emit_config);
    save_config(out, cfg);
    std::cout << "wrote " << opt.emit_config << "\n";
    return true;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name);
    if (!out) throw ConfigError("cannot write " + (dir / name).string());
    return out;
}

void write_outputs(const CommonOptions& opt, const ExperimentConfig& cfg,
                   const ScanResult& scan, const std::string& command) {
    const fs::path dir(opt.out_dir);
    {
        auto os = open_output(dir, "summary.csv");
        write_summary_csv(os, cfg, scan);
    }
    {
        auto os = open_output(dir, "capacities.csv");
        write_capacities_csv(os, scan);
    }
    {
        auto os = open_output(dir, "meta.json");
        write_meta_json(os, cfg, scan, command, iso_timestamp());
    }
    for (const auto& p : scan.points) {
        std::cout << "point " << p.point.index << " tau=" << p.point.tau
                  << " T=" << p.point.clock_cycle;
        if (p.ok) {
            std::cout << " MC=" << format_number(p.total_mc);
            if (p.narma_nrmse) std::cout << " narma_nrmse=" << format_number(*p.narma_nrmse);
        } else {
            std::cout << " FAILED: " << p.error;
        }
        std::cout << "\n";
    }
    std::cout << "results in " << dir.string() << "\n";
}

void dump_state_matrix(const std::string& path, const HarvestOutput& h) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "row";
    for (long m = 0; m < h.states.cols(); ++m) out << ",node_" << (m + 1);
    out << "\n";
    for (long n = 0; n < h.states.rows(); ++n) {
        out << n;
        for (long m = 0; m < h.states.cols(); ++m)
            out << ',' << format_number(h.states.values(n, m));
        out << "\n";
    }
}

PointSpec point_of(const ExperimentConfig& cfg) {
    return {cfg.reservoir.tau, cfg.timing.clock_cycle, 0};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delay-based reservoir computing simulator: memory capacity and "
                 "NARMA10 benchmarks for an oscillator with delayed feedback"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto* cmd_point = app.add_subcommand("point", "Run a single parameter point");
    auto* cmd_scan_tau = app.add_subcommand("scan-tau", "Scan the delay time");
    auto* cmd_scan_grid = app.add_subcommand("scan-grid", "Scan delay time and clock cycle");
    auto* cmd_recall = app.add_subcommand("linear-recall", "Linear recall profile C^1 vs lag");
    auto* cmd_pairs = app.add_subcommand("pair-quadratic", "Degree-2 capacities over lag pairs");
    auto* cmd_narma = app.add_subcommand("narma10", "NARMA10 benchmark at one point");

    long max_lag = 45;
    long max_lag1 = 45, max_lag2 = 45;
    cmd_recall->add_option("--max-lag", max_lag, "Largest lag to profile");
    cmd_pairs->add_option("--max-lag1", max_lag1, "Largest first lag");
    cmd_pairs->add_option("--max-lag2", max_lag2, "Largest second lag");

    for (auto* cmd :
         {cmd_point, cmd_scan_tau, cmd_scan_grid, cmd_recall, cmd_pairs, cmd_narma})
        add_common(cmd, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = resolve_config(opt);
        if (maybe_emit_config(opt, cfg)) return 0;
        cfg.validate();
        const fs::path dir(opt.out_dir);

        if (cmd_point->parsed()) {
            const PointSpec p = point_of(cfg);
            if (!opt.dump_states.empty())
                dump_state_matrix(opt.dump_states, harvest_for_capacity(cfg, p));
            ScanResult scan;
            scan.points.push_back(run_point(cfg, p));
            write_outputs(opt, cfg, scan, "point");
            return scan.points[0].ok ? 0 : 1;
        }
        if (cmd_scan_tau->parsed()) {
            write_outputs(opt, cfg, scan_tau(cfg, opt.workers), "scan-tau");
            return 0;
        }
        if (cmd_scan_grid->parsed()) {
            write_outputs(opt, cfg, scan_grid(cfg, opt.workers), "scan-grid");
            return 0;
        }
        if (cmd_recall->parsed()) {
            const HarvestOutput h = harvest_for_capacity(cfg, point_of(cfg));
            if (!opt.dump_states.empty()) dump_state_matrix(opt.dump_states, h);
            const auto profile = linear_recall_profile(h.states, h.inputs, max_lag);
            auto os = open_output(dir, "recall.csv");
            os << "lag,capacity\n";
            for (const auto& [lag, c] : profile)
                os << lag << ',' << format_number(c) << '\n';
            std::cout << "results in " << dir.string() << "\n";
            return 0;
        }
        if (cmd_pairs->parsed()) {
            const HarvestOutput h = harvest_for_capacity(cfg, point_of(cfg));
            const auto pairs = pair_quadratic_profile(h.states, h.inputs, max_lag1, max_lag2);
            auto os = open_output(dir, "pairs.csv");
            os << "lag1,lag2,capacity\n";
            for (const auto& pc : pairs)
                os << pc.lag1 << ',' << pc.lag2 << ',' << format_number(pc.capacity) << '\n';
            std::cout << "results in " << dir.string() << "\n";
            return 0;
        }
        if (cmd_narma->parsed()) {
            const double err = narma_nrmse_at(cfg, point_of(cfg));
            auto os = open_output(dir, "summary.csv");
            os << "tau,clock_cycle,narma_nrmse\n";
            os << format_number(cfg.reservoir.tau) << ','
               << format_number(cfg.timing.clock_cycle) << ',' << format_number(err) << '\n';
            std::cout << "narma_nrmse = " << format_number(err) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
