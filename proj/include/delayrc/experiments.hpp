#pragma once

#include <atomic>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "delayrc/capacity.hpp"
#include "delayrc/config.hpp"
#include "delayrc/csv.hpp"
#include "delayrc/narma.hpp"
#include "delayrc/readout.hpp"
#include "delayrc/reservoir.hpp"
#include "delayrc/rng.hpp"

namespace delayrc {

/// One parameter combination inside a scan. The index feeds the per-point
/// seed derivation, so every point draws its own mask and input streams.
struct PointSpec {
    double tau = 80.0;
    double clock_cycle = 80.0;
    long index = 0;
};

struct PointSeeds {
    std::uint64_t mask = 0;
    std::uint64_t inputs = 0;
    std::uint64_t narma_inputs = 0;
};

inline PointSeeds derive_point_seeds(std::uint64_t master, long index) {
    const auto i = static_cast<std::uint64_t>(index);
    return {mix_seed(master, "mask", i), mix_seed(master, "inputs", i),
            mix_seed(master, "narma-inputs", i)};
}

struct PointResult {
    PointSpec point;
    bool ok = false;
    std::string error;

    CapacityTable table;
    double total_mc = 0.0;
    std::map<int, double> mc_by_degree;
    std::optional<double> narma_nrmse;
    PointSeeds seeds;
};

struct ScanResult {
    std::vector<PointResult> points;
};

/// States sliced to the training rows, together with the full driving
/// input sequence they are aligned to.
struct HarvestOutput {
    StateMatrix states;
    std::vector<double> inputs;
};

namespace detail {

inline TimingConfig timing_at(const ExperimentConfig& cfg, const PointSpec& p) {
    TimingConfig t = cfg.timing;
    t.clock_cycle = p.clock_cycle;
    return t;
}

inline ReservoirParams reservoir_at(const ExperimentConfig& cfg, const PointSpec& p) {
    ReservoirParams r = cfg.reservoir;
    r.tau = p.tau;
    return r;
}

}  // namespace detail

/// Drive the reservoir with a fresh uniform [-1,1] input stream and slice
/// away the buffer rows.
inline HarvestOutput harvest_for_capacity(const ExperimentConfig& cfg, const PointSpec& p) {
    const PointSeeds seeds = derive_point_seeds(cfg.master_seed, p.index);
    const TimingConfig timing = detail::timing_at(cfg, p);
    const ReservoirParams res = detail::reservoir_at(cfg, p);
    const Mask mask = generate_mask(timing.virtual_nodes, seeds.mask);
    HarvestOutput out;
    out.inputs = uniform_sequence(seeds.inputs,
                                  static_cast<std::size_t>(cfg.n_buffer + cfg.n_train),
                                  -1.0, 1.0);
    ReservoirRun opts{cfg.transient_time, cfg.initial_state()};
    StateMatrix all =
        run_reservoir(res, timing, mask, out.inputs, cfg.model, cfg.class_a, opts);
    out.states = all.tail_rows(cfg.n_buffer);
    return out;
}

/// Same protocol with inputs uniform on [0, 0.5] for the autoregressive
/// benchmark; targets are the one-step-ahead recurrence values.
inline double narma_nrmse_at(const ExperimentConfig& cfg, const PointSpec& p) {
    const PointSeeds seeds = derive_point_seeds(cfg.master_seed, p.index);
    const TimingConfig timing = detail::timing_at(cfg, p);
    const ReservoirParams res = detail::reservoir_at(cfg, p);
    const Mask mask = generate_mask(timing.virtual_nodes, seeds.mask);
    const std::vector<double> inputs = uniform_sequence(
        seeds.narma_inputs, static_cast<std::size_t>(cfg.n_buffer + cfg.n_train), 0.0, 0.5);
    ReservoirRun opts{cfg.transient_time, cfg.initial_state()};
    StateMatrix all =
        run_reservoir(res, timing, mask, inputs, cfg.model, cfg.class_a, opts);
    StateMatrix states = all.tail_rows(cfg.n_buffer);

    const std::vector<double> targets_all = narma10_sequence(inputs);
    Eigen::VectorXd targets(states.rows());
    for (long i = 0; i < states.rows(); ++i)
        targets(i) = targets_all[static_cast<std::size_t>(states.first_input_index + i)];

    const long n_train_rows =
        static_cast<long>(std::floor(cfg.narma.train_fraction * states.rows()));
    const long n_test_rows = states.rows() - n_train_rows;
    if (n_train_rows < 10 * timing.virtual_nodes || n_test_rows < 2)
        throw ConfigError("narma split leaves too few rows");

    ReadoutWeights w = train_least_squares(states.values.topRows(n_train_rows),
                                           targets.head(n_train_rows), true);
    return nrmse(predict(states.values.bottomRows(n_test_rows), w),
                 targets.tail(n_test_rows));
}

/// Full protocol at one parameter point: settle, buffer, harvest, measure
/// capacities, and optionally score the benchmark. Failures (diverged
/// integration or sequence) are captured in the result, not thrown.
inline PointResult run_point(const ExperimentConfig& cfg, const PointSpec& p) {
    PointResult out;
    out.point = p;
    out.seeds = derive_point_seeds(cfg.master_seed, p.index);
    try {
        cfg.validate();
        detail::timing_at(cfg, p).validate();
        detail::reservoir_at(cfg, p).validate();
        (void)aligned_steps(p.tau, cfg.timing.dt, "tau");

        HarvestOutput h = harvest_for_capacity(cfg, p);
        out.table = enumerate_and_measure(h.states, h.inputs, cfg.capacity);
        out.total_mc = out.table.total_mc();
        out.mc_by_degree = out.table.mc_by_degree();
        if (cfg.narma.enabled) out.narma_nrmse = narma_nrmse_at(cfg, p);
        out.ok = true;
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
    }
    return out;
}

namespace detail {

/// Expand an inclusive numeric range; guards against empty or runaway
/// ranges.
inline std::vector<double> range_values(double lo, double hi, double step, const char* what) {
    if (!(step > 0.0)) throw ConfigError(std::string(what) + " step must be positive");
    if (hi < lo) throw ConfigError(std::string(what) + " range is empty");
    const double count_f = std::floor((hi - lo) / step + 1.5);
    if (count_f > 100000.0) throw ConfigError(std::string(what) + " range too large");
    const long count = static_cast<long>(count_f);
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        if (v > hi + 1e-9 * std::max(1.0, std::abs(hi))) break;
        vals.push_back(v);
    }
    return vals;
}

/// Run the given points, possibly on several workers; results land in
/// point order regardless of scheduling.
inline ScanResult run_points(const ExperimentConfig& cfg, std::vector<PointSpec> points,
                             unsigned workers) {
    ScanResult scan;
    scan.points.resize(points.size());
    if (points.empty()) return scan;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(points.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < points.size(); ++i)
            scan.points[i] = run_point(cfg, points[i]);
        return scan;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            scan.points[i] = run_point(cfg, points[i]);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return scan;
}

}  // namespace detail

/// Scan the delay time at fixed clock cycle.
inline ScanResult scan_tau(const ExperimentConfig& cfg, unsigned workers = 1) {
    const auto taus =
        detail::range_values(cfg.scan.tau_min, cfg.scan.tau_max, cfg.scan.tau_step, "tau");
    std::vector<PointSpec> points;
    points.reserve(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i)
        points.push_back({taus[i], cfg.timing.clock_cycle, static_cast<long>(i)});
    return detail::run_points(cfg, std::move(points), workers);
}

/// Scan delay time and clock cycle jointly.
inline ScanResult scan_grid(const ExperimentConfig& cfg, unsigned workers = 1) {
    const auto taus =
        detail::range_values(cfg.scan.tau_min, cfg.scan.tau_max, cfg.scan.tau_step, "tau");
    const auto clocks = detail::range_values(cfg.scan.clock_min, cfg.scan.clock_max,
                                             cfg.scan.clock_step, "clock");
    std::vector<PointSpec> points;
    points.reserve(taus.size() * clocks.size());
    long idx = 0;
    for (double clock : clocks)
        for (double tau : taus) points.push_back({tau, clock, idx++});
    return detail::run_points(cfg, std::move(points), workers);
}

/// Per-point summary rows. Columns are stable for a given degree cap; a
/// failed point keeps its row with status=failed and empty numeric cells.
inline void write_summary_csv(std::ostream& os, const ExperimentConfig& cfg,
                              const ScanResult& scan) {
    os << "point_index,model,tau,clock_cycle,virtual_nodes,status,total_mc";
    for (int d = 1; d <= cfg.capacity.degree_cap; ++d) os << ",mc_" << d;
    os << ",narma_nrmse,effective_rank,tasks_evaluated,tasks_recorded,max_clamp_excess,error\n";
    for (const auto& r : scan.points) {
        os << r.point.index << ',' << model_kind_name(cfg.model) << ','
           << format_number(r.point.tau) << ',' << format_number(r.point.clock_cycle) << ','
           << cfg.timing.virtual_nodes << ',' << (r.ok ? "ok" : "failed") << ',';
        if (r.ok) {
            os << format_number(r.total_mc);
            for (int d = 1; d <= cfg.capacity.degree_cap; ++d) {
                const auto it = r.mc_by_degree.find(d);
                os << ',' << format_number(it == r.mc_by_degree.end() ? 0.0 : it->second);
            }
            os << ',';
            if (r.narma_nrmse) os << format_number(*r.narma_nrmse);
            os << ',' << r.table.effective_rank << ',' << r.table.tasks_evaluated << ','
               << static_cast<long>(r.table.records.size()) << ','
               << format_number(r.table.max_clamp_excess) << ',';
        } else {
            for (int d = 0; d <= cfg.capacity.degree_cap; ++d) os << ',';
            os << ",,,,";
            std::string msg = r.error;
            for (char& c : msg)
                if (c == ',' || c == '\n') c = ';';
            os << ',' << msg;
        }
        os << '\n';
    }
}

/// All recorded tasks of every successful point.
inline void write_capacities_csv(std::ostream& os, const ScanResult& scan) {
    os << "point_index,task_id,lags,degrees,total_degree,capacity\n";
    for (const auto& r : scan.points) {
        if (!r.ok) continue;
        for (const auto& rec : r.table.records) {
            std::string lags, degs;
            for (std::size_t i = 0; i < rec.task.terms.size(); ++i) {
                if (i) {
                    lags += '|';
                    degs += '|';
                }
                lags += std::to_string(rec.task.terms[i].lag);
                degs += std::to_string(rec.task.terms[i].degree);
            }
            os << r.point.index << ',' << rec.task.id() << ',' << lags << ',' << degs << ','
               << rec.task.total_degree() << ',' << format_number(rec.capacity) << '\n';
        }
    }
}

/// Resolved configuration, seeds, and per-point diagnostics. The timestamp
/// lives only here, never in the CSV outputs.
inline void write_meta_json(std::ostream& os, const ExperimentConfig& cfg,
                            const ScanResult& scan, const std::string& command,
                            const std::string& timestamp) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["timestamp"] = timestamp;
    j["master_seed"] = cfg.master_seed;
    j["preset"] = preset_name(cfg.preset);
    j["model"] = model_kind_name(cfg.model);
    j["reservoir"] = {{"lambda", cfg.reservoir.lambda}, {"eta", cfg.reservoir.eta},
                      {"omega", cfg.reservoir.omega},   {"gamma_re", cfg.reservoir.gamma_re},
                      {"gamma_im", cfg.reservoir.gamma_im}, {"kappa", cfg.reservoir.kappa},
                      {"phi", cfg.reservoir.phi},       {"tau", cfg.reservoir.tau}};
    j["class_a"] = {{"alpha", cfg.class_a.alpha}, {"pump", cfg.class_a.pump}};
    j["timing"] = {{"clock_cycle", cfg.timing.clock_cycle},
                   {"virtual_nodes", cfg.timing.virtual_nodes},
                   {"dt", cfg.timing.dt}};
    j["run"] = {{"n_buffer", cfg.n_buffer},
                {"n_train", cfg.n_train},
                {"transient_time", cfg.transient_time},
                {"initial_re", cfg.initial_re},
                {"initial_im", cfg.initial_im}};
    j["capacity"] = {{"degree_cap", cfg.capacity.degree_cap},
                     {"lag_cap", cfg.capacity.lag_cap},
                     {"threshold", cfg.capacity.threshold},
                     {"dead_window", cfg.capacity.dead_window},
                     {"legendre_normalization", "sqrt(2d+1)"},
                     {"noise_floor", cfg.capacity_noise_floor()}};
    j["narma"] = {{"enabled", cfg.narma.enabled},
                  {"train_fraction", cfg.narma.train_fraction}};
    j["scan"] = {{"tau_min", cfg.scan.tau_min},   {"tau_max", cfg.scan.tau_max},
                 {"tau_step", cfg.scan.tau_step}, {"clock_min", cfg.scan.clock_min},
                 {"clock_max", cfg.scan.clock_max}, {"clock_step", cfg.scan.clock_step}};
    if (cfg.capacity.threshold < 4.0 * cfg.capacity_noise_floor())
        j["warnings"].push_back(
            "capacity threshold is below 4x the in-sample noise floor; "
            "spurious tasks may be recorded and pruning may not terminate early");
    auto& pts = j["points"];
    pts = nlohmann::json::array();
    for (const auto& r : scan.points) {
        nlohmann::json p;
        p["index"] = r.point.index;
        p["tau"] = r.point.tau;
        p["clock_cycle"] = r.point.clock_cycle;
        p["status"] = r.ok ? "ok" : "failed";
        p["seeds"] = {{"mask", r.seeds.mask},
                      {"inputs", r.seeds.inputs},
                      {"narma_inputs", r.seeds.narma_inputs}};
        if (r.ok) {
            p["total_mc"] = r.total_mc;
            p["tasks_evaluated"] = r.table.tasks_evaluated;
            p["tasks_recorded"] = r.table.records.size();
            p["effective_rank"] = r.table.effective_rank;
            p["max_clamp_excess"] = r.table.max_clamp_excess;
        } else {
            p["error"] = r.error;
        }
        pts.push_back(std::move(p));
    }
    os << j.dump(2) << '\n';
}

}  // namespace delayrc
