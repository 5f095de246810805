#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "delayrc/capacity.hpp"
#include "delayrc/common.hpp"
#include "delayrc/csv.hpp"
#include "delayrc/models.hpp"
#include "delayrc/reservoir.hpp"

namespace delayrc {

enum class Preset { desk, paper };

inline Preset parse_preset(std::string_view name) {
    if (name == "desk") return Preset::desk;
    if (name == "paper") return Preset::paper;
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected desk or paper)");
}

inline std::string preset_name(Preset p) { return p == Preset::desk ? "desk" : "paper"; }

struct NarmaConfig {
    bool enabled = true;
    double train_fraction = 0.8;  // remainder is the held-out test segment
};

struct ScanConfig {
    double tau_min = 8.0;
    double tau_max = 240.0;
    double tau_step = 4.0;
    double clock_min = 80.0;
    double clock_max = 80.0;
    double clock_step = 8.0;
};

/// Full run description. The desk preset trades statistics for runtime;
/// the paper preset carries the full-scale protocol settings.
struct ExperimentConfig {
    Preset preset = Preset::desk;
    ModelKind model = ModelKind::hopf;
    std::uint64_t master_seed = 1;

    ReservoirParams reservoir;
    ClassAParams class_a;
    TimingConfig timing;

    long n_buffer = 2000;   // driven inputs discarded before training
    long n_train = 20000;   // driven inputs harvested for training
    double transient_time = 10000.0;
    double initial_re = 1.0;
    double initial_im = 0.0;

    EnumerationOptions capacity{5, 120, 0.005, 10};
    NarmaConfig narma;
    ScanConfig scan;

    static ExperimentConfig with_preset(Preset p) {
        ExperimentConfig cfg;
        cfg.preset = p;
        if (p == Preset::paper) {
            cfg.n_buffer = 100000;
            cfg.n_train = 250000;
            cfg.capacity = EnumerationOptions{10, 1000, 0.001, 10};
        }
        return cfg;
    }

    Complex initial_state() const { return {initial_re, initial_im}; }

    void validate() const {
        reservoir.validate();
        timing.validate();
        if (n_buffer < 10) throw ConfigError("n_buffer must be at least 10");
        if (n_train < 10 * timing.virtual_nodes)
            throw ConfigError("n_train must be at least 10 * virtual_nodes");
        if (n_buffer < capacity.lag_cap)
            throw ConfigError("n_buffer must cover the capacity lag cap");
        if (capacity.degree_cap < 1 || capacity.lag_cap < 1)
            throw ConfigError("capacity caps must be positive");
        if (!(capacity.threshold >= 0.0)) throw ConfigError("threshold must be nonnegative");
        if (capacity.dead_window < 1) throw ConfigError("dead window must be positive");
        if (!(narma.train_fraction > 0.0 && narma.train_fraction < 1.0))
            throw ConfigError("narma train fraction must lie in (0, 1)");
        if (transient_time < 0.0) throw ConfigError("transient time must be nonnegative");
    }

    /// Smallest capacity an uninformative target scores in-sample, ~M/N.
    /// Thresholds below a few times this level stop the dead-window
    /// pruning from ever closing.
    double capacity_noise_floor() const {
        return static_cast<double>(timing.virtual_nodes) / static_cast<double>(n_train);
    }
};

namespace detail {

inline std::string trim(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && issp(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

inline double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for " + key + ": '" + v + "'");
    }
}

inline long to_long(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer value for " + key + ": '" + v + "'");
    }
}

inline std::uint64_t to_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        std::uint64_t d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid seed value for " + key + ": '" + v + "'");
    }
}

inline bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("invalid boolean value for " + key + ": '" + v + "'");
}

}  // namespace detail

/// Apply "[section] key = value" lines on top of a base configuration.
/// '#' and ';' start comments; unknown keys are rejected.
inline ExperimentConfig load_config(std::istream& in, ExperimentConfig cfg = {}) {
    std::string line, section;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " + std::to_string(line_no));
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at line " + std::to_string(line_no));
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        const std::string full = section + "." + key;

        using namespace detail;
        if (section == "run") {
            if (key == "model") cfg.model = parse_model_kind(value);
            else if (key == "preset") cfg.preset = parse_preset(value);
            else if (key == "master_seed") cfg.master_seed = to_u64(value, full);
            else if (key == "n_buffer") cfg.n_buffer = to_long(value, full);
            else if (key == "n_train") cfg.n_train = to_long(value, full);
            else if (key == "transient_time") cfg.transient_time = to_double(value, full);
            else if (key == "initial_re") cfg.initial_re = to_double(value, full);
            else if (key == "initial_im") cfg.initial_im = to_double(value, full);
            else throw ConfigError("unknown key " + full);
        } else if (section == "reservoir") {
            if (key == "lambda") cfg.reservoir.lambda = to_double(value, full);
            else if (key == "eta") cfg.reservoir.eta = to_double(value, full);
            else if (key == "omega") cfg.reservoir.omega = to_double(value, full);
            else if (key == "gamma_re") cfg.reservoir.gamma_re = to_double(value, full);
            else if (key == "gamma_im") cfg.reservoir.gamma_im = to_double(value, full);
            else if (key == "kappa") cfg.reservoir.kappa = to_double(value, full);
            else if (key == "phi") cfg.reservoir.phi = to_double(value, full);
            else if (key == "tau") cfg.reservoir.tau = to_double(value, full);
            else throw ConfigError("unknown key " + full);
        } else if (section == "class_a") {
            if (key == "alpha") cfg.class_a.alpha = to_double(value, full);
            else if (key == "pump") cfg.class_a.pump = to_double(value, full);
            else throw ConfigError("unknown key " + full);
        } else if (section == "timing") {
            if (key == "clock_cycle") cfg.timing.clock_cycle = to_double(value, full);
            else if (key == "virtual_nodes") cfg.timing.virtual_nodes = to_long(value, full);
            else if (key == "dt") cfg.timing.dt = to_double(value, full);
            else throw ConfigError("unknown key " + full);
        } else if (section == "capacity") {
            if (key == "degree_cap") cfg.capacity.degree_cap = static_cast<int>(to_long(value, full));
            else if (key == "lag_cap") cfg.capacity.lag_cap = to_long(value, full);
            else if (key == "threshold") cfg.capacity.threshold = to_double(value, full);
            else if (key == "dead_window") cfg.capacity.dead_window = static_cast<int>(to_long(value, full));
            else throw ConfigError("unknown key " + full);
        } else if (section == "narma") {
            if (key == "enabled") cfg.narma.enabled = to_bool(value, full);
            else if (key == "train_fraction") cfg.narma.train_fraction = to_double(value, full);
            else throw ConfigError("unknown key " + full);
        } else if (section == "scan") {
            if (key == "tau_min") cfg.scan.tau_min = to_double(value, full);
            else if (key == "tau_max") cfg.scan.tau_max = to_double(value, full);
            else if (key == "tau_step") cfg.scan.tau_step = to_double(value, full);
            else if (key == "clock_min") cfg.scan.clock_min = to_double(value, full);
            else if (key == "clock_max") cfg.scan.clock_max = to_double(value, full);
            else if (key == "clock_step") cfg.scan.clock_step = to_double(value, full);
            else throw ConfigError("unknown key " + full);
        } else {
            throw ConfigError("unknown section [" + section + "]");
        }
    }
    return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return load_config(in, std::move(base));
}

/// Canonical serialization; load_config(save_config(cfg)) == cfg.
inline void save_config(std::ostream& os, const ExperimentConfig& cfg) {
    os << "[run]\n";
    os << "model = " << model_kind_name(cfg.model) << "\n";
    os << "preset = " << preset_name(cfg.preset) << "\n";
    os << "master_seed = " << cfg.master_seed << "\n";
    os << "n_buffer = " << cfg.n_buffer << "\n";
    os << "n_train = " << cfg.n_train << "\n";
    os << "transient_time = " << format_number(cfg.transient_time) << "\n";
    os << "initial_re = " << format_number(cfg.initial_re) << "\n";
    os << "initial_im = " << format_number(cfg.initial_im) << "\n";
    os << "\n[reservoir]\n";
    os << "lambda = " << format_number(cfg.reservoir.lambda) << "\n";
    os << "eta = " << format_number(cfg.reservoir.eta) << "\n";
    os << "omega = " << format_number(cfg.reservoir.omega) << "\n";
    os << "gamma_re = " << format_number(cfg.reservoir.gamma_re) << "\n";
    os << "gamma_im = " << format_number(cfg.reservoir.gamma_im) << "\n";
    os << "kappa = " << format_number(cfg.reservoir.kappa) << "\n";
    os << "phi = " << format_number(cfg.reservoir.phi) << "\n";
    os << "tau = " << format_number(cfg.reservoir.tau) << "\n";
    os << "\n[class_a]\n";
    os << "alpha = " << format_number(cfg.class_a.alpha) << "\n";
    os << "pump = " << format_number(cfg.class_a.pump) << "\n";
    os << "\n[timing]\n";
    os << "clock_cycle = " << format_number(cfg.timing.clock_cycle) << "\n";
    os << "virtual_nodes = " << cfg.timing.virtual_nodes << "\n";
    os << "dt = " << format_number(cfg.timing.dt) << "\n";
    os << "\n[capacity]\n";
    os << "degree_cap = " << cfg.capacity.degree_cap << "\n";
    os << "lag_cap = " << cfg.capacity.lag_cap << "\n";
    os << "threshold = " << format_number(cfg.capacity.threshold) << "\n";
    os << "dead_window = " << cfg.capacity.dead_window << "\n";
    os << "\n[narma]\n";
    os << "enabled = " << (cfg.narma.enabled ? "true" : "false") << "\n";
    os << "train_fraction = " << format_number(cfg.narma.train_fraction) << "\n";
    os << "\n[scan]\n";
    os << "tau_min = " << format_number(cfg.scan.tau_min) << "\n";
    os << "tau_max = " << format_number(cfg.scan.tau_max) << "\n";
    os << "tau_step = " << format_number(cfg.scan.tau_step) << "\n";
    os << "clock_min = " << format_number(cfg.scan.clock_min) << "\n";
    os << "clock_max = " << format_number(cfg.scan.clock_max) << "\n";
    os << "clock_step = " << format_number(cfg.scan.clock_step) << "\n";
}

}  // namespace delayrc
