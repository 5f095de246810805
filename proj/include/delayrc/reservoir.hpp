#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "delayrc/common.hpp"
#include "delayrc/integrator.hpp"
#include "delayrc/models.hpp"
#include "delayrc/rng.hpp"

namespace delayrc {

/// Time-multiplexing layout: one input is held for a clock cycle T, which
/// is divided into virtual_nodes intervals of length theta = T/N_V. Both
/// theta and T must land on the integration grid.
struct TimingConfig {
    double clock_cycle = 80.0;
    long virtual_nodes = 50;
    double dt = 0.01;

    double node_separation() const {
        return clock_cycle / static_cast<double>(virtual_nodes);
    }

    long steps_per_node() const {
        return aligned_steps(node_separation(), dt, "node separation");
    }

    void validate() const {
        if (!(clock_cycle > 0.0)) throw ConfigError("clock cycle must be positive");
        if (virtual_nodes < 1) throw ConfigError("need at least one virtual node");
        if (!(dt > 0.0)) throw ConfigError("dt must be positive");
        (void)steps_per_node();
    }
};

struct Mask {
    std::vector<double> values;
    std::uint64_t seed = 0;
};

/// n_v independent uniform draws from [-1, 1], reproducible per seed.
inline Mask generate_mask(long n_v, std::uint64_t seed) {
    if (n_v < 1) throw ConfigError("mask length must be at least 1");
    Mask m;
    m.seed = seed;
    m.values = uniform_sequence(seed, static_cast<std::size_t>(n_v), -1.0, 1.0);
    return m;
}

/// Harvested node responses: row n holds the readouts for input n, sampled
/// at the end of each node interval. first_input_index records which
/// element of the driving input sequence row 0 corresponds to, so targets
/// built from the same sequence stay aligned after slicing.
struct StateMatrix {
    Eigen::MatrixXd values;
    long first_input_index = 0;

    long rows() const { return values.rows(); }
    long cols() const { return values.cols(); }

    Eigen::RowVectorXd column_means() const { return values.colwise().mean(); }

    /// Drop the first `skip` rows (e.g. the buffer region).
    StateMatrix tail_rows(long skip) const {
        if (skip < 0 || skip > rows()) throw ConfigError("invalid row slice");
        StateMatrix out;
        out.values = values.bottomRows(rows() - skip);
        out.first_input_index = first_input_index + skip;
        return out;
    }
};

struct ReservoirRun {
    double transient_time = 10000.0;  // drive-free settling before inputs
    Complex initial{1.0, 0.0};
};

/// Drive the oscillator with the masked input sequence and harvest |Z|^2
/// at every node instant. The trajectory is continuous across the
/// transient and all inputs; each node interval holds its drive value
/// constant, which is exact because theta is grid-aligned.
template <DelayModel M>
StateMatrix harvest_states(const M& model, double eta, double tau,
                           const TimingConfig& timing, const Mask& mask,
                           std::span<const double> inputs,
                           const ReservoirRun& opts = {}) {
    timing.validate();
    if (static_cast<long>(mask.values.size()) != timing.virtual_nodes)
        throw ConfigError("mask length does not match virtual node count");

    const long spn = timing.steps_per_node();
    const long n_nodes = timing.virtual_nodes;
    const long n_inputs = static_cast<long>(inputs.size());
    const long transient_steps =
        opts.transient_time > 0.0
            ? aligned_steps(opts.transient_time, timing.dt, "transient time")
            : 0;

    DdeIntegrator<M> integ(model, tau, timing.dt, opts.initial, -opts.transient_time);
    integ.advance_constant(transient_steps, 0.0);

    StateMatrix out;
    out.values.resize(n_inputs, n_nodes);
    for (long n = 0; n < n_inputs; ++n) {
        const double u = inputs[static_cast<std::size_t>(n)];
        for (long m = 0; m < n_nodes; ++m) {
            integ.advance_constant(spn, eta * mask.values[static_cast<std::size_t>(m)] * u);
            out.values(n, m) = std::norm(integ.state());
        }
    }
    return out;
}

/// Name-dispatched front end over the model types.
inline StateMatrix run_reservoir(const ReservoirParams& params, const TimingConfig& timing,
                                 const Mask& mask, std::span<const double> inputs,
                                 ModelKind kind, const ClassAParams& class_a = {},
                                 const ReservoirRun& opts = {}) {
    params.validate();
    if (kind == ModelKind::hopf)
        return harvest_states(HopfModel(params), params.eta, params.tau, timing, mask,
                              inputs, opts);
    return harvest_states(ClassAModel(params, class_a), params.eta, params.tau, timing,
                          mask, inputs, opts);
}

}  // namespace delayrc
