#pragma once

#include <cmath>
#include <vector>

#include "delayrc/common.hpp"
#include "delayrc/drive.hpp"
#include "delayrc/history.hpp"
#include "delayrc/models.hpp"

namespace delayrc {

/// Number of dt steps in a span that must be grid-aligned. Throws if the
/// span is not an integer multiple of dt within 1e-9 relative tolerance.
inline long aligned_steps(double span, double dt, const char* what) {
    const double ratio = span / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio)))
        throw ConfigError(std::string(what) + " must be an integer multiple of dt");
    return static_cast<long>(rounded);
}

/// One classical fourth-order step of the delayed system, t -> t+dt.
/// The drive value is held constant across the four stages; callers keep
/// drive switching aligned to the step grid, which makes the held value
/// exact. Delayed values at the half stage are linearly interpolated
/// between the two bracketing grid samples. Appends the new state to the
/// history and returns it.
template <DelayModel M>
Complex rk4_step(const M& model, Complex z, HistoryBuffer& history, double drive,
                 long delay_steps, double dt, double t) {
    const Complex z_tau = history.at_steps_back(delay_steps);
    const Complex z_tau_next = history.at_steps_back(delay_steps - 1);
    const Complex z_tau_half = 0.5 * (z_tau + z_tau_next);

    const Complex k1 = model.rhs(z, z_tau, drive);
    const Complex k2 = model.rhs(z + (0.5 * dt) * k1, z_tau_half, drive);
    const Complex k3 = model.rhs(z + (0.5 * dt) * k2, z_tau_half, drive);
    const Complex k4 = model.rhs(z + dt * k3, z_tau_next, drive);

    const Complex next = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag()))
        throw IntegrationDivergedError(t, z);
    history.push(next);
    return next;
}

/// Fixed-step integrator for one delayed trajectory. History is warmed
/// with the constant initial state, so lookups at t - tau are defined from
/// the first step on.
template <DelayModel M>
class DdeIntegrator {
public:
    DdeIntegrator(M model, double tau, double dt, Complex initial, double t0 = 0.0)
        : model_(std::move(model)),
          dt_(dt),
          t0_(t0),
          delay_steps_(aligned_steps(tau, dt, "tau")),
          history_(dt, tau) {
        if (delay_steps_ < 1) throw ConfigError("tau must be at least one dt step");
        z_ = initial;
        history_.fill_constant(initial, t0);
    }

    /// Advance one dt with the given drive value.
    void step(double drive) {
        z_ = rk4_step(model_, z_, history_, drive, delay_steps_, dt_, time());
        ++steps_done_;
    }

    /// Advance n steps holding the drive value fixed.
    void advance_constant(long n, double drive) {
        for (long i = 0; i < n; ++i) step(drive);
    }

    /// Advance n steps sampling the drive signal at each step midpoint.
    void advance(long n, const DriveSignal& drive) {
        for (long i = 0; i < n; ++i) step(drive.value_at(time() + 0.5 * dt_));
    }

    Complex state() const { return z_; }
    double time() const { return t0_ + static_cast<double>(steps_done_) * dt_; }
    double dt() const { return dt_; }
    const HistoryBuffer& history() const { return history_; }

private:
    M model_;
    double dt_;
    double t0_;
    long delay_steps_;
    HistoryBuffer history_;
    Complex z_{};
    long steps_done_ = 0;
};

/// Dense trajectory on the integration grid.
class Trajectory {
public:
    Trajectory(double t0, double dt, std::vector<Complex> states)
        : t0_(t0), dt_(dt), states_(std::move(states)) {}

    /// State at a grid time in [t0, t1]; throws for off-grid requests.
    Complex state_at(double t) const {
        const double idx = (t - t0_) / dt_;
        const double rounded = std::round(idx);
        if (std::abs(idx - rounded) > 1e-6 || rounded < 0.0 ||
            rounded >= static_cast<double>(states_.size()))
            throw ConfigError("trajectory query off the stored grid");
        return states_[static_cast<std::size_t>(rounded)];
    }

    Complex front() const { return states_.front(); }
    Complex back() const { return states_.back(); }
    std::size_t size() const { return states_.size(); }
    double t0() const { return t0_; }
    double dt() const { return dt_; }

private:
    double t0_;
    double dt_;
    std::vector<Complex> states_;
};

/// Integrate from t0 to t1 and record every grid state, including the
/// initial one. (t1 - t0)/dt must be an integer within tolerance.
template <DelayModel M>
Trajectory integrate_span(const M& model, Complex initial, const DriveSignal& drive,
                          double t0, double t1, double tau, double dt) {
    if (t1 < t0) throw ConfigError("span end precedes start");
    const long n = aligned_steps(t1 - t0, dt, "span length");
    DdeIntegrator<M> integ(model, tau, dt, initial, t0);
    std::vector<Complex> states;
    states.reserve(static_cast<std::size_t>(n) + 1);
    states.push_back(initial);
    for (long i = 0; i < n; ++i) {
        integ.step(drive.value_at(integ.time() + 0.5 * dt));
        states.push_back(integ.state());
    }
    return Trajectory(t0, dt, std::move(states));
}

}  // namespace delayrc
