#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "delayrc/common.hpp"

namespace delayrc {

/// Tenth-order nonlinear autoregressive recurrence
///   A_{n+1} = 0.3 A_n + 0.05 A_n sum_{i=0..9} A_{n-i} + 1.5 u_{n-9} u_n + 0.1
/// with zero-initialized histories. Values with |A| > 10 abort the
/// sequence.
class Narma10State {
public:
    /// Feed u_n, returning A_{n+1}.
    double step(double u) {
        // a_[k % 10] holds A_k for the ten most recent k <= n; unwritten
        // slots are the zero initial history. Likewise u_[k % 10] = u_k.
        const double a_now = a_[n_ % 10];
        double sum = 0.0;
        for (double a : a_) sum += a;
        const double u_old = u_[(n_ + 1) % 10];  // u_{n-9}, zero while n < 9
        const double next = 0.3 * a_now + 0.05 * a_now * sum + 1.5 * u_old * u + 0.1;
        if (!std::isfinite(next) || std::abs(next) > 10.0)
            throw SequenceDivergedError(n_);
        u_[n_ % 10] = u;
        ++n_;
        a_[n_ % 10] = next;
        return next;
    }

    /// A_n, the latest recurrence value.
    double current() const { return a_[n_ % 10]; }
    std::size_t steps() const { return n_; }

private:
    std::array<double, 10> a_{};
    std::array<double, 10> u_{};
    std::size_t n_ = 0;
};

inline double narma10_step(Narma10State& state, double u) { return state.step(u); }

/// Targets aligned for one-step-ahead prediction: element n is A_{n+1},
/// the value to predict from the reservoir state after input u_n.
inline std::vector<double> narma10_sequence(std::span<const double> inputs) {
    Narma10State state;
    std::vector<double> out;
    out.reserve(inputs.size());
    for (double u : inputs) out.push_back(state.step(u));
    return out;
}

}  // namespace delayrc
