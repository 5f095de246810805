#pragma once

#include <span>
#include <vector>

#include "delayrc/common.hpp"

namespace delayrc {

/// Piecewise-constant injection signal: input u_n is held for one clock
/// cycle T starting at start_time + n*T, weighted by the mask value of the
/// node interval the query time falls into, and scaled by the input
/// strength. Zero before the first input and after the last.
class DriveSignal {
public:
    DriveSignal() = default;

    DriveSignal(std::span<const double> inputs, std::span<const double> mask,
                double clock_cycle, double start_time, double scale)
        : inputs_(inputs.begin(), inputs.end()),
          mask_(mask.begin(), mask.end()),
          clock_cycle_(clock_cycle),
          start_time_(start_time),
          scale_(scale) {
        if (mask_.empty()) throw ConfigError("mask must be nonempty");
        if (!(clock_cycle > 0.0)) throw ConfigError("clock cycle must be positive");
        node_sep_ = clock_cycle_ / static_cast<double>(mask_.size());
    }

    double value_at(double t) const {
        if (inputs_.empty()) return 0.0;
        const double x = t - start_time_;
        if (x < 0.0) return 0.0;
        const auto n = static_cast<std::size_t>(x / clock_cycle_);
        if (n >= inputs_.size()) return 0.0;
        const double within = x - static_cast<double>(n) * clock_cycle_;
        auto m = static_cast<std::size_t>(within / node_sep_);
        if (m >= mask_.size()) m = mask_.size() - 1;
        return scale_ * mask_[m] * inputs_[n];
    }

    double clock_cycle() const { return clock_cycle_; }
    double node_separation() const { return node_sep_; }
    std::size_t input_count() const { return inputs_.size(); }

private:
    std::vector<double> inputs_;
    std::vector<double> mask_;
    double clock_cycle_ = 1.0;
    double start_time_ = 0.0;
    double scale_ = 1.0;
    double node_sep_ = 1.0;
};

}  // namespace delayrc
