#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "delayrc/common.hpp"

namespace delayrc {

/// Ring of past states on the uniform integration grid. Newest sample is
/// at head_time(); older samples sit k*dt behind it. Lookups are either
/// exact grid reads or a linear blend of two adjacent grid samples;
/// requests outside the stored range throw.
class HistoryBuffer {
public:
    HistoryBuffer(double dt, double span)
        : dt_(dt),
          capacity_(static_cast<long>(std::ceil(span / dt)) + 2),
          samples_(static_cast<std::size_t>(capacity_)) {
        if (!(dt > 0.0)) throw ConfigError("dt must be positive");
        if (!(span > 0.0)) throw ConfigError("history span must be positive");
    }

    /// Seed the whole ring with one value; the newest sample is placed at
    /// time t0, older entries extend capacity*dt into the past.
    void fill_constant(Complex z, double t0) {
        for (auto& s : samples_) s = z;
        head_ = 0;
        filled_ = capacity_;
        head_time_ = t0;
    }

    void push(Complex z) {
        head_ = (head_ + 1 == capacity_) ? 0 : head_ + 1;
        samples_[static_cast<std::size_t>(head_)] = z;
        if (filled_ < capacity_) ++filled_;
        head_time_ += dt_;
    }

    /// Exact grid sample k steps behind the newest one.
    Complex at_steps_back(long k) const {
        if (k < 0 || k >= filled_)
            throw ConfigError("history lookup outside stored range");
        long idx = head_ - k;
        if (idx < 0) idx += capacity_;
        return samples_[static_cast<std::size_t>(idx)];
    }

    /// Value at an arbitrary past time; off-grid times are linearly
    /// interpolated between the two bracketing samples.
    Complex value_at(double t) const {
        const double offset = (head_time_ - t) / dt_;
        const double rounded = std::round(offset);
        if (std::abs(offset - rounded) < 1e-6)
            return at_steps_back(static_cast<long>(rounded));
        const long newer = static_cast<long>(std::floor(offset));
        const double frac = offset - static_cast<double>(newer);
        const Complex a = at_steps_back(newer);
        const Complex b = at_steps_back(newer + 1);
        return (1.0 - frac) * a + frac * b;
    }

    double head_time() const { return head_time_; }
    double dt() const { return dt_; }
    long capacity() const { return capacity_; }

private:
    double dt_;
    long capacity_;
    std::vector<Complex> samples_;
    long head_ = 0;
    long filled_ = 0;
    double head_time_ = 0.0;
};

}  // namespace delayrc
