#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace delayrc {

inline constexpr const char* kVersion = "0.1.0";

using Complex = std::complex<double>;

/// Invalid or inconsistent run configuration (misaligned timescales,
/// nonpositive delays, empty scan ranges, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// The integrator produced a non-finite state.
class IntegrationDivergedError : public std::runtime_error {
public:
    IntegrationDivergedError(double t, Complex state)
        : std::runtime_error("integration diverged at t=" + std::to_string(t)),
          time(t),
          last_state(state) {}

    double time;
    Complex last_state;
};

/// An iterated target sequence left its admissible range.
class SequenceDivergedError : public std::runtime_error {
public:
    explicit SequenceDivergedError(std::size_t index)
        : std::runtime_error("sequence diverged at index " + std::to_string(index)),
          index(index) {}

    std::size_t index;
};

/// Target variance is zero; the normalized error is undefined.
class UndefinedVarianceError : public std::invalid_argument {
public:
    UndefinedVarianceError() : std::invalid_argument("target variance is zero") {}
};

/// Centered target has zero norm; the capacity quotient is undefined.
class UndefinedCapacityError : public std::invalid_argument {
public:
    UndefinedCapacityError() : std::invalid_argument("centered target has zero norm") {}
};

}  // namespace delayrc
