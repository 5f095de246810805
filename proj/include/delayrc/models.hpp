#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include "delayrc/common.hpp"

namespace delayrc {

/// Physical parameters of the delayed-feedback oscillator.
struct ReservoirParams {
    double lambda = -0.02;  // pump rate
    double eta = 0.01;      // input strength
    double omega = 0.0;     // free-running frequency
    double gamma_re = -0.1; // nonlinearity, real part
    double gamma_im = 0.0;  // nonlinearity, imaginary part
    double kappa = 0.1;     // feedback strength
    double phi = 0.0;       // feedback phase
    double tau = 80.0;      // delay time

    void validate() const {
        if (!(tau > 0.0)) throw ConfigError("tau must be positive");
        if (!(kappa >= 0.0)) throw ConfigError("kappa must be nonnegative");
        for (double v : {lambda, eta, omega, gamma_re, gamma_im, kappa, phi, tau})
            if (!std::isfinite(v)) throw ConfigError("reservoir parameter not finite");
    }
};

/// Extra parameters of the saturable single-field laser model.
struct ClassAParams {
    double alpha = 0.0;  // linewidth enhancement factor
    double pump = -0.02; // pump relative to threshold
};

template <class M>
concept DelayModel = requires(const M m, Complex z, double drive) {
    { m.rhs(z, z, drive) } -> std::convertible_to<Complex>;
};

/// dZ/dt = (lambda + drive + i*omega + gamma*|Z|^2) Z + kappa e^{i phi} Z(t-tau).
/// `drive` is the already-masked injection value for the current instant.
inline Complex hopf_rhs(const ReservoirParams& p, Complex z, Complex z_del, double drive) {
    const double zr = z.real(), zi = z.imag();
    const double zz = zr * zr + zi * zi;
    const double sr = p.lambda + drive + p.gamma_re * zz;
    const double si = p.omega + p.gamma_im * zz;
    const double fr = p.kappa * std::cos(p.phi);
    const double fi = p.kappa * std::sin(p.phi);
    const double dr = z_del.real(), di = z_del.imag();
    return {sr * zr - si * zi + fr * dr - fi * di,
            sr * zi + si * zr + fr * di + fi * dr};
}

/// dE/dt = (1 + i*alpha) E (P~ - |E|^2) / (1 + 2|E|^2) + kappa e^{i phi} E(t-tau),
/// with P~ = pump + drive. Valid for arbitrary intensity; reduces to the
/// cubic oscillator near threshold.
inline Complex class_a_rhs(const ReservoirParams& p, double pump, Complex z,
                           Complex z_del, double drive, double alpha) {
    const double zr = z.real(), zi = z.imag();
    const double zz = zr * zr + zi * zi;
    const double gain = (pump + drive - zz) / (1.0 + 2.0 * zz);
    // (1 + i*alpha) * gain
    const double sr = gain;
    const double si = alpha * gain;
    const double fr = p.kappa * std::cos(p.phi);
    const double fi = p.kappa * std::sin(p.phi);
    const double dr = z_del.real(), di = z_del.imag();
    return {sr * zr - si * zi + fr * dr - fi * di,
            sr * zi + si * zr + fr * di + fi * dr};
}

/// Hopf normal form with feedback folded into precomputed coefficients.
class HopfModel {
public:
    explicit HopfModel(const ReservoirParams& p)
        : lambda_(p.lambda),
          omega_(p.omega),
          gamma_re_(p.gamma_re),
          gamma_im_(p.gamma_im),
          fb_re_(p.kappa * std::cos(p.phi)),
          fb_im_(p.kappa * std::sin(p.phi)) {}

    Complex rhs(Complex z, Complex z_del, double drive) const noexcept {
        const double zr = z.real(), zi = z.imag();
        const double zz = zr * zr + zi * zi;
        const double sr = lambda_ + drive + gamma_re_ * zz;
        const double si = omega_ + gamma_im_ * zz;
        const double dr = z_del.real(), di = z_del.imag();
        return {sr * zr - si * zi + fb_re_ * dr - fb_im_ * di,
                sr * zi + si * zr + fb_re_ * di + fb_im_ * dr};
    }

private:
    double lambda_, omega_, gamma_re_, gamma_im_, fb_re_, fb_im_;
};

class ClassAModel {
public:
    ClassAModel(const ReservoirParams& p, const ClassAParams& a)
        : pump_(a.pump),
          alpha_(a.alpha),
          fb_re_(p.kappa * std::cos(p.phi)),
          fb_im_(p.kappa * std::sin(p.phi)) {}

    Complex rhs(Complex z, Complex z_del, double drive) const noexcept {
        const double zr = z.real(), zi = z.imag();
        const double zz = zr * zr + zi * zi;
        const double gain = (pump_ + drive - zz) / (1.0 + 2.0 * zz);
        const double dr = z_del.real(), di = z_del.imag();
        return {gain * zr - alpha_ * gain * zi + fb_re_ * dr - fb_im_ * di,
                gain * zi + alpha_ * gain * zr + fb_re_ * di + fb_im_ * dr};
    }

private:
    double pump_, alpha_, fb_re_, fb_im_;
};

static_assert(DelayModel<HopfModel>);
static_assert(DelayModel<ClassAModel>);

enum class ModelKind { hopf, class_a };

inline ModelKind parse_model_kind(std::string_view name) {
    if (name == "hopf") return ModelKind::hopf;
    if (name == "class_a") return ModelKind::class_a;
    throw ConfigError("unknown model '" + std::string(name) + "' (expected hopf or class_a)");
}

inline std::string model_kind_name(ModelKind kind) {
    return kind == ModelKind::hopf ? "hopf" : "class_a";
}

}  // namespace delayrc
