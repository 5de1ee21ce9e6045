#pragma once

#include "zetalab/common.hpp"

namespace zetalab {

// Normalized Gaussian weight centered at 1/2 + iT with width Delta;
// unit mass along the critical line.
struct GaussianWindow {
    double T = 0.0;
    double delta = 0.0;

    GaussianWindow(double T_, double delta_) : T(T_), delta(delta_) {
        require(delta > 0, "GaussianWindow: Delta must be positive");
    }
    static GaussianWindow with_default_delta(double T) {
        require(T > 10.0, "GaussianWindow: T must exceed 10");
        return GaussianWindow(T, T / std::log(T));
    }
    cplx center() const { return {0.5, T}; }
};

inline cplx gaussian_eval(const GaussianWindow& win, const cplx& s) {
    cplx z = s - win.center();
    cplx z2 = z * z;
    if (z2.real() > 700.0 * win.delta * win.delta)
        throw numeric_error("gaussian_eval: off-line blowup");
    return std::exp(z2 / (win.delta * win.delta)) / (constants::sqrt_pi * win.delta);
}

// Narrow Gaussian centered at a zero rho with inverse width M; identical to
// the Gaussian window under Delta = 1/M.
struct IsolationWindow {
    cplx rho;
    double M = 0.0;

    IsolationWindow(cplx rho_, double M_) : rho(rho_), M(M_) {
        require(M > 0, "IsolationWindow: M must be positive");
    }
};

inline cplx isolation_eval(const IsolationWindow& win, const cplx& s) {
    cplx z = s - win.rho;
    cplx e = win.M * win.M * z * z;
    if (e.real() > 700.0) throw numeric_error("isolation_eval: off-line blowup");
    return win.M / constants::sqrt_pi * std::exp(e);
}

// Squared-sinc Fejer kernel ((Q^{z/2} - Q^{-z/2})/z)^2 centered at rho,
// Q = T^alpha.
struct FejerWindow {
    cplx rho;
    double alpha = 0.0;
    double T = 0.0;
    double Q = 0.0;

    FejerWindow(cplx rho_, double alpha_, double T_)
        : rho(rho_), alpha(alpha_), T(T_), Q(std::pow(T_, alpha_)) {
        require(alpha > 0.0 && alpha < 1.0, "FejerWindow: alpha must lie in (0,1)");
        require(Q > 1.0, "FejerWindow: Q = T^alpha must exceed 1");
    }
    double log_q() const { return alpha * std::log(T); }
};

inline cplx fejer_eval(const FejerWindow& win, const cplx& s) {
    cplx z = s - win.rho;
    double lq = win.log_q();
    if (std::abs(z.real()) * lq > 1400.0) throw numeric_error("fejer_eval: overflow");
    if (std::abs(z) < 1e-4) {
        // removable singularity: (lq)^2 (sinh(zeta)/zeta)^2, zeta = z lq / 2
        cplx zeta2 = z * z * lq * lq / 4.0;
        cplx series = 1.0 + zeta2 / 3.0 + zeta2 * zeta2 * (2.0 / 45.0) +
                      zeta2 * zeta2 * zeta2 / 315.0;
        return lq * lq * series;
    }
    cplx half = z * lq / 2.0;
    cplx w = (std::exp(half) - std::exp(-half)) / z;
    return w * w;
}

enum class mellin_variant { direct, reflected };

// (1/2pi) x^{1/2 +- iT} e^{-Delta^2 log^2 x / 4}: the Gaussian window's
// vertical-line transform, independent of the contour abscissa.
inline cplx gaussian_mellin_closed(const GaussianWindow& win, double x,
                                   mellin_variant variant) {
    require(x > 0, "gaussian_mellin_closed: x must be positive");
    double lx = std::log(x);
    double damp = std::exp(-win.delta * win.delta * lx * lx / 4.0);
    double sign = variant == mellin_variant::direct ? 1.0 : -1.0;
    return std::sqrt(x) * damp / constants::two_pi * unit_phase(sign * win.T * lx);
}

// Tent transform of the Fejer kernel: y^{rho} log(Qy) on (1/Q, 1),
// y^{rho} log(Q/y) on [1, Q), zero outside; the reflected variant swaps
// rho -> 1 - rho.
inline cplx fejer_mellin_closed(const FejerWindow& win, double y, mellin_variant variant) {
    require(y > 0, "fejer_mellin_closed: y must be positive");
    if (y <= 1.0 / win.Q || y >= win.Q) return {0.0, 0.0};
    cplx expo = variant == mellin_variant::direct ? win.rho : 1.0 - win.rho;
    double weight = y < 1.0 ? std::log(win.Q * y) : std::log(win.Q / y);
    return std::exp(expo * std::log(y)) * weight;
}

}  // namespace zetalab
