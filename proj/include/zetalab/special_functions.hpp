#pragma once

#include <array>
#include <functional>

#include "zetalab/common.hpp"

namespace zetalab {

namespace detail {

// B_{2k}/(2k(2k-1)), k = 1..11: Stirling series coefficients for log Gamma.
inline constexpr std::array<double, 11> lgamma_coeff = {
    1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188,
    -691.0 / 360360, 1.0 / 156, -3617.0 / 122400, 43867.0 / 244188,
    -174611.0 / 125400, 77683.0 / 5796};

// B_{2k}/(2k), k = 1..8: asymptotic series coefficients for digamma.
inline constexpr std::array<double, 8> digamma_coeff = {
    1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
    1.0 / 132, -691.0 / 32760, 1.0 / 12, -3617.0 / 8160};

inline bool near_nonpositive_integer(const cplx& s, double tol = 1e-12) {
    if (s.real() > 0.5) return false;
    double r = std::nearbyint(s.real());
    return r <= 0.0 && std::abs(s.real() - r) < tol && std::abs(s.imag()) < tol;
}

inline cplx lgamma_stirling(const cplx& s) {
    cplx r = (s - 0.5) * std::log(s) - s + 0.5 * constants::log_two_pi;
    cplx s2 = 1.0 / (s * s);
    cplx p = 1.0 / s;
    for (double c : lgamma_coeff) {
        r += c * p;
        p *= s2;
    }
    return r;
}

}  // namespace detail

// Principal branch of log Gamma; Stirling series for Re(s) >= 8, upward
// recurrence below. Continuous along vertical lines off the negative axis.
inline cplx log_gamma(cplx s) {
    if (detail::near_nonpositive_integer(s))
        throw domain_error("log_gamma: pole at non-positive integer");
    cplx shift = 0.0;
    while (s.real() < 8.0) {
        if (std::abs(s) < 1e-290) throw domain_error("log_gamma: pole at non-positive integer");
        shift += std::log(s);
        s += 1.0;
    }
    cplx r = detail::lgamma_stirling(s) - shift;
    check_finite(r, "log_gamma");
    return r;
}

inline cplx digamma(cplx s) {
    if (detail::near_nonpositive_integer(s))
        throw domain_error("digamma: pole at non-positive integer");
    cplx shift = 0.0;
    while (s.real() < 8.0) {
        if (std::abs(s) < 1e-290) throw domain_error("digamma: pole at non-positive integer");
        shift += 1.0 / s;
        s += 1.0;
    }
    cplx s2 = 1.0 / (s * s);
    cplx r = std::log(s) - 0.5 / s;
    cplx p = s2;
    for (double c : detail::digamma_coeff) {
        r -= c * p;
        p *= s2;
    }
    r -= shift;
    check_finite(r, "digamma");
    return r;
}

// cot(z) without overflow for large |Im z|.
inline cplx cot(const cplx& z) {
    if (z.imag() > 20.0) {
        cplx x = std::exp(cplx(0, 2) * z);
        return cplx(0, 1) * (x + 1.0) / (x - 1.0);
    }
    if (z.imag() < -20.0) {
        cplx x = std::exp(cplx(0, -2) * z);
        return cplx(0, 1) * (1.0 + x) / (1.0 - x);
    }
    return std::cos(z) / std::sin(z);
}

enum class chi_mode { exact, asymptotic };

// Logarithmic derivative of the functional-equation factor
// chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s).
// exact:      log 2pi + (pi/2) cot(pi s/2) - psi(1-s)
// asymptotic: -log(t/2pi) - i(1-2*sigma)/t for s = sigma + i t, |t| >= 10.
inline cplx chi_log_deriv(const cplx& s, chi_mode mode = chi_mode::exact) {
    if (mode == chi_mode::asymptotic) {
        double t = s.imag();
        if (std::abs(t) < 10.0)
            throw domain_error("chi_log_deriv: asymptotic mode needs |Im s| >= 10");
        double at = std::abs(t);
        cplx v = cplx(-std::log(at / constants::two_pi), -(1.0 - 2.0 * s.real()) / at);
        return t > 0 ? v : std::conj(v);
    }
    // Poles of cot(pi s/2) sit at even integers, poles of psi(1-s) at
    // integers >= 1; refuse evaluation near any integer on the real axis.
    double r = std::nearbyint(s.real());
    bool near_int = std::abs(s.real() - r) < 1e-8 && std::abs(s.imag()) < 1e-8;
    bool cot_pole = near_int && std::fmod(std::abs(r), 2.0) < 0.5;
    bool psi_pole = near_int && r >= 1.0;
    if (cot_pole || psi_pole) throw domain_error("chi_log_deriv: pole");
    return constants::log_two_pi + (constants::pi / 2) * cot(constants::pi * s / 2.0) -
           digamma(1.0 - s);
}

// ---------------------------------------------------------------------------
// Damped vertical-line integrals (the quadrature oracle behind the closed-form
// Mellin transforms and the chi-factor terms).
// ---------------------------------------------------------------------------

struct LineIntegralSpec {
    double abscissa = 1.5;   // real part c of the integration line
    double center = 0.0;     // imaginary-axis center of the damped window
    double half_width = 0.0; // integration cut-off around the center
    double tolerance = 1e-10;
    int max_depth = 48;
    long long max_evaluations = 80'000'000;
};

struct LineIntegralResult {
    cplx value;
    double error_estimate = 0.0;
    long long evaluations = 0;
};

namespace detail {

// Gauss7/Kronrod15 nodes and weights (QUADPACK dqk15).
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> gk_wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gk_wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
void gk15(const F& f, double a, double b, cplx& kronrod, double& err) {
    double h = 0.5 * (b - a);
    double c = 0.5 * (a + b);
    cplx fc = f(c);
    cplx resk = gk_wk[7] * fc;
    cplx resg = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        cplx f1 = f(c - h * gk_nodes[i]);
        cplx f2 = f(c + h * gk_nodes[i]);
        resk += gk_wk[i] * (f1 + f2);
        if (i % 2 == 1) resg += gk_wg[i / 2] * (f1 + f2);
    }
    kronrod = resk * h;
    err = std::abs((resk - resg) * h);
}

}  // namespace detail

// (1/2*pi*i) * Integral of f(c + i t) over t in [center-hw, center+hw],
// by adaptive Gauss-Kronrod bisection. The caller guarantees the integrand
// is below tolerance outside the window.
template <typename F>
LineIntegralResult damped_line_integral(const F& f, const LineIntegralSpec& spec) {
    require(spec.half_width > 0, "damped_line_integral: half_width must be > 0");
    require(spec.tolerance > 0, "damped_line_integral: tolerance must be > 0");
    struct Panel {
        double a, b, tol;
        int depth;
    };
    auto eval = [&](double t) { return f(cplx(spec.abscissa, t)); };
    std::vector<Panel> stack;
    stack.push_back({spec.center - spec.half_width, spec.center + spec.half_width,
                     spec.tolerance * constants::two_pi, 0});
    kahan_sum<cplx> total;
    kahan_sum<double> total_err;
    long long evals = 0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        cplx v;
        double e;
        detail::gk15(eval, p.a, p.b, v, e);
        evals += 15;
        if (evals > spec.max_evaluations)
            throw numeric_error("damped_line_integral: evaluation budget exhausted");
        if (e <= p.tol || (p.b - p.a) < 1e-13 * (1.0 + std::abs(p.a))) {
            total.add(v);
            total_err.add(e);
            continue;
        }
        if (p.depth >= spec.max_depth)
            throw numeric_error("damped_line_integral: tolerance unreachable at max depth");
        double m = 0.5 * (p.a + p.b);
        stack.push_back({m, p.b, 0.5 * p.tol, p.depth + 1});
        stack.push_back({p.a, m, 0.5 * p.tol, p.depth + 1});
    }
    LineIntegralResult res;
    res.value = total.value() / constants::two_pi;
    res.error_estimate = total_err.value() / constants::two_pi;
    res.evaluations = evals;
    check_finite(res.value, "damped_line_integral");
    return res;
}

}  // namespace zetalab
