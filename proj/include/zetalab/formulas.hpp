#pragma once

#include "zetalab/arithmetic.hpp"
#include "zetalab/kernels.hpp"
#include "zetalab/special_functions.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

// Comparison record for one identity instance.
struct SidePair {
    cplx zero_side{};
    cplx arithmetic_side{};
    double zero_truncation_bound = 0.0;
    double term_truncation_bound = 0.0;
    long long zeros_used = 0;
    long long terms_used = 0;
    double uncertainty_envelope = 0.0;  // explicit O-term slack, 0 for exact identities
    std::vector<std::string> warnings;

    double residual() const { return std::abs(zero_side - arithmetic_side); }
    double combined_budget() const { return zero_truncation_bound + term_truncation_bound; }
};

enum class theorem1_m_choice { p_i, p_2i };

struct FormulaOptions {
    double quad_tol = 1e-9;
    double c_unc = 5.0;              // slack attached to O(1) terms
    double envelope_eps = 0.1;       // epsilon in x^{1+eps}/T^2 style envelopes
    double chi_half_width_fejer = 3000.0;  // chi-integral window for 1/z^2 kernels
    double min_fejer_coverage = 100.0;     // required zero coverage past Im rho
    long long pair_eval_cap = 1'000'000'000;
    theorem1_m_choice m_choice = theorem1_m_choice::p_i;
};

struct TheoremParams {
    double T = 0.0;
    double alpha = 0.0;
    double eps = 0.1;
    RationalArgument x;

    double M() const { return alpha * std::sqrt(std::log(T)); }
    double delta() const { return T / std::log(T); }

    std::vector<std::string> regime_warnings_theorem1() const {
        std::vector<std::string> w;
        double lim = std::pow(T, 1.0 - eps);
        if (x.r >= lim || x.s >= lim)
            w.push_back("theorem 1 regime violated: r or s >= T^(1-eps)");
        if (!(alpha < eps / 2.0) && x.cls != arg_class::one)
            w.push_back("theorem 1 regime violated: alpha >= eps/2");
        return w;
    }
    std::vector<std::string> regime_warnings_theorem2() const {
        std::vector<std::string> w;
        double lim = std::pow(T, 1.0 - alpha) / std::pow(std::log(T), 5.0);
        if (x.r >= lim || x.s >= lim)
            w.push_back("theorem 2 regime violated: r or s >= T^(1-alpha) log^-5 T");
        return w;
    }
};

namespace detail {

inline cplx complex_pow(double x, const cplx& expo) {
    return std::exp(expo * std::log(x));
}

// density majorant for zeros near height t
inline double density_bound(double t) {
    return std::log(std::max(t, 20.0) / constants::two_pi) / constants::two_pi + 0.3;
}

struct GammaTerm {
    cplx value{};        // (1/2 pi i) Int_(1-c) kernel(s) x^s chi'/chi(s) ds
    double error = 0.0;  // quadrature estimate + window tail bound
};

// Evaluates the gamma-factor contour integral on the Re(s)=1/2 line and adds
// back the s=0 residue of chi'/chi crossed when moving from Re(s)=1-c.
template <typename Kernel>
GammaTerm gamma_factor_term(const Kernel& kernel, double x, double center, double half_width,
                            double quad_tol, double tail_bound) {
    LineIntegralSpec spec;
    spec.abscissa = 0.5;
    spec.center = center;
    spec.half_width = half_width;
    spec.tolerance = quad_tol;
    auto f = [&](const cplx& s) {
        return kernel(s) * complex_pow(x, s) * chi_log_deriv(s, chi_mode::exact);
    };
    LineIntegralResult r = damped_line_integral(f, spec);
    GammaTerm g;
    g.value = r.value - kernel(cplx(0.0, 0.0));
    g.error = r.error_estimate + tail_bound;
    return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classical sharp-cutoff Landau-Gonek sum: sum_{0<gamma<T} x^rho vs
// -(T/2pi) Lambda(x), with the uniform error envelope reported.
// ---------------------------------------------------------------------------
inline SidePair gonek_sharp_sum(double x, double T, const ZeroSet& zeros, SieveTable& sieve) {
    require(x > 1.0 && std::abs(x - std::nearbyint(x)) < 1e-12,
            "gonek_sharp_sum: x must be an integer > 1");
    zeros.require_complete(T, "gonek_sharp_sum");
    SidePair out;
    kahan_sum<cplx> zs;
    double prec_budget = 0.0;
    for (const auto& rec : zeros.records) {
        if (rec.ordinate >= T) break;
        cplx rho(rec.real_part, rec.ordinate);
        cplx val = static_cast<double>(rec.multiplicity) * detail::complex_pow(x, rho);
        zs.add(val);
        prec_budget += std::abs(val) * std::log(x) * rec.precision;
        ++out.zeros_used;
    }
    out.zero_side = zs.value();
    std::size_t n = static_cast<std::size_t>(std::nearbyint(x));
    sieve.ensure(n);
    out.arithmetic_side = -(T / constants::two_pi) * sieve.von_mangoldt(n);
    out.terms_used = 1;
    out.zero_truncation_bound = prec_budget;
    out.uncertainty_envelope = x * std::log(2.0 * x * T) * std::log(std::log(3.0 * x));
    return out;
}

// ---------------------------------------------------------------------------
// Smooth Landau formula (Gaussian window): exact identity up to truncation.
//   sum_rho omega(rho) x^rho
//     = -(x^{1/2+iT}/2pi) [ratio sum + product sum] - gamma-factor integral
// ---------------------------------------------------------------------------
inline SidePair landau_sides(double x, const GaussianWindow& win, const ZeroSet& zeros,
                             SieveTable& sieve, const FormulaOptions& opts = {}) {
    require(x > 0, "landau_sides: x must be positive");
    double T = win.T, delta = win.delta;
    zeros.require_complete(T + 8.0 * delta, "landau_sides");
    SidePair out;

    kahan_sum<cplx> zside;
    double prec_budget = 0.0;
    for (const auto& rec : zeros.records) {
        cplx rho(rec.real_part, rec.ordinate);
        cplx w = gaussian_eval(win, rho);
        zside.add(static_cast<double>(rec.multiplicity) * w * detail::complex_pow(x, rho));
        // conjugate partner (negligible weight, included for correctness)
        cplx rhoc = std::conj(rho);
        zside.add(static_cast<double>(rec.multiplicity) * gaussian_eval(win, rhoc) *
                  detail::complex_pow(x, rhoc));
        prec_budget += std::abs(w) * std::sqrt(x) *
                       (std::abs(std::log(x)) + 2.0 * std::abs(rec.ordinate - T) / (delta * delta)) *
                       rec.precision;
        ++out.zeros_used;
    }
    out.zero_side = zside.value();
    double tmc = zeros.t_max_complete;
    out.zero_truncation_bound =
        std::sqrt(x) * detail::density_bound(tmc) * 0.5 * std::erfc((tmc - T) / delta) +
        prec_budget + 1e-14;

    WeightedSum plus = gaussian_lambda_sum(x, delta, lambda_variant::ratio,
                                           lambda_direction::plus, T, sieve);
    WeightedSum minus = gaussian_lambda_sum(x, delta, lambda_variant::product,
                                            lambda_direction::minus, T, sieve);
    cplx xhalf = detail::complex_pow(x, cplx(0.5, T));
    double gamma_tail = std::sqrt(x) * detail::density_bound(T + 9.0 * delta) *
                        (std::log((T + 9.0 * delta) / constants::two_pi) + 3.0) *
                        0.5 * std::erfc(9.0);
    detail::GammaTerm g = detail::gamma_factor_term([&](const cplx& s) { return gaussian_eval(win, s); },
                                                    x, T, 9.0 * delta, opts.quad_tol, gamma_tail);
    out.arithmetic_side =
        -xhalf / constants::two_pi * (plus.value + minus.value) - g.value;
    out.terms_used = plus.terms + minus.terms;
    out.term_truncation_bound =
        std::sqrt(x) / constants::two_pi * (plus.tail_bound + minus.tail_bound) + g.error;
    return out;
}

// ---------------------------------------------------------------------------
// Zero-isolation formula (narrow Gaussian at rho).
// ---------------------------------------------------------------------------
struct IsolationArithmetic {
    cplx value{};
    double term_bound = 0.0;
    long long terms = 0;
};

inline IsolationArithmetic isolation_arithmetic_side(double x, const IsolationWindow& win,
                                                     SieveTable& sieve,
                                                     const FormulaOptions& opts = {}) {
    require(x > 0, "isolation_arithmetic_side: x must be positive");
    double M = win.M;
    double a = 1.0 / (4.0 * M * M);
    WeightedSum s1 = detail::lambda_gaussian_general(x, a, win.rho, lambda_variant::ratio, sieve);
    WeightedSum s2 =
        detail::lambda_gaussian_general(x, a, 1.0 - win.rho, lambda_variant::product, sieve);
    cplx xrho = detail::complex_pow(x, win.rho);
    double gc = win.rho.imag();
    double gamma_tail = std::sqrt(x) * detail::density_bound(gc + 9.0 / M) *
                        (std::log(std::abs(gc + 9.0 / M) / constants::two_pi) + 3.0) * 0.5 *
                        std::erfc(9.0);
    detail::GammaTerm g =
        detail::gamma_factor_term([&](const cplx& s) { return isolation_eval(win, s); }, x, gc,
                                  9.0 / M, opts.quad_tol, gamma_tail);
    IsolationArithmetic out;
    out.value = -xrho / constants::two_pi * (s1.value + s2.value) - g.value;
    out.terms = s1.terms + s2.terms;
    out.term_bound = std::abs(xrho) / constants::two_pi * (s1.tail_bound + s2.tail_bound) + g.error;
    return out;
}

inline SidePair isolation_sides(double x, const IsolationWindow& win, const ZeroSet& zeros,
                                SieveTable& sieve, const FormulaOptions& opts = {}) {
    double gc = win.rho.imag();
    zeros.require_complete(gc + 8.0 / win.M, "isolation_sides");
    SidePair out;
    kahan_sum<cplx> zside;
    double prec_budget = 0.0;
    for (const auto& rec : zeros.records) {
        cplx rho(rec.real_part, rec.ordinate);
        cplx w = isolation_eval(win, rho);
        zside.add(static_cast<double>(rec.multiplicity) * w * detail::complex_pow(x, rho));
        cplx rhoc = std::conj(rho);
        zside.add(static_cast<double>(rec.multiplicity) * isolation_eval(win, rhoc) *
                  detail::complex_pow(x, rhoc));
        prec_budget += std::abs(w) * std::sqrt(x) *
                       (std::abs(std::log(x)) + 2.0 * win.M * win.M * std::abs(rec.ordinate - gc)) *
                       rec.precision;
        ++out.zeros_used;
    }
    out.zero_side = zside.value();
    double tmc = zeros.t_max_complete;
    out.zero_truncation_bound = std::sqrt(x) * detail::density_bound(tmc) * 0.5 *
                                    std::erfc(win.M * (tmc - gc)) +
                                prec_budget + 1e-14;
    IsolationArithmetic ar = isolation_arithmetic_side(x, win, sieve, opts);
    out.arithmetic_side = ar.value;
    out.terms_used = ar.terms;
    out.term_truncation_bound = ar.term_bound;
    return out;
}

// ---------------------------------------------------------------------------
// Log-weighted Landau formula. The displayed right-hand side of the source
// lemma carries the opposite sign; the identity that actually balances (and
// that the quadrature confirms) is
//   sum_rho omega(rho) x^rho log(gamma/2pi)
//     = +(Lambda(x)/2pi) Int omega(1/2+it) chi'/chi(1/2+it) dt + O(x^{1+eps}/T^2).
// ---------------------------------------------------------------------------
inline SidePair log_weighted_landau_sides(double x, const GaussianWindow& win,
                                          const ZeroSet& zeros, SieveTable& sieve,
                                          const FormulaOptions& opts = {}) {
    double T = win.T, delta = win.delta;
    require(x > 1.0 && x < T / (std::log(T) * std::log(T)),
            "log_weighted_landau_sides: requires 1 < x < T/log^2 T");
    zeros.require_complete(T + 8.0 * delta, "log_weighted_landau_sides");
    SidePair out;
    kahan_sum<cplx> zside;
    double prec_budget = 0.0;
    for (const auto& rec : zeros.records) {
        cplx rho(rec.real_part, rec.ordinate);
        cplx w = gaussian_eval(win, rho);
        double lg = std::log(rec.ordinate / constants::two_pi);
        zside.add(static_cast<double>(rec.multiplicity) * w * detail::complex_pow(x, rho) * lg);
        prec_budget += std::abs(w) * std::sqrt(x) * lg *
                       (std::abs(std::log(x)) + 2.0 * std::abs(rec.ordinate - T) / (delta * delta)) *
                       rec.precision;
        ++out.zeros_used;
    }
    out.zero_side = zside.value();
    double tmc = zeros.t_max_complete;
    out.zero_truncation_bound = std::sqrt(x) * detail::density_bound(tmc) *
                                    std::log(tmc / constants::two_pi) * 0.5 *
                                    std::erfc((tmc - T) / delta) +
                                prec_budget + 1e-14;

    double lam = 0.0;
    if (std::abs(x - std::nearbyint(x)) < 1e-9) {
        std::size_t n = static_cast<std::size_t>(std::nearbyint(x));
        sieve.ensure(n);
        lam = sieve.von_mangoldt(n);
    }
    LineIntegralSpec spec;
    spec.abscissa = 0.5;
    spec.center = T;
    spec.half_width = 9.0 * delta;
    spec.tolerance = opts.quad_tol;
    auto f = [&](const cplx& s) { return gaussian_eval(win, s) * chi_log_deriv(s, chi_mode::exact); };
    // damped_line_integral scales by 1/2pi, so lam * value is (lam/2pi) * Int dt
    LineIntegralResult integral = damped_line_integral(f, spec);
    out.arithmetic_side = lam * integral.value;
    out.terms_used = 1;
    out.term_truncation_bound = lam * integral.error_estimate;
    out.uncertainty_envelope = std::pow(x, 1.0 + opts.envelope_eps) / (T * T);
    return out;
}

// ---------------------------------------------------------------------------
// Fejer-kernel Landau formula (Lemma-level exact identity; the slow 1/z^2
// decay makes the zero-side truncation bound the dominant uncertainty).
// ---------------------------------------------------------------------------
inline SidePair fejer_landau_sides(double x, const FejerWindow& win, const ZeroSet& zeros,
                                   SieveTable& sieve, const FormulaOptions& opts = {}) {
    require(x > 0, "fejer_landau_sides: x must be positive");
    double gc = win.rho.imag();
    double tmc = zeros.t_max_complete;
    if (tmc < gc + opts.min_fejer_coverage)
        throw data_error("fejer_landau_sides: zero coverage past Im(rho) is insufficient");
    SidePair out;
    kahan_sum<cplx> zside;
    double prec_budget = 0.0;
    double lq = win.log_q();
    for (const auto& rec : zeros.records) {
        cplx rho(rec.real_part, rec.ordinate);
        cplx w = fejer_eval(win, rho);
        zside.add(static_cast<double>(rec.multiplicity) * w * detail::complex_pow(x, rho));
        cplx rhoc = std::conj(rho);
        zside.add(static_cast<double>(rec.multiplicity) * fejer_eval(win, rhoc) *
                  detail::complex_pow(x, rhoc));
        double u = std::max(std::abs(rec.ordinate - gc), 1.0 / lq);
        double wbound = std::min(lq * lq, 4.0 / (u * u));
        double wslope = std::min(lq * lq * lq, 2.0 * std::sqrt(wbound) * (lq + 2.0 / u));
        prec_budget += std::sqrt(x) * (wslope + wbound * std::abs(std::log(x))) * rec.precision;
        ++out.zeros_used;
    }
    out.zero_side = zside.value();
    double vup = tmc - gc, vdn = tmc + gc;
    double logfac = std::log(tmc / constants::two_pi) + 2.0;
    out.zero_truncation_bound =
        std::sqrt(x) * (4.0 / constants::two_pi) * logfac * (1.0 / vup + 1.0 / vdn) +
        prec_budget + 1e-14;

    FejerLambdaSums sums = fejer_lambda_sums(x, win.rho, win.Q, sieve);
    cplx xrho = detail::complex_pow(x, win.rho);
    double vchi = opts.chi_half_width_fejer;
    double chi_tail = std::sqrt(x) * (4.0 / constants::two_pi) *
                      (std::log((std::abs(gc) + vchi) / constants::two_pi) + 3.0) * 2.0 / vchi;
    detail::GammaTerm g = detail::gamma_factor_term(
        [&](const cplx& s) { return fejer_eval(win, s); }, x, gc, vchi,
        std::max(opts.quad_tol, 1e-8), chi_tail);
    out.arithmetic_side = -xrho * (sums.s1 + sums.s2 + sums.s3) - g.value +
                          fejer_eval(win, cplx(1.0, 0.0)) * x;
    out.terms_used = sums.terms;
    out.term_truncation_bound = g.error;
    return out;
}

// ---------------------------------------------------------------------------
// Theorem 1: Gaussian-coupled double sums over zeros.
// ---------------------------------------------------------------------------
namespace detail {

// window half-width where exp(-M^2 v^2) falls below 1e-15 of its peak
inline double coupling_window(double M) { return std::sqrt(std::log(1.0 / trunc_eps)) / M; }

}  // namespace detail

inline cplx theorem1_zero_side(const TheoremParams& p, const ZeroSet& zeros,
                               const FormulaOptions& opts, SidePair* budget = nullptr) {
    double T = p.T, M = p.M(), delta = p.delta();
    double x = p.x.value();
    double win = detail::coupling_window(M);
    zeros.require_complete(std::min(T + 8.0 * delta + win, 1e4), "theorem1_zero_side");
    GaussianWindow omega(T, delta);
    const auto& recs = zeros.records;
    std::vector<double> ords(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) ords[i] = recs[i].ordinate;
    kahan_sum<cplx> total;
    kahan_sum<double> absmass;
    long long pairs = 0;
    double outer_lo = T - 8.0 * delta - win, outer_hi = T + 8.0 * delta + win;
    std::size_t i0 = std::lower_bound(ords.begin(), ords.end(), outer_lo) - ords.begin();
    for (std::size_t i = i0; i < recs.size() && ords[i] <= outer_hi; ++i) {
        cplx rho(recs[i].real_part, ords[i]);
        cplx xr = static_cast<double>(recs[i].multiplicity) * detail::complex_pow(x, rho);
        std::size_t j0 = std::lower_bound(ords.begin(), ords.end(), ords[i] - win) - ords.begin();
        kahan_sum<cplx> inner;
        for (std::size_t j = j0; j < recs.size() && ords[j] <= ords[i] + win; ++j) {
            cplx rhop(recs[j].real_part, ords[j]);
            cplx d = rhop - rho;
            cplx coup = std::exp(M * M * d * d);
            inner.add(static_cast<double>(recs[j].multiplicity) * gaussian_eval(omega, rhop) * coup);
            ++pairs;
        }
        if (pairs > opts.pair_eval_cap)
            throw numeric_error("theorem1_zero_side: pair evaluation cap hit; narrow the window");
        total.add(xr * inner.value());
        absmass.add(std::abs(xr) * std::abs(inner.value()));
    }
    double scale = 2.0 * std::pow(constants::pi, 1.5) * M;
    cplx value = scale * total.value();
    if (budget) {
        budget->zeros_used = pairs;
        double dens = detail::density_bound(zeros.t_max_complete);
        double inner_tail = dens * constants::sqrt_pi / M * std::erfc(M * win);
        double outer_tail = std::sqrt(x) * dens * 0.5 * std::erfc(8.0) *
                            (dens * constants::sqrt_pi / M + 1.0);
        double prec = 2.0 * (std::abs(std::log(x)) + M) * 1e-10 * scale * absmass.value();
        budget->zero_truncation_bound =
            scale * (std::sqrt(x) * dens * (8.0 * delta + win) * inner_tail + outer_tail) + prec;
    }
    return value;
}

struct TheoremArithmetic {
    cplx value{};
    double uncertainty = 0.0;
    double term_bound = 0.0;
    long long terms = 0;
    std::vector<std::string> warnings;
};

inline TheoremArithmetic theorem1_arithmetic_side(const TheoremParams& p, const ZeroSet& zeros,
                                                  SieveTable& sieve,
                                                  const FormulaOptions& opts = {}) {
    double M = p.M(), T = p.T;
    double fourM2 = 4.0 * M * M;
    TheoremArithmetic out;
    switch (p.x.cls) {
        case arg_class::one: {
            WeightedSum ll = lambda_sq_gaussian_sum(M, sieve);
            GaussianWindow omega(T, p.delta());
            zeros.require_complete(T + 8.0 * p.delta(), "theorem1_arithmetic_side");
            kahan_sum<double> wlog;
            for (const auto& rec : zeros.records)
                wlog.add(static_cast<double>(rec.multiplicity) *
                         gaussian_eval(omega, cplx(rec.real_part, rec.ordinate)).real() *
                         std::log(rec.ordinate));
            out.value = 2.0 * ll.value + wlog.value();
            out.uncertainty = opts.c_unc;
            out.term_bound = 2.0 * ll.tail_bound +
                             detail::density_bound(zeros.t_max_complete) *
                                 std::log(zeros.t_max_complete) * 0.5 * std::erfc(8.0);
            out.terms = ll.terms + static_cast<long long>(zeros.records.size());
            break;
        }
        case arg_class::prime_power: {
            double lp = std::log(static_cast<double>(p.x.p));
            double m = opts.m_choice == theorem1_m_choice::p_i
                           ? std::pow(static_cast<double>(p.x.p), p.x.i)
                           : std::pow(static_cast<double>(p.x.p), 2.0 * p.x.i);
            double lm = std::log(m);
            out.value = -lp * lp * (1.0 + std::exp(-lm * lm / fourM2)) * (std::log(T) / lp);
            out.uncertainty = lp * lp / static_cast<double>(p.x.p);
            out.terms = 1;
            break;
        }
        case arg_class::two_prime_powers: {
            double lp = std::log(static_cast<double>(p.x.p));
            double lq = std::log(static_cast<double>(p.x.q));
            double lpi = p.x.i * lp, lqj = p.x.j * lq;
            out.value = lp * lq * (std::exp(-lpi * lpi / fourM2) + std::exp(-lqj * lqj / fourM2));
            out.terms = 2;
            break;
        }
        case arg_class::rational_prime_powers:
            out.value = 0.0;
            out.warnings.push_back(
                "theorem 1 case table omits rational x = p^i/q^j; returning 0");
            break;
        case arg_class::other:
            out.value = 0.0;
            break;
    }
    return out;
}

// x = 1 instance with the weight attached to the outer zero. The displayed
// right-hand side is implemented verbatim; its O(1) slack is reported, and the
// residual the laboratory measures is the point of the comparison.
inline SidePair theorem1_x1_sides(const TheoremParams& p, const ZeroSet& zeros,
                                  SieveTable& sieve, const FormulaOptions& opts = {}) {
    require(p.x.cls == arg_class::one, "theorem1_x1_sides: requires x = 1");
    double T = p.T, M = p.M(), delta = p.delta();
    double win = detail::coupling_window(M);
    zeros.require_complete(std::min(T + 8.0 * delta + win, 1e4), "theorem1_x1_sides");
    GaussianWindow omega(T, delta);
    const auto& recs = zeros.records;
    std::vector<double> ords(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) ords[i] = recs[i].ordinate;
    SidePair out;
    kahan_sum<cplx> total;
    kahan_sum<double> absmass;
    long long pairs = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        cplx rho(recs[i].real_part, ords[i]);
        cplx w = static_cast<double>(recs[i].multiplicity) * gaussian_eval(omega, rho);
        if (std::abs(w) == 0.0) continue;
        std::size_t j0 = std::lower_bound(ords.begin(), ords.end(), ords[i] - win) - ords.begin();
        kahan_sum<cplx> inner;
        for (std::size_t j = j0; j < recs.size() && ords[j] <= ords[i] + win; ++j) {
            cplx rhop(recs[j].real_part, ords[j]);
            cplx d = rhop - rho;
            inner.add(static_cast<double>(recs[j].multiplicity) * std::exp(M * M * d * d));
            ++pairs;
        }
        if (pairs > opts.pair_eval_cap)
            throw numeric_error("theorem1_x1_sides: pair evaluation cap hit");
        total.add(w * inner.value());
        absmass.add(std::abs(w) * std::abs(inner.value()));
    }
    double scale = 2.0 * std::pow(constants::pi, 1.5) * M;
    out.zero_side = scale * total.value();
    out.zeros_used = pairs;
    double dens = detail::density_bound(zeros.t_max_complete);
    out.zero_truncation_bound =
        scale * (dens * constants::sqrt_pi / M * std::erfc(M * win) * dens * (16.0 * delta) +
                 dens * 0.5 * std::erfc(8.0) * (dens * constants::sqrt_pi / M + 1.0)) +
        2.0 * M * 1e-10 * scale * absmass.value();

    TheoremArithmetic ar = theorem1_arithmetic_side(p, zeros, sieve, opts);
    out.arithmetic_side = ar.value;
    out.terms_used = ar.terms;
    out.term_truncation_bound = ar.term_bound;
    out.uncertainty_envelope = ar.uncertainty;
    out.warnings = p.regime_warnings_theorem1();
    return out;
}

// ---------------------------------------------------------------------------
// Theorem 2: omega-weighted Fejer double sums.
// ---------------------------------------------------------------------------
inline cplx theorem2_zero_side(const TheoremParams& p, const ZeroSet& zeros,
                               const FormulaOptions& opts, SidePair* budget = nullptr) {
    double T = p.T, delta = p.delta();
    double x = p.x.value();
    zeros.require_complete(std::min(T + 8.0 * delta, 1e4), "theorem2_zero_side");
    GaussianWindow omega(T, delta);
    double lq = p.alpha * std::log(T);
    const auto& recs = zeros.records;
    kahan_sum<cplx> total;
    kahan_sum<double> absmass;
    long long pairs = 0;
    double tmc = zeros.t_max_complete;
    double tail_acc = 0.0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        cplx rho(recs[i].real_part, recs[i].ordinate);
        double w = gaussian_eval(omega, rho).real() * recs[i].multiplicity;
        if (w == 0.0) continue;
        FejerWindow fw(rho, p.alpha, T);
        kahan_sum<cplx> inner;
        for (std::size_t j = 0; j < recs.size(); ++j) {
            cplx rhop(recs[j].real_part, recs[j].ordinate);
            double mj = recs[j].multiplicity;
            inner.add(mj * fejer_eval(fw, rhop));
            inner.add(mj * fejer_eval(fw, std::conj(rhop)));
            pairs += 2;
        }
        if (pairs > opts.pair_eval_cap)
            throw numeric_error("theorem2_zero_side: pair evaluation cap hit");
        cplx xr = detail::complex_pow(x, rho);
        total.add(w * xr * inner.value());
        absmass.add(std::abs(w * xr) * std::abs(inner.value()));
        double g = recs[i].ordinate;
        tail_acc += w * std::sqrt(x) * (4.0 / constants::two_pi) *
                    (std::log(tmc / constants::two_pi) + 2.0) *
                    (1.0 / (tmc - g) + 1.0 / (tmc + g));
    }
    if (budget) {
        budget->zeros_used = pairs;
        budget->zero_truncation_bound =
            tail_acc + 2.0 * (std::abs(std::log(x)) + lq) * 1e-10 * absmass.value() + 1e-14;
    }
    return total.value();
}

inline TheoremArithmetic theorem2_arithmetic_side(const TheoremParams& p,
                                                  const FormulaOptions& opts = {}) {
    double T = p.T, alpha = p.alpha;
    double lt = std::log(T);
    double lq = alpha * lt;  // log Q
    double Q = std::pow(T, alpha);
    TheoremArithmetic out;
    auto tent = [&](double pk) {  // log(Q/p^k) 1_{p^k < Q}
        return pk < Q ? std::log(Q / pk) : 0.0;
    };
    switch (p.x.cls) {
        case arg_class::one:
            out.value = lq * lq * lq / (6.0 * constants::pi) +
                        alpha / constants::two_pi * lt * lt * lt;
            out.uncertainty = opts.c_unc;
            break;
        case arg_class::two_prime_powers: {
            double lp = std::log(static_cast<double>(p.x.p));
            double lqq = std::log(static_cast<double>(p.x.q));
            double pi_ = std::pow(static_cast<double>(p.x.p), p.x.i);
            double qj = std::pow(static_cast<double>(p.x.q), p.x.j);
            out.value = lp * lqq / constants::two_pi * (tent(pi_) + tent(qj));
            break;
        }
        case arg_class::prime_power: {
            double lp = std::log(static_cast<double>(p.x.p));
            double pi_ = std::pow(static_cast<double>(p.x.p), p.x.i);
            out.value = -(lt * lp / constants::two_pi) * (lq - tent(pi_));
            break;
        }
        case arg_class::rational_prime_powers: {
            double lp = std::log(static_cast<double>(p.x.p));
            double lqq = std::log(static_cast<double>(p.x.q));
            double pi_ = std::pow(static_cast<double>(p.x.p), p.x.i);
            double qj = std::pow(static_cast<double>(p.x.q), p.x.j);
            out.value = lp * lqq / (constants::two_pi * qj) * (tent(pi_) + tent(qj));
            break;
        }
        case arg_class::other:
            out.value = 0.0;
            break;
    }
    out.warnings = p.regime_warnings_theorem2();
    return out;
}

inline SidePair theorem2_sides(const TheoremParams& p, const ZeroSet& zeros,
                               const FormulaOptions& opts = {}) {
    SidePair out;
    out.zero_side = theorem2_zero_side(p, zeros, opts, &out);
    TheoremArithmetic ar = theorem2_arithmetic_side(p, opts);
    out.arithmetic_side = ar.value;
    out.uncertainty_envelope = ar.uncertainty;
    out.warnings = ar.warnings;
    return out;
}

inline SidePair theorem1_sides(const TheoremParams& p, const ZeroSet& zeros, SieveTable& sieve,
                               const FormulaOptions& opts = {}) {
    if (p.x.cls == arg_class::one) return theorem1_x1_sides(p, zeros, sieve, opts);
    SidePair out;
    out.zero_side = theorem1_zero_side(p, zeros, opts, &out);
    TheoremArithmetic ar = theorem1_arithmetic_side(p, zeros, sieve, opts);
    out.arithmetic_side = ar.value;
    out.terms_used = ar.terms;
    out.term_truncation_bound = ar.term_bound;
    out.uncertainty_envelope = ar.uncertainty;
    out.warnings = ar.warnings;
    for (auto& w : p.regime_warnings_theorem1()) out.warnings.push_back(w);
    return out;
}

}  // namespace zetalab
