#pragma once

// Independent oracles used by the tests: brute-force summation, alternative
// series, finite differences. Deliberately kept separate from the library
// implementations they check.

#include <random>

#include "zetalab/arithmetic.hpp"
#include "zetalab/common.hpp"
#include "zetalab/zeta.hpp"

namespace oracles {

using zetalab::cplx;

// Stirling series evaluated at s + shift, walked back down by the recurrence.
// Independent coefficients list (B_2k/(2k(2k-1))) entered separately on purpose.
inline cplx log_gamma_shifted_stirling(cplx s, int shift = 8) {
    cplx z = s + static_cast<double>(shift);
    const double c[] = {8.3333333333333333e-02, -2.7777777777777778e-03,
                        7.9365079365079365e-04, -5.9523809523809524e-04,
                        8.4175084175084175e-04, -1.9175269175269175e-03,
                        6.4102564102564103e-03, -2.9550653594771242e-02};
    cplx r = (z - 0.5) * std::log(z) - z + 0.9189385332046727417803297;
    cplx zp = z;
    for (double ck : c) {
        r += ck / zp;
        zp *= z * z;
    }
    for (int j = 0; j < shift; ++j) r -= std::log(s + static_cast<double>(j));
    return r;
}

// direct von Mangoldt via trial division, no sieve
inline double lambda_direct(long long n) {
    if (n < 2) return 0.0;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n));
}

// brute-force Gaussian-weighted Lambda sum over n <= nmax
inline cplx lambda_gaussian_brute(double x, double a, cplx s0, bool ratio, long long nmax) {
    cplx sum = 0.0;
    for (long long n = 1; n <= nmax; ++n) {
        double lam = lambda_direct(n);
        if (lam == 0.0) continue;
        double u = ratio ? std::log(static_cast<double>(n) / x)
                         : std::log(static_cast<double>(n) * x);
        sum += lam * std::exp(-s0 * std::log(static_cast<double>(n))) * std::exp(-a * u * u);
    }
    return sum;
}

// independent zero location: plain bisection on hardy_Z at half the scan step
inline std::vector<double> bisection_zeros(double t_min, double t_max, double step) {
    std::vector<double> out;
    double t = t_min;
    double zt = zetalab::hardy_Z(t);
    while (t < t_max) {
        double t2 = std::min(t + step, t_max);
        double zt2 = zetalab::hardy_Z(t2);
        if ((zt < 0) != (zt2 < 0)) {
            double a = t, b = t2, fa = zt;
            for (int i = 0; i < 60; ++i) {
                double m = 0.5 * (a + b);
                double fm = zetalab::hardy_Z(m);
                if ((fa < 0) != (fm < 0))
                    b = m;
                else {
                    a = m;
                    fa = fm;
                }
            }
            out.push_back(0.5 * (a + b));
        }
        t = t2;
        zt = zt2;
    }
    return out;
}

inline std::mt19937_64 test_rng(unsigned seed = 20260809u) { return std::mt19937_64(seed); }

}  // namespace oracles
