#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "zetalab/special_functions.hpp"

namespace zetalab {

namespace detail {

// B_{2k}/(2k)!, k = 1..8: Euler-Maclaurin correction coefficients.
inline constexpr std::array<double, 8> em_coeff = {
    8.3333333333333333e-02, -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08, -5.2841901386874932e-10,
    1.3382536530684679e-11, -3.3896802963225829e-13};

inline long double theta_series_ld(long double t) {
    const long double pi_l = 3.14159265358979323846264338327950288L;
    long double u = t / (2.0L * pi_l);
    long double t3 = t * t * t;
    // the t^-5 term keeps the error below 1e-10 all the way down to t = 10
    return 0.5L * t * std::log(u) - 0.5L * t - pi_l / 8.0L + 1.0L / (48.0L * t) +
           7.0L / (5760.0L * t3) + 31.0L / (80640.0L * t3 * t * t);
}

}  // namespace detail

// Riemann-Siegel theta, asymptotic series; error < 1e-10 for t >= 10.
inline double rs_theta(double t) {
    require(t >= 10.0, "rs_theta: requires t >= 10");
    return static_cast<double>(detail::theta_series_ld(t));
}

namespace detail {

inline double theta_mod_two_pi(double t) {
    const long double two_pi_l = 6.28318530717958647692528676655900577L;
    long double th = theta_series_ld(t);
    long double r = std::fmod(th, two_pi_l);
    return static_cast<double>(r);
}

}  // namespace detail

// Riemann zeta by Euler-Maclaurin for Re(s) >= 0 (tail below 1e-12 for
// |Im s| <= 1e4), functional-equation fallback for Re(s) < 0.
inline cplx zeta(const cplx& s) {
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12) throw domain_error("zeta: pole at s = 1");
    if (s.real() < 0.0) {
        // chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), via logs
        cplx z = constants::pi * s / 2.0;
        cplx log_sin;
        if (z.imag() > 1.0)
            log_sin = cplx(0, -1) * z + std::log(cplx(1, 0) - std::exp(cplx(0, 2) * z)) -
                      std::log(cplx(0, 2));
        else if (z.imag() < -1.0)
            log_sin = cplx(0, 1) * z + std::log(cplx(1, 0) - std::exp(cplx(0, -2) * z)) -
                      std::log(cplx(0, 2));
        else
            log_sin = std::log(std::sin(z));
        cplx log_chi = s * std::log(2.0) + (s - 1.0) * std::log(constants::pi) + log_sin +
                       log_gamma(1.0 - s);
        return std::exp(log_chi) * zeta(1.0 - s);
    }
    double t = s.imag();
    std::size_t N = static_cast<std::size_t>(std::max(20.0, std::ceil(1.3 * std::abs(t))));
    const log_table& tab = log_table::instance(N);
    kahan_sum<cplx> sum;
    for (std::size_t n = 1; n < N; ++n) {
        double mag = std::exp(-s.real() * tab.hi(n));
        double phi = reduced_phase(-t, tab.hi(n), tab.lo(n));
        sum.add(mag * unit_phase(phi));
    }
    double logN = tab.hi(N);
    cplx Npow_mag = std::exp(-s.real() * logN) * unit_phase(reduced_phase(-t, logN, tab.lo(N)));
    // N^{1-s}/(s-1) + N^{-s}/2
    cplx r = Npow_mag * (static_cast<double>(N) / (s - 1.0) + 0.5);
    // Bernoulli corrections: sum_k B_2k/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
    cplx poch = s;
    cplx npow = Npow_mag / static_cast<double>(N);
    for (std::size_t k = 0; k < detail::em_coeff.size(); ++k) {
        r += detail::em_coeff[k] * poch * npow;
        if (k + 1 < detail::em_coeff.size()) {
            poch *= (s + cplx(2.0 * k + 1.0)) * (s + cplx(2.0 * k + 2.0));
            npow /= static_cast<double>(N) * static_cast<double>(N);
        }
    }
    sum.add(r);
    cplx v = sum.value();
    check_finite(v, "zeta");
    return v;
}

// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + i t); real for real t.
inline double hardy_Z(double t) {
    require(t >= 10.0, "hardy_Z: requires t >= 10");
    cplx z = unit_phase(detail::theta_mod_two_pi(t)) * zeta(cplx(0.5, t));
    if (std::abs(z.imag()) >= 1e-10 * std::max(1.0, std::abs(z)))
        throw numeric_error("hardy_Z: imaginary residue above threshold");
    return z.real();
}

namespace detail {

// Riemann-Siegel main formula with the C0 remainder term; scan-grade accuracy
// (~1e-4 at t=100, better higher). Falls back to the Euler-Maclaurin route
// near the removable singularities of C0.
inline double hardy_Z_scan(double t) {
    if (t < 120.0) return hardy_Z(t);
    double a = std::sqrt(t / constants::two_pi);
    double m = std::floor(a);
    double p = a - m;
    if (std::abs(p - 0.25) < 0.004 || std::abs(p - 0.75) < 0.004) return hardy_Z(t);
    double thm = theta_mod_two_pi(t);
    const log_table& tab = log_table::instance(static_cast<std::size_t>(m));
    kahan_sum<double> sum;
    for (std::size_t n = 1; n <= static_cast<std::size_t>(m); ++n) {
        double phi = thm - reduced_phase(t, tab.hi(n), tab.lo(n));
        sum.add(std::cos(phi) / std::sqrt(static_cast<double>(n)));
    }
    double c0 = std::cos(constants::two_pi * (p * p - p - 0.0625)) /
                std::cos(constants::two_pi * p);
    double rem = (static_cast<long>(m) % 2 == 1 ? 1.0 : -1.0) *
                 std::pow(t / constants::two_pi, -0.25) * c0;
    return 2.0 * sum.value() + rem;
}

inline double mean_gap(double t) {
    return constants::two_pi / std::log(std::max(t, 15.0) / constants::two_pi);
}

// Deterministic bracketed root refinement on hardy_Z.
inline double refine_zero(double a, double b, double fa, double fb) {
    for (int it = 0; it < 100 && (b - a) > 1e-12; ++it) {
        double m;
        if (it % 2 == 1 || fb == fa) {
            m = 0.5 * (a + b);  // periodic bisection keeps the bracket shrinking
        } else {
            m = (a * fb - b * fa) / (fb - fa);
            double lo = a + 0.05 * (b - a), hi = b - 0.05 * (b - a);
            m = std::min(std::max(m, lo), hi);
        }
        double fm = hardy_Z(m);
        if (fm == 0.0) return m;
        if ((fa < 0) != (fm < 0)) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

enum class zero_source { computed, imported };

struct ZeroRecord {
    double ordinate = 0.0;       // gamma > 0
    double real_part = 0.5;      // sigma
    int multiplicity = 1;
    double precision = 1e-10;    // radius of the enclosing interval
    zero_source source = zero_source::computed;
};

struct ZeroSet {
    std::vector<ZeroRecord> records;          // strictly ascending ordinates
    double t_max_complete = 0.0;              // certified-complete height
    std::vector<std::string> anomalies;

    std::size_t count_below(double T) const {
        ZeroRecord probe;
        probe.ordinate = T;
        auto it = std::lower_bound(records.begin(), records.end(), probe,
                                   [](const ZeroRecord& x, const ZeroRecord& y) {
                                       return x.ordinate < y.ordinate;
                                   });
        return static_cast<std::size_t>(it - records.begin());
    }
    void require_complete(double T, const char* who) const {
        if (t_max_complete + 1e-9 < T)
            throw data_error(std::string(who) + ": zero set not complete to required height");
    }
};

// Smooth part of the zero counting function: theta(T)/pi + 1.
inline double zero_count_theoretic(double T) {
    require(T >= 10.0, "zero_count_theoretic: requires T >= 10");
    return rs_theta(T) / constants::pi + 1.0;
}

namespace detail {

inline void scan_range(double a, double b, double step, bool accurate,
                       std::vector<std::pair<double, double>>& brackets) {
    if (b <= a) return;
    auto Z = [&](double t) { return accurate ? hardy_Z(t) : hardy_Z_scan(t); };
    double t = a;
    double zt = Z(t);
    while (t < b) {
        double t2 = std::min(t + step, b);
        double zt2 = Z(t2);
        if ((zt < 0) != (zt2 < 0)) brackets.emplace_back(t, t2);
        t = t2;
        zt = zt2;
    }
}

inline std::vector<double> locate_zeros(double t_min, double t_max, double step_div) {
    std::vector<std::pair<double, double>> brackets;
    double t = t_min;
    while (t < t_max) {
        double step = mean_gap(t) / step_div;
        double t2 = std::min(t + std::max(64.0 * step, 1.0), t_max);
        scan_range(t, t2, step, false, brackets);
        t = t2;
    }
    std::vector<double> out;
    out.reserve(brackets.size());
    for (auto& [a, b] : brackets) {
        double fa = hardy_Z(a), fb = hardy_Z(b);
        if ((fa < 0) == (fb < 0)) {
            // scan-grade Z disagreed with the accurate one; rescan the bracket
            std::vector<std::pair<double, double>> sub;
            scan_range(a - 0.25 * (b - a), b + 0.25 * (b - a), (b - a) / 32.0, true, sub);
            for (auto& [c, d] : sub) out.push_back(refine_zero(c, d, hardy_Z(c), hardy_Z(d)));
            continue;
        }
        out.push_back(refine_zero(a, b, fa, fb));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-9; }),
              out.end());
    return out;
}

}  // namespace detail

// Locate all zeros with ordinate in [t_min, t_max] by sign-change scanning of
// Z plus bracketed refinement; completeness is certified against the counting
// function, with close-pair rescans of anomalously wide gaps.
inline ZeroSet find_zeros(double t_min, double t_max) {
    require(t_min >= 10.0 && t_max <= 1e4 && t_min <= t_max,
            "find_zeros: range must satisfy 10 <= t_min <= t_max <= 1e4");
    ZeroSet set;
    if (t_min == t_max) return set;
    std::vector<double> zs = detail::locate_zeros(t_min, t_max, 10.0);

    auto fill_gaps = [&](double factor, double divider) {
        std::vector<double> extra;
        for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
            double a = zs[i], b = zs[i + 1];
            if (b - a > factor * detail::mean_gap(a)) {
                std::vector<std::pair<double, double>> sub;
                detail::scan_range(a + 1e-7, b - 1e-7, detail::mean_gap(a) / divider, true, sub);
                for (auto& [c, d] : sub)
                    extra.push_back(detail::refine_zero(c, d, hardy_Z(c), hardy_Z(d)));
            }
        }
        if (!extra.empty()) {
            zs.insert(zs.end(), extra.begin(), extra.end());
            std::sort(zs.begin(), zs.end());
            zs.erase(std::unique(zs.begin(), zs.end(),
                                 [](double x, double y) { return std::abs(x - y) < 1e-9; }),
                     zs.end());
        }
        return extra.size();
    };
    fill_gaps(1.3, 64.0);

    // completeness: located count vs theta(T)/pi + 1 (no zeros below t = 14.13,
    // so a scan starting at or below 14 counts from the first zero onward)
    auto deviation = [&]() {
        double expect_hi = zero_count_theoretic(std::max(t_max, 10.0));
        double expect_lo = (t_min <= 14.0) ? 0.0 : zero_count_theoretic(t_min);
        return static_cast<double>(zs.size()) - (expect_hi - expect_lo);
    };
    if (std::abs(deviation()) > 1.8) {
        // one full accurate rescan at a much finer step, then re-certify
        std::vector<std::pair<double, double>> sub;
        double t = t_min;
        while (t < t_max) {
            double step = detail::mean_gap(t) / 48.0;
            double t2 = std::min(t + 1.0, t_max);
            detail::scan_range(t, t2, step, true, sub);
            t = t2;
        }
        zs.clear();
        for (auto& [c, d] : sub) zs.push_back(detail::refine_zero(c, d, hardy_Z(c), hardy_Z(d)));
        std::sort(zs.begin(), zs.end());
        if (std::abs(deviation()) > 1.8)
            throw data_error("find_zeros: located count disagrees with the counting function");
        set.anomalies.push_back("completeness recovered only by fine rescan");
    }

    set.records.reserve(zs.size());
    for (double g : zs) {
        ZeroRecord r;
        r.ordinate = g;
        r.precision = 1e-10;
        r.source = zero_source::computed;
        double z0 = hardy_Z(g);
        if (std::abs(z0) >= 1e-8)
            throw numeric_error("find_zeros: refined zero fails |Z| < 1e-8");
        if ((hardy_Z(g - r.precision) < 0) == (hardy_Z(g + r.precision) < 0))
            throw numeric_error("find_zeros: no sign change across precision interval");
        double zp = (hardy_Z(g + 1e-5) - hardy_Z(g - 1e-5)) / 2e-5;
        if (std::abs(zp) <= 1e-6) {
            std::ostringstream os;
            os << "anomalously flat Z near " << g << " (possible multiplicity > 1)";
            set.anomalies.push_back(os.str());
        }
        set.records.push_back(r);
    }
    set.t_max_complete = (t_min <= 14.0) ? t_max : 0.0;

    // Gram-block anomaly log (informational): blocks with != 1 zero
    if (!set.records.empty() && t_min <= 14.0) {
        double gp_lo = rs_theta(std::max(t_min, 10.0)) / constants::pi;
        long k = static_cast<long>(std::ceil(gp_lo));
        long blocks_off = 0;
        std::size_t idx = 0;
        // walk Gram indices via theta inversion (Newton)
        auto gram_point = [&](long n) {
            double target = n * constants::pi;
            double g = std::max(t_min, 18.0);
            for (int it = 0; it < 60; ++it) {
                double f = rs_theta(g) - target;
                double df = 0.5 * std::log(g / constants::two_pi);
                double gn = g - f / df;
                if (std::abs(gn - g) < 1e-9) return gn;
                g = gn;
            }
            return g;
        };
        double prev = gram_point(k);
        for (long n = k + 1; ; ++n) {
            double cur = gram_point(n);
            if (cur > t_max) break;
            std::size_t cnt = 0;
            while (idx < set.records.size() && set.records[idx].ordinate < cur) {
                if (set.records[idx].ordinate >= prev) ++cnt;
                ++idx;
            }
            if (cnt != 1) ++blocks_off;
            prev = cur;
        }
        if (blocks_off > 0) {
            std::ostringstream os;
            os << blocks_off << " Gram blocks without exactly one zero";
            set.anomalies.push_back(os.str());
        }
    }
    return set;
}

// ---------------------------------------------------------------------------
// Zero-table files: '#' comments, one zero per line as
//   <ordinate> [<real part>]
// ascending ordinates, trailing "# complete_to <T>".
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline void store_zeros(const ZeroSet& set, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("store_zeros: cannot open " + path);
    out << "# zetalab zero table\n";
    for (const auto& r : set.records) {
        out << detail::format_double(r.ordinate);
        if (r.real_part != 0.5) out << ' ' << detail::format_double(r.real_part);
        out << '\n';
    }
    out << "# complete_to " << detail::format_double(set.t_max_complete) << '\n';
    if (!out) throw data_error("store_zeros: write failure on " + path);
}

inline ZeroSet load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("load_zeros: cannot open " + path);
    ZeroSet set;
    std::string line;
    long lineno = 0;
    auto fail = [&](const std::string& why) {
        throw data_error("load_zeros: " + path + ":" + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') {
            std::istringstream c(line.substr(pos + 1));
            std::string key;
            if (c >> key && key == "complete_to") {
                double v;
                if (!(c >> v)) fail("malformed complete_to");
                set.t_max_complete = v;
            }
            continue;
        }
        std::istringstream ls(line);
        ZeroRecord r;
        r.source = zero_source::imported;
        r.precision = 1e-9;
        if (!(ls >> r.ordinate)) fail("cannot parse ordinate");
        std::string second;
        if (ls >> second) {
            try {
                r.real_part = std::stod(second);
            } catch (...) {
                fail("cannot parse real part");
            }
            std::string rest;
            if (ls >> rest) fail("trailing tokens");
        }
        if (!std::isfinite(r.ordinate) || r.ordinate <= 0) fail("ordinate must be positive");
        if (!set.records.empty() && r.ordinate <= set.records.back().ordinate)
            fail("ordinates must be strictly ascending");
        set.records.push_back(r);
    }
    return set;
}

}  // namespace zetalab
