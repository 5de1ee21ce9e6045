#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetalab {

using cplx = std::complex<double>;

namespace constants {
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 6.283185307179586476925286766559005768;
inline constexpr double sqrt_pi = 1.772453850905516027298167483341145183;
inline constexpr double log_two_pi = 1.837877066409345483560659472811235279;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;
// 2*pi = two_pi_hi + two_pi_lo to double-double precision
inline constexpr double two_pi_hi = 6.283185307179586;
inline constexpr double two_pi_lo = 2.4492935982947064e-16;
}  // namespace constants

// Error taxonomy. The CLI maps these onto exit codes: bad input/usage -> 2,
// data problems (files, zero sets, sieve limits) -> 3, numerical failures
// (non-convergence, overflow) -> 4.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : error {
    using error::error;
};
struct data_error : error {
    using error::error;
};
struct numeric_error : error {
    using error::error;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw domain_error(msg);
}

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void check_finite(const cplx& z, const char* what) {
    if (!is_finite(z)) throw numeric_error(std::string(what) + ": non-finite result");
}

// Compensated (Kahan) accumulator; deterministic for a fixed input order.
template <typename T>
class kahan_sum {
  public:
    void add(const T& x) {
        T y = x - comp_;
        T t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    T value() const { return sum_; }

  private:
    T sum_{};
    T comp_{};
};

inline void two_prod(double a, double b, double& hi, double& lo) {
    hi = a * b;
    lo = std::fma(a, b, -hi);
}

// t*(ln_hi+ln_lo) reduced mod 2*pi in double-double arithmetic. Keeps phases
// of n^{-it} accurate near 1e-16 even for t*log(n) ~ 1e5, where a plain
// double product would already carry ~1e-11 of phase noise.
inline double reduced_phase(double t, double ln_hi, double ln_lo) {
    using namespace constants;
    double p, pe;
    two_prod(t, ln_hi, p, pe);
    double k = std::nearbyint(p / two_pi);
    double m, me;
    two_prod(k, two_pi_hi, m, me);
    return ((p - m) - me - k * two_pi_lo) + (pe + t * ln_lo);
}

// exp(i*phi) for a reduced phase
inline cplx unit_phase(double phi) { return {std::cos(phi), std::sin(phi)}; }

// Table of log(n) split into hi+lo parts, grown on demand. Kept thread_local
// so evaluations stay lock-free and safe to run concurrently.
class log_table {
  public:
    static const log_table& instance(std::size_t need) {
        thread_local log_table tab;
        tab.ensure(need);
        return tab;
    }
    double hi(std::size_t n) const { return hi_[n]; }
    double lo(std::size_t n) const { return lo_[n]; }
    std::size_t size() const { return hi_.size(); }

  private:
    void ensure(std::size_t need) {
        if (hi_.size() > need) return;
        std::size_t n0 = hi_.size();
        hi_.resize(need + 1);
        lo_.resize(need + 1);
        for (std::size_t n = n0 ? n0 : 1; n <= need; ++n) {
            long double l = std::log(static_cast<long double>(n));
            hi_[n] = static_cast<double>(l);
            lo_[n] = static_cast<double>(l - static_cast<long double>(hi_[n]));
        }
    }
    std::vector<double> hi_{0.0};
    std::vector<double> lo_{0.0};
};

}  // namespace zetalab
