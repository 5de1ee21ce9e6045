#pragma once

#include <numeric>

#include "zetalab/common.hpp"

namespace zetalab {

// Smallest-prime-factor sieve, rebuilt on demand up to a hard memory cap.
class SieveTable {
  public:
    explicit SieveTable(std::size_t limit = 10'000'000) { build(limit); }

    std::size_t limit() const { return limit_; }

    void ensure(std::size_t need) {
        if (need <= limit_) return;
        if (need > hard_cap_)
            throw data_error("SieveTable: requested limit exceeds the memory budget");
        build(need + need / 8);
    }

    std::uint32_t spf(std::size_t n) const { return spf_[n]; }

    double von_mangoldt(std::size_t n) const {
        if (n < 1 || n > limit_) throw data_error("von_mangoldt: n outside sieve range");
        if (n == 1) return 0.0;
        std::uint32_t p = spf_[n];
        while (n % p == 0) n /= p;
        return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }

    const std::vector<std::uint32_t>& primes() const { return primes_; }

  private:
    void build(std::size_t limit) {
        limit_ = std::max<std::size_t>(limit, 16);
        spf_.assign(limit_ + 1, 0);
        primes_.clear();
        for (std::size_t i = 2; i <= limit_; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<std::uint32_t>(i);
                primes_.push_back(static_cast<std::uint32_t>(i));
            }
            for (std::uint32_t p : primes_) {
                if (p > spf_[i] || i * p > limit_) break;
                spf_[i * p] = p;
            }
        }
    }

    std::size_t limit_ = 0;
    static constexpr std::size_t hard_cap_ = 64'000'000;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

inline double von_mangoldt(std::size_t n, const SieveTable& sieve) {
    return sieve.von_mangoldt(n);
}

// ---------------------------------------------------------------------------
// Rational arguments x = r/s and their prime-power classification, the case
// selector of the two main theorems.
// ---------------------------------------------------------------------------

enum class arg_class {
    one,                    // x = 1
    prime_power,            // x = p^i
    two_prime_powers,       // x = p^i q^j, p < q
    rational_prime_powers,  // x = p^i / q^j
    other
};

struct RationalArgument {
    long long r = 1, s = 1;
    arg_class cls = arg_class::one;
    long long p = 0, q = 0;
    int i = 0, j = 0;
    double value() const { return static_cast<double>(r) / static_cast<double>(s); }
};

namespace detail {

inline std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> f;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            f.emplace_back(d, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

}  // namespace detail

inline RationalArgument classify_argument(long long r, long long s) {
    require(r >= 1 && s >= 1, "classify_argument: r, s must be positive");
    long long g = std::gcd(r, s);
    RationalArgument a;
    a.r = r / g;
    a.s = s / g;
    auto fr = detail::factorize(a.r);
    auto fs = detail::factorize(a.s);
    if (a.r == 1 && a.s == 1) {
        a.cls = arg_class::one;
    } else if (a.s == 1 && fr.size() == 1) {
        a.cls = arg_class::prime_power;
        a.p = fr[0].first;
        a.i = fr[0].second;
    } else if (a.s == 1 && fr.size() == 2) {
        a.cls = arg_class::two_prime_powers;
        a.p = fr[0].first;
        a.i = fr[0].second;
        a.q = fr[1].first;
        a.j = fr[1].second;
    } else if (a.s > 1 && fr.size() == 1 && fs.size() == 1) {
        a.cls = arg_class::rational_prime_powers;
        a.p = fr[0].first;
        a.i = fr[0].second;
        a.q = fs[0].first;
        a.j = fs[0].second;
    } else {
        a.cls = arg_class::other;
    }
    return a;
}

// ---------------------------------------------------------------------------
// Weighted von Mangoldt sums.
// ---------------------------------------------------------------------------

struct WeightedSum {
    cplx value{};
    double tail_bound = 0.0;
    long long terms = 0;
};

enum class lambda_variant { ratio, product };
enum class lambda_direction { plus, minus };

namespace detail {

// effectively-zero threshold for truncating Gaussian-weighted sums
inline constexpr double trunc_eps = 1e-15;

// bound for integral_w^inf exp(u/2 - a u^2) du (u-substituted prime sum tail)
inline double gaussian_tail_integral(double a, double w) {
    double shift = 1.0 / (4.0 * a);
    double we = w - shift;
    if (we <= 0) return std::exp(0.25 / (4.0 * a)) * constants::sqrt_pi / std::sqrt(a);
    return std::exp(1.0 / (16.0 * a)) * std::exp(-a * we * we) / (2.0 * a * we);
}

// sum over prime powers of Lambda(n) n^{-s0} exp(-a log^2(n/x))   (ratio)
//                      or Lambda(n) n^{-s0} exp(-a log^2(n*x))   (product)
inline WeightedSum lambda_gaussian_general(double x, double a, const cplx& s0,
                                           lambda_variant variant, SieveTable& sieve) {
    require(x > 0 && a > 0, "lambda sum: x and scale must be positive");
    double w = std::sqrt(std::log(1.0 / trunc_eps) / a);
    double center = variant == lambda_variant::ratio ? std::log(x) : -std::log(x);
    double lo = std::exp(center - w), hi = std::exp(center + w);
    WeightedSum out;
    kahan_sum<cplx> sum;
    if (hi >= 1.0) {
        std::size_t n_lo = static_cast<std::size_t>(std::max(1.0, std::ceil(lo)));
        if (hi > 4.6e18) throw data_error("lambda sum: truncation window overflows");
        std::size_t n_hi = static_cast<std::size_t>(std::floor(hi));
        sieve.ensure(n_hi);
        for (std::size_t n = n_lo; n <= n_hi; ++n) {
            double lam = sieve.von_mangoldt(n);
            if (lam == 0.0) continue;
            double ln = std::log(static_cast<double>(n));
            double u = ln - center;
            cplx term = lam * std::exp(-s0 * ln) * std::exp(-a * u * u);
            sum.add(term);
            ++out.terms;
        }
    }
    out.value = sum.value();
    // tail: Lambda(n) <= log n plus an integral comparison after n = e^{center+u}
    double edge = std::abs(center) + w;
    double sigma_slack = std::abs(0.5 - s0.real()) * edge;
    out.tail_bound = 2.0 * (edge + 1.0) * std::exp(0.5 * center + sigma_slack) *
                     detail::gaussian_tail_integral(a, w);
    check_finite(out.value, "lambda_gaussian_general");
    return out;
}

}  // namespace detail

// Sum Lambda(n) n^{-(1/2 +- iT)} exp(-(scale^2/4) log^2(x/n or x*n)),
// truncated where the Gaussian weight falls below 1e-15 of its peak.
inline WeightedSum gaussian_lambda_sum(double x, double scale, lambda_variant variant,
                                       lambda_direction direction, double T,
                                       SieveTable& sieve) {
    require(scale > 0, "gaussian_lambda_sum: scale must be positive");
    cplx s0 = cplx(0.5, direction == lambda_direction::plus ? T : -T);
    return detail::lambda_gaussian_general(x, scale * scale / 4.0, s0, variant, sieve);
}

// 2-free version used by the x = 1 identity: sum Lambda^2(n)/n e^{-log^2 n/(4M^2)}.
inline WeightedSum lambda_sq_gaussian_sum(double M, SieveTable& sieve) {
    require(M > 0, "lambda_sq_gaussian_sum: M must be positive");
    double W = 2.0 * M * std::sqrt(std::log(1.0 / detail::trunc_eps));
    double nmax = std::exp(W);
    if (nmax > 4.6e18) throw data_error("lambda_sq_gaussian_sum: window overflows");
    sieve.ensure(static_cast<std::size_t>(nmax));
    double b = 1.0 / (4.0 * M * M);
    WeightedSum out;
    kahan_sum<double> sum;
    for (std::uint32_t p : sieve.primes()) {
        if (p > nmax) break;
        double lp = std::log(static_cast<double>(p));
        double pk = p;
        while (pk <= nmax) {
            double ln = std::log(pk);
            sum.add(lp * lp / pk * std::exp(-b * ln * ln));
            ++out.terms;
            pk *= p;
        }
    }
    out.value = sum.value();
    // integral bound for sum_{log n > W} (log n)^2/n weights
    out.tail_bound = (W / (2.0 * b)) * std::exp(-b * W * W) * (1.0 + 1.0 / (2.0 * b * W * W)) +
                     W * W * std::exp(-b * W * W);
    return out;
}

// The three finite sums of the Fejer-kernel explicit formula, exactly as
// displayed: S1 over x <= n < Qx with log(Qx/n), S2 over n < Q/x with
// log(Q/(n x)), S3 over x/Q < n < x with log(Q n / x).
struct FejerLambdaSums {
    cplx s1{}, s2{}, s3{};
    long long terms = 0;
};

inline FejerLambdaSums fejer_lambda_sums(double x, const cplx& rho, double Q,
                                         SieveTable& sieve) {
    require(Q > 1.0, "fejer_lambda_sums: Q must exceed 1");
    require(x > 0.0, "fejer_lambda_sums: x must be positive");
    double top = std::max(Q * x, std::max(Q / x, x));
    if (top > 4.6e18) throw data_error("fejer_lambda_sums: range overflows");
    sieve.ensure(static_cast<std::size_t>(top));
    FejerLambdaSums out;
    kahan_sum<cplx> a1, a2, a3;
    auto npow = [&](std::size_t n, const cplx& expo) {
        return std::exp(-expo * std::log(static_cast<double>(n)));
    };
    for (std::size_t n = static_cast<std::size_t>(std::ceil(x)); n < Q * x; ++n) {
        if (static_cast<double>(n) < x) continue;
        double lam = sieve.von_mangoldt(n);
        if (lam == 0.0) continue;
        a1.add(lam * npow(n, rho) * std::log(Q * x / static_cast<double>(n)));
        ++out.terms;
    }
    for (std::size_t n = 1; n < Q / x; ++n) {
        double lam = sieve.von_mangoldt(n);
        if (lam == 0.0) continue;
        a2.add(lam * npow(n, 1.0 - rho) * std::log(Q / (static_cast<double>(n) * x)));
        ++out.terms;
    }
    for (std::size_t n = static_cast<std::size_t>(std::floor(x / Q)) + 1;
         static_cast<double>(n) < x; ++n) {
        if (static_cast<double>(n) <= x / Q) continue;
        double lam = sieve.von_mangoldt(n);
        if (lam == 0.0) continue;
        a3.add(lam * npow(n, rho) * std::log(Q * static_cast<double>(n) / x));
        ++out.terms;
    }
    out.s1 = a1.value();
    out.s2 = a2.value();
    out.s3 = a3.value();
    return out;
}

}  // namespace zetalab
