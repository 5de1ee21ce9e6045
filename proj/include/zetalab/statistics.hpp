#pragma once

#include <limits>
#include <map>

#include "zetalab/kernels.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

namespace detail {

// sin^2(X)/X^2 with the removable singularity patched
inline double sinc_sq(double X) {
    if (std::abs(X) < 1e-6) {
        double x2 = X * X;
        return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0;
    }
    double s = std::sin(X) / X;
    return s * s;
}

}  // namespace detail

enum class pair_weighting { sharp, gaussian };

struct PairCorrReport {
    double T = 0.0;
    double alpha = 0.0;
    double statistic = 0.0;
    double predicted = 0.0;
    double relative_gap = 0.0;
    pair_weighting weighting = pair_weighting::sharp;
    long long pairs = 0;
};

// Sine-kernel pair statistic.
//   sharp:    sum over 0 < gamma, gamma' < T of sinc^2((alpha/2)(gamma-gamma') log T)
//             against (1/alpha + alpha/3) (T/2pi) log T
//   gaussian: sum_rho omega(rho) sum_rho' sinc^2(...) against
//             (log T / 2pi)(1/alpha + alpha/3)
// Diagonal pairs contribute 1 each; multiplicities weight both indices.
inline PairCorrReport sine_kernel_statistic(double T, double alpha, const ZeroSet& zeros,
                                            pair_weighting weighting) {
    require(T > 10.0 && alpha > 0.0, "sine_kernel_statistic: needs T > 10, alpha > 0");
    double L = std::log(T);
    double c = 0.5 * alpha * L;
    PairCorrReport rep;
    rep.T = T;
    rep.alpha = alpha;
    rep.weighting = weighting;
    kahan_sum<double> acc;
    if (weighting == pair_weighting::sharp) {
        zeros.require_complete(T, "sine_kernel_statistic");
        std::size_t n = zeros.count_below(T);
        for (std::size_t i = 0; i < n; ++i) {
            double gi = zeros.records[i].ordinate;
            double mi = zeros.records[i].multiplicity;
            kahan_sum<double> inner;
            for (std::size_t j = 0; j < n; ++j) {
                double mj = zeros.records[j].multiplicity;
                inner.add(mj * detail::sinc_sq(c * (gi - zeros.records[j].ordinate)));
                ++rep.pairs;
            }
            acc.add(mi * inner.value());
        }
        rep.predicted = (1.0 / alpha + alpha / 3.0) * (T / constants::two_pi) * L;
    } else {
        GaussianWindow omega = GaussianWindow::with_default_delta(T);
        zeros.require_complete(std::min(T + 8.0 * omega.delta, 1e4), "sine_kernel_statistic");
        for (const auto& ri : zeros.records) {
            double w = gaussian_eval(omega, cplx(ri.real_part, ri.ordinate)).real() *
                       ri.multiplicity;
            if (w == 0.0) continue;
            kahan_sum<double> inner;
            for (const auto& rj : zeros.records) {
                inner.add(rj.multiplicity * detail::sinc_sq(c * (ri.ordinate - rj.ordinate)));
                inner.add(rj.multiplicity * detail::sinc_sq(c * (ri.ordinate + rj.ordinate)));
                rep.pairs += 2;
            }
            acc.add(w * inner.value());
        }
        rep.predicted = L / constants::two_pi * (1.0 / alpha + alpha / 3.0);
    }
    rep.statistic = acc.value();
    rep.relative_gap = std::abs(rep.statistic - rep.predicted) / rep.predicted;
    return rep;
}

// Lower bound on the fraction of simple zeros: 2 - S/N, with S the
// multiplicity-weighted sharp pair statistic and N the zero count with
// multiplicity. Nonnegative kernel values make S dominate sum m^2.
inline double simple_zero_bound(double T, double alpha, const ZeroSet& zeros) {
    zeros.require_complete(T, "simple_zero_bound");
    double L = std::log(T);
    double c = 0.5 * alpha * L;
    std::size_t n = zeros.count_below(T);
    require(n > 0, "simple_zero_bound: needs zeros below T");
    kahan_sum<double> acc;
    double N = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        N += zeros.records[i].multiplicity;
        kahan_sum<double> inner;
        for (std::size_t j = 0; j < n; ++j)
            inner.add(zeros.records[j].multiplicity *
                      detail::sinc_sq(c * (zeros.records[i].ordinate - zeros.records[j].ordinate)));
        acc.add(zeros.records[i].multiplicity * inner.value());
    }
    return 2.0 - acc.value() / N;
}

// Test helper for the multiplicity path: returns a copy with one record's
// multiplicity raised to 2.
inline ZeroSet with_injected_double_zero(const ZeroSet& zeros, std::size_t index) {
    require(index < zeros.records.size(), "with_injected_double_zero: index out of range");
    ZeroSet out = zeros;
    out.records[index].multiplicity = 2;
    out.anomalies.push_back("synthetic double zero injected");
    return out;
}

struct GapReport {
    double min_normalized_gap = 0.0;
    std::pair<double, double> argmin_pair{};
    double sine_sum_min = 0.0;
    double sine_sum_median = 0.0;
    double sine_sum_max = 0.0;
    bool lambda_threshold_check = false;  // any per-zero sine sum >= 1.33
    long long zeros_used = 0;
};

// Normalized consecutive gaps (gamma'-gamma) log(gamma) / 2pi and the
// per-zero sine sums sum_{gamma' <= T} sinc^2((1/2)(gamma-gamma') log T).
inline GapReport gap_report(double T, const ZeroSet& zeros) {
    zeros.require_complete(T, "gap_report");
    std::size_t n = zeros.count_below(T);
    if (n < 2) throw data_error("gap_report: needs at least two zeros below T");
    GapReport rep;
    rep.zeros_used = static_cast<long long>(n);
    rep.min_normalized_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double g = zeros.records[i].ordinate, gn = zeros.records[i + 1].ordinate;
        double norm = (gn - g) * std::log(g) / constants::two_pi;
        if (norm < rep.min_normalized_gap) {
            rep.min_normalized_gap = norm;
            rep.argmin_pair = {g, gn};
        }
    }
    double L = std::log(T);
    std::vector<double> sums(n);
    for (std::size_t i = 0; i < n; ++i) {
        kahan_sum<double> s;
        for (std::size_t j = 0; j < n; ++j)
            s.add(detail::sinc_sq(0.5 * L * (zeros.records[i].ordinate - zeros.records[j].ordinate)));
        sums[i] = s.value();
    }
    std::vector<double> sorted = sums;
    std::sort(sorted.begin(), sorted.end());
    rep.sine_sum_min = sorted.front();
    rep.sine_sum_max = sorted.back();
    rep.sine_sum_median = sorted[sorted.size() / 2];
    rep.lambda_threshold_check = rep.sine_sum_max >= 1.33;
    return rep;
}

struct CensusReport {
    long long n_offline = 0;
    std::map<std::pair<int, int>, long long> boxes;  // (sigma slab, Im ceiling) -> count
    std::vector<std::string> clustering_flags;
};

// Census of zeros away from the critical line: counts |sigma - 1/2| beyond
// (log T)^(-1/2+eps), fills the (i, m) box partition (sigma slabs of width
// 1/log T, unit Im strips), and flags off-line zeros closer than the
// non-clustering hypothesis allows.
inline CensusReport offline_census(const ZeroSet& zeros, double eps, double T) {
    require(T > 10.0, "offline_census: needs T > 10");
    double L = std::log(T);
    double thresh = std::pow(L, -0.5 + eps);
    CensusReport rep;
    std::vector<const ZeroRecord*> off;
    for (const auto& r : zeros.records) {
        if (std::abs(r.real_part - 0.5) > thresh) {
            ++rep.n_offline;
            off.push_back(&r);
            int slab = static_cast<int>(std::floor((r.real_part - 0.5) * L));
            int strip = static_cast<int>(std::ceil(r.ordinate));
            ++rep.boxes[{slab, strip}];
        }
    }
    for (std::size_t a = 0; a + 1 < off.size(); ++a) {
        if (off[a + 1]->ordinate - off[a]->ordinate < thresh) {
            std::ostringstream os;
            os << "clustering: off-line zeros at ordinates " << off[a]->ordinate << " and "
               << off[a + 1]->ordinate << " closer than " << thresh;
            rep.clustering_flags.push_back(os.str());
        }
    }
    return rep;
}

struct HistogramRow {
    double bin_lo = 0.0;
    double bin_hi = 0.0;
    long long count = 0;
    double gue_prediction = 0.0;  // integral over the bin of 1 - sinc^2(pi x)
};

// Histogram of normalized ordered gaps (gamma - gamma') log T / 2pi in
// (0, max_range], paired with the GUE pair-correlation mass per bin.
inline std::vector<HistogramRow> pair_histogram(double T, const ZeroSet& zeros,
                                                double bin_width, double max_range) {
    require(bin_width > 0.0, "pair_histogram: bin_width must be positive");
    require(max_range >= 0.0, "pair_histogram: max_range must be nonnegative");
    zeros.require_complete(T, "pair_histogram");
    std::vector<HistogramRow> rows;
    if (max_range == 0.0) return rows;
    std::size_t nbins = static_cast<std::size_t>(std::ceil(max_range / bin_width - 1e-12));
    rows.resize(nbins);
    double L = std::log(T);
    std::size_t n = zeros.count_below(T);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double u = (zeros.records[i].ordinate - zeros.records[j].ordinate) * L /
                       constants::two_pi;
            if (u <= 0.0 || u > max_range) continue;
            std::size_t k = std::min(static_cast<std::size_t>(u / bin_width), nbins - 1);
            ++rows[k].count;
        }
    }
    // 32-point composite midpoint rule per bin is plenty for the smooth GUE curve
    for (std::size_t k = 0; k < nbins; ++k) {
        rows[k].bin_lo = k * bin_width;
        rows[k].bin_hi = std::min((k + 1) * bin_width, max_range);
        kahan_sum<double> s;
        int steps = 64;
        double h = (rows[k].bin_hi - rows[k].bin_lo) / steps;
        for (int q = 0; q < steps; ++q) {
            double xx = rows[k].bin_lo + (q + 0.5) * h;
            s.add(1.0 - detail::sinc_sq(constants::pi * xx));
        }
        rows[k].gue_prediction = s.value() * h;
    }
    return rows;
}

}  // namespace zetalab
