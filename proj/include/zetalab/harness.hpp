#pragma once

#include <chrono>
#include <filesystem>

#include "zetalab/formulas.hpp"
#include "zetalab/report.hpp"
#include "zetalab/statistics.hpp"

namespace zetalab {

struct RunConfig {
    std::string command;     // zeros | verify | stats
    std::string subcommand;  // e.g. landau, paircorr, compute

    std::vector<double> T_list;
    std::vector<double> alpha_list{0.5};
    std::vector<std::pair<long long, long long>> x_list;  // rationals r/s
    std::vector<double> x_real_list;                      // reals accepted by landau
    double eps = 0.1;

    std::string zeros_file;  // persistent cache; empty = in-memory only
    std::size_t sieve_limit = 10'000'000;
    FormulaOptions fopts;
    double tol_mellin = 1e-7;
    double tol_paircorr = 0.10;
    double bound_simple = 0.60;
    double fejer_coverage = 1500.0;
    double stat_extra_coverage = 700.0;

    int zero_index = 100;  // 1-based index for fejer-lemma / isolation centers
    double isolation_M = 0.8;
    pair_weighting weighting = pair_weighting::gaussian;
    double bin_width = 0.1;
    double max_range = 3.0;
    bool inject_double = false;

    std::string out_dir = ".";
    std::string format = "json";

    // zeros subcommands
    double t_min = 10.0, t_max = 100.0;
    std::string in_file, out_file;
};

// Zero cache shared across the tasks of one suite; optionally file-backed.
class ZeroCache {
  public:
    explicit ZeroCache(std::string path = "") : path_(std::move(path)) {
        if (!path_.empty() && std::filesystem::exists(path_)) set_ = load_zeros(path_);
    }

    const ZeroSet& ensure(double height) {
        height = std::min(height, 1e4);
        if (set_.t_max_complete >= height) return set_;
        double from = set_.t_max_complete > 10.0 ? set_.t_max_complete - 1.0 : 10.0;
        ZeroSet ext = find_zeros(from, height);
        for (const auto& r : ext.records) {
            if (set_.records.empty() || r.ordinate > set_.records.back().ordinate + 1e-9)
                set_.records.push_back(r);
        }
        for (const auto& a : ext.anomalies) set_.anomalies.push_back(a);
        set_.t_max_complete = height;
        if (!path_.empty()) store_zeros(set_, path_);
        return set_;
    }

    const ZeroSet& current() const { return set_; }
    void replace(ZeroSet s) { set_ = std::move(s); }

  private:
    std::string path_;
    ZeroSet set_;
};

namespace detail {

// rough inverse of the zero counting function, for sizing caches by index
inline double estimate_ordinate(int index) {
    double t = std::max(20.0, 2.0 * constants::pi * index /
                                   std::log(std::max(index, 2) / 0.3));
    for (int it = 0; it < 64; ++it) {
        double f = zero_count_theoretic(t) - index;
        double df = std::log(t / constants::two_pi) / (2.0 * constants::pi);
        double tn = t - f / df;
        tn = std::max(tn, 15.0);
        if (std::abs(tn - t) < 1e-6) return tn;
        t = tn;
    }
    return t;
}

inline std::string fmt_num(double x) {
    nlohmann::ordered_json j = x;
    return j.dump();
}

class StopWatch {
  public:
    StopWatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

inline void fill_sides(Report& rep, const SidePair& sp) {
    rep.lhs = sp.zero_side;
    rep.rhs = sp.arithmetic_side;
    rep.zero_truncation_bound = sp.zero_truncation_bound;
    rep.term_truncation_bound = sp.term_truncation_bound;
    rep.uncertainty_envelope = sp.uncertainty_envelope;
    rep.zeros_used = sp.zeros_used;
    rep.terms_used = sp.terms_used;
    rep.warnings = sp.warnings;
    rep.finish_errors();
}

inline verdict exact_verdict(const Report& rep) {
    return rep.abs_err <= rep.uncertainty_envelope + rep.zero_truncation_bound +
                              rep.term_truncation_bound
               ? verdict::pass
               : verdict::fail;
}

}  // namespace detail

class Harness {
  public:
    explicit Harness(const RunConfig& cfg)
        : cfg_(cfg), sieve_(cfg.sieve_limit), cache_(cfg.zeros_file) {}

    ZeroCache& cache() { return cache_; }
    SieveTable& sieve() { return sieve_; }

    Report run_landau(double x, double T) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "verify.landau";
        rep.params = {{"x", detail::fmt_num(x)}, {"T", detail::fmt_num(T)}};
        GaussianWindow win = GaussianWindow::with_default_delta(T);
        const ZeroSet& zs = cache_.ensure(T + 8.0 * win.delta);
        SidePair sp = landau_sides(x, win, zs, sieve_, cfg_.fopts);
        detail::fill_sides(rep, sp);
        rep.result = detail::exact_verdict(rep);
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_isolation(double x, int zero_index, double M) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "verify.isolation";
        rep.params = {{"x", detail::fmt_num(x)},
                      {"zero_index", std::to_string(zero_index)},
                      {"M", detail::fmt_num(M)}};
        const ZeroSet& zs =
            cache_.ensure(detail::estimate_ordinate(zero_index) * 1.05 + 8.0 / M + 5.0);
        require(zero_index >= 1 &&
                    static_cast<std::size_t>(zero_index) <= zs.records.size(),
                "isolation: zero index out of range");
        cplx rho(zs.records[zero_index - 1].real_part, zs.records[zero_index - 1].ordinate);
        IsolationWindow win(rho, M);
        SidePair sp = isolation_sides(x, win, zs, sieve_, cfg_.fopts);
        detail::fill_sides(rep, sp);
        rep.result = detail::exact_verdict(rep);
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_log_landau(double x, double T) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "verify.log-landau";
        rep.params = {{"x", detail::fmt_num(x)}, {"T", detail::fmt_num(T)}};
        GaussianWindow win = GaussianWindow::with_default_delta(T);
        const ZeroSet& zs = cache_.ensure(T + 8.0 * win.delta);
        SidePair sp = log_weighted_landau_sides(x, win, zs, sieve_, cfg_.fopts);
        detail::fill_sides(rep, sp);
        rep.result = detail::exact_verdict(rep);
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_fejer_lemma(double x, int zero_index, double alpha) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "verify.fejer-lemma";
        rep.params = {{"x", detail::fmt_num(x)},
                      {"zero_index", std::to_string(zero_index)},
                      {"alpha", detail::fmt_num(alpha)}};
        const ZeroSet& zs = cache_.ensure(detail::estimate_ordinate(zero_index) * 1.05 +
                                          cfg_.fejer_coverage);
        require(zero_index >= 1 &&
                    static_cast<std::size_t>(zero_index) <= zs.records.size(),
                "fejer-lemma: zero index out of range");
        const ZeroRecord& rec = zs.records[zero_index - 1];
        cplx rho(rec.real_part, rec.ordinate);
        FejerWindow win(rho, alpha, rec.ordinate);
        SidePair sp = fejer_landau_sides(x, win, zs, sieve_, cfg_.fopts);
        detail::fill_sides(rep, sp);
        rep.result = detail::exact_verdict(rep);
        rep.runtime_ms = sw.ms();
        return rep;
    }

    std::vector<Report> run_mellin(double T, double alpha) {
        std::vector<Report> out;
        GaussianWindow gwin = GaussianWindow::with_default_delta(T);
        for (double x : {0.5, 1.0, 2.0, 2.718281828459045, 5.0}) {
            detail::StopWatch sw;
            Report rep;
            rep.task = "verify.mellin.gaussian";
            rep.params = {{"x", detail::fmt_num(x)}, {"T", detail::fmt_num(T)}};
            rep.lhs = gaussian_mellin_closed(gwin, x, mellin_variant::direct);
            LineIntegralSpec spec;
            spec.abscissa = 1.5;
            spec.center = T;
            spec.half_width = 9.0 * gwin.delta;
            spec.tolerance = 1e-9;
            auto f = [&](const cplx& s) {
                return gaussian_eval(gwin, s) * detail_pow(x, s);
            };
            rep.rhs = damped_line_integral(f, spec).value;
            rep.finish_errors();
            rep.uncertainty_envelope = cfg_.tol_mellin;
            rep.result = rep.abs_err <= cfg_.tol_mellin ? verdict::pass : verdict::fail;
            rep.runtime_ms = sw.ms();
            out.push_back(rep);
        }
        FejerWindow fwin(cplx(0.5, 20.0), alpha, T);
        for (double y : {0.07, 0.3, 0.9, 1.1, 2.0, 5.0, 0.95 * fwin.Q, 1.05 * fwin.Q,
                         1.5 * fwin.Q}) {
            detail::StopWatch sw;
            Report rep;
            rep.task = "verify.mellin.fejer";
            rep.params = {{"y", detail::fmt_num(y)},
                          {"T", detail::fmt_num(T)},
                          {"alpha", detail::fmt_num(alpha)}};
            rep.lhs = fejer_mellin_closed(fwin, y, mellin_variant::direct);
            rep.rhs = fejer_transform_oracle(fwin, y, mellin_variant::direct);
            rep.finish_errors();
            rep.uncertainty_envelope = cfg_.tol_mellin;
            rep.result = rep.abs_err <= cfg_.tol_mellin ? verdict::pass : verdict::fail;
            rep.runtime_ms = sw.ms();
            out.push_back(rep);
        }
        return out;
    }

    Report run_theorem1(long long r, long long s, double T, double alpha) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "verify.theorem1";
        rep.params = {{"x", std::to_string(r) + "/" + std::to_string(s)},
                      {"T", detail::fmt_num(T)},
                      {"alpha", detail::fmt_num(alpha)}};
        TheoremParams p;
        p.T = T;
        p.alpha = alpha;
        p.eps = cfg_.eps;
        p.x = classify_argument(r, s);
        const ZeroSet& zs =
            cache_.ensure(T + 8.0 * (T / std::log(T)) + 8.0 / p.M() + 2.0);
        SidePair sp = theorem1_sides(p, zs, sieve_, cfg_.fopts);
        detail::fill_sides(rep, sp);
        if (p.x.cls == arg_class::one)
            rep.result = rep.abs_err <= rep.uncertainty_envelope + sp.combined_budget()
                             ? verdict::pass
                             : verdict::fail;
        else
            rep.result = verdict::informational;
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_theorem2(long long r, long long s, double T, double alpha) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "verify.theorem2";
        rep.params = {{"x", std::to_string(r) + "/" + std::to_string(s)},
                      {"T", detail::fmt_num(T)},
                      {"alpha", detail::fmt_num(alpha)}};
        TheoremParams p;
        p.T = T;
        p.alpha = alpha;
        p.eps = cfg_.eps;
        p.x = classify_argument(r, s);
        const ZeroSet& zs =
            cache_.ensure(T + 8.0 * (T / std::log(T)) + cfg_.stat_extra_coverage);
        SidePair sp = theorem2_sides(p, zs, cfg_.fopts);
        detail::fill_sides(rep, sp);
        rep.result = verdict::informational;
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_gonek(long long r, long long s, double T) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "verify.gonek";
        require(s == 1, "gonek: x must be an integer");
        rep.params = {{"x", std::to_string(r)}, {"T", detail::fmt_num(T)}};
        const ZeroSet& zs = cache_.ensure(T);
        SidePair sp = gonek_sharp_sum(static_cast<double>(r), T, zs, sieve_);
        detail::fill_sides(rep, sp);
        rep.result = rep.abs_err <= rep.uncertainty_envelope ? verdict::pass : verdict::fail;
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_paircorr(double T, double alpha) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "stats.paircorr";
        rep.params = {{"T", detail::fmt_num(T)},
                      {"alpha", detail::fmt_num(alpha)},
                      {"weighting",
                       cfg_.weighting == pair_weighting::sharp ? "sharp" : "gaussian"}};
        double need = cfg_.weighting == pair_weighting::sharp
                          ? T
                          : T + 8.0 * (T / std::log(T)) + cfg_.stat_extra_coverage;
        const ZeroSet& zs = cache_.ensure(need);
        PairCorrReport pc = sine_kernel_statistic(T, alpha, zs, cfg_.weighting);
        rep.lhs = pc.statistic;
        rep.rhs = pc.predicted;
        rep.zeros_used = pc.pairs;
        rep.finish_errors();
        if (cfg_.weighting == pair_weighting::gaussian)
            rep.result = pc.relative_gap <= cfg_.tol_paircorr ? verdict::pass : verdict::fail;
        else
            rep.result = verdict::informational;
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_simple(double T, double alpha) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "stats.simple";
        rep.params = {{"T", detail::fmt_num(T)}, {"alpha", detail::fmt_num(alpha)}};
        const ZeroSet& zs = cache_.ensure(T);
        double bound;
        if (cfg_.inject_double) {
            ZeroSet injected = with_injected_double_zero(zs, zs.count_below(T) / 2);
            bound = simple_zero_bound(T, alpha, injected);
            rep.params.emplace_back("inject_double", "true");
        } else {
            bound = simple_zero_bound(T, alpha, zs);
        }
        rep.lhs = bound;
        rep.rhs = 2.0 / 3.0;
        rep.finish_errors();
        rep.result = bound >= cfg_.bound_simple ? verdict::pass : verdict::fail;
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_gaps(double T) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "stats.gaps";
        rep.params = {{"T", detail::fmt_num(T)}};
        const ZeroSet& zs = cache_.ensure(T);
        GapReport g = gap_report(T, zs);
        rep.lhs = g.min_normalized_gap;
        rep.rhs = 0.78;
        rep.zeros_used = g.zeros_used;
        rep.finish_errors();
        rep.params.emplace_back("argmin_gamma", detail::fmt_num(g.argmin_pair.first));
        rep.params.emplace_back("sine_sum_min", detail::fmt_num(g.sine_sum_min));
        rep.params.emplace_back("sine_sum_median", detail::fmt_num(g.sine_sum_median));
        rep.params.emplace_back("sine_sum_max", detail::fmt_num(g.sine_sum_max));
        rep.result = (g.min_normalized_gap < 0.78 && g.lambda_threshold_check)
                         ? verdict::pass
                         : verdict::fail;
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_census(double eps, double T) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "stats.census";
        rep.params = {{"eps", detail::fmt_num(eps)}, {"T", detail::fmt_num(T)}};
        const ZeroSet& zs =
            cache_.current().records.empty() ? cache_.ensure(T) : cache_.current();
        CensusReport c = offline_census(zs, eps, T);
        rep.lhs = static_cast<double>(c.n_offline);
        rep.rhs = 0.0;
        rep.zeros_used = static_cast<long long>(zs.records.size());
        rep.finish_errors();
        rep.params.emplace_back("boxes", std::to_string(c.boxes.size()));
        rep.warnings = c.clustering_flags;
        rep.result = verdict::informational;
        rep.runtime_ms = sw.ms();
        return rep;
    }

    Report run_histogram(double T, double bin_width, double max_range,
                         std::string* csv_out = nullptr) {
        detail::StopWatch sw;
        Report rep;
        rep.task = "stats.histogram";
        rep.params = {{"T", detail::fmt_num(T)},
                      {"bin_width", detail::fmt_num(bin_width)},
                      {"max_range", detail::fmt_num(max_range)}};
        const ZeroSet& zs = cache_.ensure(T);
        auto rows = pair_histogram(T, zs, bin_width, max_range);
        long long mass = 0;
        std::ostringstream os;
        os << "bin_lo,bin_hi,count,gue_prediction\n";
        for (const auto& r : rows) {
            mass += r.count;
            os << detail::fmt_num(r.bin_lo) << ',' << detail::fmt_num(r.bin_hi) << ','
               << r.count << ',' << detail::fmt_num(r.gue_prediction) << '\n';
        }
        if (csv_out) *csv_out = os.str();
        rep.lhs = static_cast<double>(mass);
        rep.rhs = static_cast<double>(mass);
        rep.finish_errors();
        rep.result = verdict::informational;
        rep.runtime_ms = sw.ms();
        return rep;
    }

    // Oracle for the Fejer transform built from its three Perron-type pieces,
    // each integrated over a finite window with analytic integration-by-parts
    // tails. Lives here so both the mellin task and the tests share it.
    cplx fejer_transform_oracle(const FejerWindow& win, double y, mellin_variant variant,
                                double c = 1.5, double V = 20000.0) {
        cplx rho = variant == mellin_variant::direct ? win.rho : 1.0 - win.rho;
        cplx total = 0.0;
        struct Piece {
            double w;
            cplx coef;
        };
        double lq2 = win.log_q() / 2.0;
        const Piece pieces[] = {{y * win.Q, std::exp(cplx(-2.0 * lq2) * rho)},
                                {y / win.Q, std::exp(cplx(2.0 * lq2) * rho)},
                                {y, cplx(-2.0)}};
        for (const auto& pc : pieces) total += pc.coef * perron_piece(pc.w, rho, c, V);
        return total;
    }

  private:
    static cplx detail_pow(double x, const cplx& s) { return std::exp(s * std::log(x)); }

    // (1/2 pi i) Int_(c) w^s / (s-rho)^2 ds over |Im s - Im rho| <= V, plus
    // two integration-by-parts boundary terms for the oscillatory tails.
    cplx perron_piece(double w, const cplx& rho, double c, double V) {
        double lw = std::log(w);
        if (std::abs(lw) <= 1e-3)
            throw numeric_error("perron_piece: phase too small for the tail correction");
        double gc = rho.imag();
        LineIntegralSpec spec;
        spec.abscissa = c;
        spec.center = gc;
        spec.half_width = V;
        spec.tolerance = 1e-9;
        auto f = [&](const cplx& s) {
            cplx z = s - rho;
            return std::exp(s * lw) / (z * z);
        };
        cplx body = damped_line_integral(f, spec).value;
        // writing the integrand as A(t) e^{i lw t}, two rounds of integration
        // by parts give the tail of the t-integral as
        //   [G(t1)-G(t0)]/(i lw) - 2i [H(t0)-H(t1)]/(i lw)^2,  H = w^s/z^3
        auto G = [&](double t) {
            cplx s(c, t);
            cplx z = s - rho;
            return std::exp(s * lw) / (z * z);
        };
        auto H = [&](double t) {
            cplx s(c, t);
            cplx z = s - rho;
            return std::exp(s * lw) / (z * z * z);
        };
        double t0 = gc + V, t1 = gc - V;
        cplx iom(0.0, lw);
        cplx tail_t = (G(t1) - G(t0)) / iom - cplx(0, 2) * (H(t0) - H(t1)) / (iom * iom);
        return body + tail_t / constants::two_pi;
    }

    RunConfig cfg_;
    SieveTable sieve_;
    ZeroCache cache_;
};

// Deterministic suite execution: task order is the construction order below.
inline std::vector<Report> run_suite(const RunConfig& cfg) {
    Harness h(cfg);
    std::vector<Report> out;
    auto each_x_real = [&](auto&& fn) {
        for (double x : cfg.x_real_list)
            for (double T : cfg.T_list) fn(x, T);
    };
    if (cfg.command == "verify") {
        if (cfg.subcommand == "landau")
            each_x_real([&](double x, double T) { out.push_back(h.run_landau(x, T)); });
        else if (cfg.subcommand == "log-landau")
            each_x_real([&](double x, double T) { out.push_back(h.run_log_landau(x, T)); });
        else if (cfg.subcommand == "isolation")
            for (double x : cfg.x_real_list)
                out.push_back(h.run_isolation(x, cfg.zero_index, cfg.isolation_M));
        else if (cfg.subcommand == "fejer-lemma")
            for (double x : cfg.x_real_list)
                for (double a : cfg.alpha_list)
                    out.push_back(h.run_fejer_lemma(x, cfg.zero_index, a));
        else if (cfg.subcommand == "mellin")
            for (double T : cfg.T_list)
                for (double a : cfg.alpha_list) {
                    auto batch = h.run_mellin(T, a);
                    out.insert(out.end(), batch.begin(), batch.end());
                }
        else if (cfg.subcommand == "theorem1")
            for (auto [r, s] : cfg.x_list)
                for (double T : cfg.T_list)
                    for (double a : cfg.alpha_list) out.push_back(h.run_theorem1(r, s, T, a));
        else if (cfg.subcommand == "theorem2")
            for (auto [r, s] : cfg.x_list)
                for (double T : cfg.T_list)
                    for (double a : cfg.alpha_list) out.push_back(h.run_theorem2(r, s, T, a));
        else if (cfg.subcommand == "gonek")
            for (auto [r, s] : cfg.x_list)
                for (double T : cfg.T_list) out.push_back(h.run_gonek(r, s, T));
        else
            throw domain_error("unknown verify subcommand");
    } else if (cfg.command == "stats") {
        if (cfg.subcommand == "paircorr")
            for (double T : cfg.T_list)
                for (double a : cfg.alpha_list) out.push_back(h.run_paircorr(T, a));
        else if (cfg.subcommand == "simple")
            for (double T : cfg.T_list)
                for (double a : cfg.alpha_list) out.push_back(h.run_simple(T, a));
        else if (cfg.subcommand == "gaps")
            for (double T : cfg.T_list) out.push_back(h.run_gaps(T));
        else if (cfg.subcommand == "census")
            for (double T : cfg.T_list) out.push_back(h.run_census(cfg.eps, T));
        else if (cfg.subcommand == "histogram")
            for (double T : cfg.T_list) {
                std::string csv;
                Report rep = h.run_histogram(T, cfg.bin_width, cfg.max_range, &csv);
                std::filesystem::create_directories(cfg.out_dir);
                std::ofstream f(cfg.out_dir + "/histogram_T" + detail::fmt_num(T) + ".csv");
                f << csv;
                out.push_back(rep);
            }
        else
            throw domain_error("unknown stats subcommand");
    } else {
        throw domain_error("unknown command");
    }
    return out;
}

}  // namespace zetalab
