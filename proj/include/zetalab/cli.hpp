#pragma once

#include <iostream>

#include <CLI11.hpp>

#include "zetalab/harness.hpp"

namespace zetalab {

namespace detail {

inline void parse_x_token(const std::string& tok, RunConfig& cfg) {
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        long long r = std::stoll(tok.substr(0, slash));
        long long s = std::stoll(tok.substr(slash + 1));
        if (r < 1 || s < 1) throw CLI::ValidationError("--x", "numerator/denominator must be >= 1");
        cfg.x_list.emplace_back(r, s);
        cfg.x_real_list.push_back(static_cast<double>(r) / static_cast<double>(s));
        return;
    }
    double v = std::stod(tok);
    cfg.x_real_list.push_back(v);
    double rounded = std::nearbyint(v);
    if (std::abs(v - rounded) < 1e-12 && rounded >= 1.0)
        cfg.x_list.emplace_back(static_cast<long long>(rounded), 1);
    else
        cfg.x_list.emplace_back(0, 0);  // not representable as a rational argument
}

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const numeric_error*>(&e)) return 4;
    if (dynamic_cast<const data_error*>(&e)) return 3;
    return 2;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"zetalab: numerical laboratory for explicit formulas over zeta zeros"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::vector<std::string> x_tokens;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--T", cfg.T_list, "height parameter(s)");
        sub->add_option("--alpha", cfg.alpha_list, "alpha parameter(s)");
        sub->add_option("--x", x_tokens, "argument(s) x, as R/S or a decimal");
        sub->add_option("--eps", cfg.eps, "epsilon for regimes and envelopes");
        sub->add_option("--zeros-file", cfg.zeros_file, "zero-table cache file");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--format", cfg.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--sieve-limit", cfg.sieve_limit, "initial sieve size");
        sub->add_option("--tol-quad", cfg.fopts.quad_tol, "quadrature tolerance");
        sub->add_option("--tol-mellin", cfg.tol_mellin, "transform comparison tolerance");
        sub->add_option("--tol-paircorr", cfg.tol_paircorr, "pair correlation relative gap");
        sub->add_option("--c-unc", cfg.fopts.c_unc, "slack for O(1) terms");
        sub->add_option("--zero-index", cfg.zero_index, "1-based zero index for rho centers");
        sub->add_option("--M", cfg.isolation_M, "isolation window inverse width");
        sub->add_option("--fejer-coverage", cfg.fejer_coverage,
                        "zero coverage past Im rho for the Fejer lemma");
        std::map<std::string, theorem1_m_choice> mmap{{"pi", theorem1_m_choice::p_i},
                                                      {"p2i", theorem1_m_choice::p_2i}};
        sub->add_option("--theorem1-m", cfg.fopts.m_choice, "m in the x=p^i case")
            ->transform(CLI::CheckedTransformer(mmap, CLI::ignore_case));
    };

    CLI::App* zeros = app.add_subcommand("zeros", "compute, import or export zero tables");
    CLI::App* z_compute = zeros->add_subcommand("compute", "locate zeros up to a height");
    z_compute->add_option("--t-min", cfg.t_min, "lower scan bound");
    z_compute->add_option("--t-max", cfg.t_max, "upper scan bound")->required();
    z_compute->add_option("--out", cfg.out_file, "output table")->required();
    CLI::App* z_import = zeros->add_subcommand("import", "validate and normalize a table");
    z_import->add_option("--in", cfg.in_file, "input table")->required();
    z_import->add_option("--out", cfg.out_file, "normalized output table");
    CLI::App* z_export = zeros->add_subcommand("export", "re-serialize a cache file");
    z_export->add_option("--zeros-file", cfg.zeros_file, "cache file")->required();
    z_export->add_option("--out", cfg.out_file, "output table")->required();

    CLI::App* verify = app.add_subcommand("verify", "two-sided identity checks");
    for (const char* name : {"landau", "isolation", "log-landau", "fejer-lemma", "mellin",
                             "theorem1", "theorem2", "gonek"}) {
        CLI::App* sub = verify->add_subcommand(name, "");
        add_common(sub);
    }
    CLI::App* stats = app.add_subcommand("stats", "zero statistics");
    for (const char* name : {"paircorr", "simple", "gaps", "census", "histogram"}) {
        CLI::App* sub = stats->add_subcommand(name, "");
        add_common(sub);
        if (std::string(name) == "paircorr") {
            std::map<std::string, pair_weighting> wmap{{"sharp", pair_weighting::sharp},
                                                       {"gaussian", pair_weighting::gaussian}};
            sub->add_option("--weighting", cfg.weighting, "sharp|gaussian")
                ->transform(CLI::CheckedTransformer(wmap, CLI::ignore_case));
        }
        if (std::string(name) == "simple")
            sub->add_flag("--inject-double", cfg.inject_double,
                          "inject one synthetic double zero");
        if (std::string(name) == "histogram") {
            sub->add_option("--bin-width", cfg.bin_width, "histogram bin width");
            sub->add_option("--max-range", cfg.max_range, "largest normalized gap");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        for (const auto& tok : x_tokens) detail::parse_x_token(tok, cfg);

        if (zeros->parsed()) {
            if (z_compute->parsed()) {
                require(cfg.t_max > 0, "zeros compute: --t-max required");
                ZeroSet set = find_zeros(std::max(cfg.t_min, 10.0), cfg.t_max);
                store_zeros(set, cfg.out_file);
                std::cout << "wrote " << set.records.size() << " zeros to " << cfg.out_file
                          << " (complete to " << set.t_max_complete << ")\n";
                for (const auto& a : set.anomalies) std::cout << "note: " << a << '\n';
                return 0;
            }
            if (z_import->parsed()) {
                ZeroSet set = load_zeros(cfg.in_file);
                std::cout << "loaded " << set.records.size() << " zeros, complete to "
                          << set.t_max_complete << '\n';
                if (!cfg.out_file.empty()) store_zeros(set, cfg.out_file);
                return 0;
            }
            if (z_export->parsed()) {
                ZeroSet set = load_zeros(cfg.zeros_file);
                store_zeros(set, cfg.out_file);
                std::cout << "exported " << set.records.size() << " zeros\n";
                return 0;
            }
            throw domain_error("zeros: missing subcommand");
        }

        cfg.command = verify->parsed() ? "verify" : "stats";
        CLI::App* group = verify->parsed() ? verify : stats;
        for (CLI::App* sub : group->get_subcommands())
            cfg.subcommand = sub->get_name();
        if (cfg.subcommand.empty()) throw domain_error("missing subcommand");
        if (cfg.T_list.empty()) cfg.T_list.push_back(200.0);
        if (cfg.x_real_list.empty()) {
            cfg.x_real_list.push_back(4.0);
            cfg.x_list.emplace_back(4, 1);
        }

        std::vector<Report> reports = run_suite(cfg);
        std::filesystem::create_directories(cfg.out_dir);
        std::string path = cfg.out_dir + "/reports." + cfg.format;
        std::ofstream out(path);
        out << (cfg.format == "json" ? reports_to_json(reports) : reports_to_csv(reports));
        bool all_pass = true;
        for (const auto& r : reports) {
            std::cout << '[' << to_string(r.result) << "] " << r.task;
            for (const auto& [k, v] : r.params) std::cout << ' ' << k << '=' << v;
            std::cout << " abs_err=" << r.abs_err << " budget="
                      << r.uncertainty_envelope + r.zero_truncation_bound +
                             r.term_truncation_bound
                      << '\n';
            if (r.result == verdict::fail) all_pass = false;
        }
        std::cout << "reports written to " << path << '\n';
        return all_pass ? 0 : 1;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return detail::exit_code_for(e);
    }
}

}  // namespace zetalab
