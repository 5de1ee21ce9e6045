#pragma once

#include <sstream>

#include <json.hpp>

#include "zetalab/common.hpp"

namespace zetalab {

enum class verdict { pass, fail, informational };

inline const char* to_string(verdict v) {
    switch (v) {
        case verdict::pass: return "pass";
        case verdict::fail: return "fail";
        case verdict::informational: return "informational";
    }
    return "?";
}

// Serializable record of one verification task.
struct Report {
    std::string task;
    std::vector<std::pair<std::string, std::string>> params;
    cplx lhs{};
    cplx rhs{};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double uncertainty_envelope = 0.0;
    double zero_truncation_bound = 0.0;
    double term_truncation_bound = 0.0;
    long long zeros_used = 0;
    long long terms_used = 0;
    double runtime_ms = 0.0;
    verdict result = verdict::informational;
    std::vector<std::string> warnings;

    void finish_errors() {
        abs_err = std::abs(lhs - rhs);
        double scale = std::max(std::abs(lhs), std::abs(rhs));
        rel_err = scale > 0 ? abs_err / scale : 0.0;
    }
};

inline nlohmann::ordered_json report_to_json(const Report& r, bool include_runtime = true) {
    nlohmann::ordered_json j;
    j["task"] = r.task;
    nlohmann::ordered_json p;
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = p;
    j["lhs"] = {{"re", r.lhs.real()}, {"im", r.lhs.imag()}};
    j["rhs"] = {{"re", r.rhs.real()}, {"im", r.rhs.imag()}};
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["uncertainty_envelope"] = r.uncertainty_envelope;
    j["zero_truncation_bound"] = r.zero_truncation_bound;
    j["term_truncation_bound"] = r.term_truncation_bound;
    j["zeros_used"] = r.zeros_used;
    j["terms_used"] = r.terms_used;
    if (include_runtime) j["runtime_ms"] = r.runtime_ms;
    j["verdict"] = to_string(r.result);
    j["warnings"] = r.warnings;
    return j;
}

inline std::string reports_to_json(const std::vector<Report>& reports,
                                   bool include_runtime = true) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r, include_runtime));
    return arr.dump(2) + "\n";
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string reports_to_csv(const std::vector<Report>& reports) {
    std::ostringstream os;
    os << "task,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,uncertainty_envelope,"
          "zero_truncation_bound,term_truncation_bound,zeros_used,terms_used,runtime_ms,"
          "verdict\n";
    for (const auto& r : reports) {
        std::string params;
        for (const auto& [k, v] : r.params) {
            if (!params.empty()) params += ';';
            params += k + "=" + v;
        }
        nlohmann::ordered_json num;  // reuse JSON double formatting for determinism
        auto fmt = [&](double x) {
            num = x;
            return num.dump();
        };
        os << csv_escape(r.task) << ',' << csv_escape(params) << ',' << fmt(r.lhs.real()) << ','
           << fmt(r.lhs.imag()) << ',' << fmt(r.rhs.real()) << ',' << fmt(r.rhs.imag()) << ','
           << fmt(r.abs_err) << ',' << fmt(r.rel_err) << ',' << fmt(r.uncertainty_envelope)
           << ',' << fmt(r.zero_truncation_bound) << ',' << fmt(r.term_truncation_bound) << ','
           << r.zeros_used << ',' << r.terms_used << ',' << fmt(r.runtime_ms) << ','
           << to_string(r.result) << '\n';
    }
    return os.str();
}

}  // namespace zetalab
