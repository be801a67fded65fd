#ifndef SWIRL_REPORT_HPP
#define SWIRL_REPORT_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swirl/errors.hpp"
#include "swirl/evaluation.hpp"

namespace swirl {

namespace detail {

// fixed formatting keeps every emitted file byte-reproducible
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write report file: " + path.string());
    out << text;
}

} // namespace detail

/// Everything deterministic about a finished run; timing lives in a
/// separate document so byte-level reproducibility checks can include
/// every other artifact.
inline nlohmann::json report_to_json(const evaluation_report& r) {
    nlohmann::json j;
    j["engine"] = std::string(to_string(r.engine));
    j["measure"] = std::string(to_string(r.measure));
    j["k"] = r.k;
    j["seed"] = r.seed;
    j["map"] = r.map;
    j["total_fitness_evaluations"] = r.total_fitness_evaluations;
    j["total_docs_retrieved"] = r.total_docs_retrieved;
    j["excluded_queries"] = r.excluded_queries;
    nlohmann::json curve = nlohmann::json::array();
    for (std::size_t i = 0; i < r.mean_curve.precision.size(); ++i)
        curve.push_back({{"recall", pr_curve::level(i)}, {"precision", r.mean_curve.precision[i]}});
    j["mean_pr_curve"] = std::move(curve);
    nlohmann::json per_query = nlohmann::json::array();
    for (const query_metrics& q : r.per_query) {
        nlohmann::json jq;
        jq["query_id"] = q.query_id;
        jq["oov"] = q.oov;
        jq["docs_retrieved"] = q.docs_retrieved;
        jq["top_score"] = q.top_score;
        jq["fitness_evaluations"] = q.fitness_evaluations;
        jq["confusion"] = {{"tp", q.confusion.tp},
                           {"fp", q.confusion.fp},
                           {"fn", q.confusion.fn},
                           {"tn", q.confusion.tn}};
        jq["accuracy"] = q.metrics.accuracy;
        jq["sensitivity"] = q.metrics.sensitivity;
        jq["specificity"] = q.metrics.specificity;
        jq["precision"] = q.metrics.precision;
        jq["recall"] = q.metrics.recall;
        jq["f_measure"] = q.metrics.f_measure;
        jq["degenerate"] = q.metrics.degenerate.any();
        jq["average_precision"] = q.average_precision;
        per_query.push_back(std::move(jq));
    }
    j["per_query"] = std::move(per_query);
    return j;
}

inline nlohmann::json timing_to_json(const evaluation_report& r) {
    nlohmann::json j;
    j["engine"] = std::string(to_string(r.engine));
    j["measure"] = std::string(to_string(r.measure));
    j["total_response_time_ms"] = r.total_response_time_ms;
    nlohmann::json per_query = nlohmann::json::array();
    for (const query_metrics& q : r.per_query)
        per_query.push_back({{"query_id", q.query_id}, {"response_time_ms", q.response_time_ms}});
    j["per_query"] = std::move(per_query);
    return j;
}

/// per-query metrics table, one row per judged query
inline std::string metrics_csv(const evaluation_report& r) {
    std::string out = "query_id,tp,fp,fn,tn,accuracy,sensitivity,specificity,precision,recall,"
                      "f_measure,average_precision,docs_retrieved,fitness_evaluations,degenerate\n";
    for (const query_metrics& q : r.per_query) {
        out += std::to_string(q.query_id) + ',' + std::to_string(q.confusion.tp) + ',' +
               std::to_string(q.confusion.fp) + ',' + std::to_string(q.confusion.fn) + ',' +
               std::to_string(q.confusion.tn) + ',' + detail::fmt_double(q.metrics.accuracy) +
               ',' + detail::fmt_double(q.metrics.sensitivity) + ',' +
               detail::fmt_double(q.metrics.specificity) + ',' +
               detail::fmt_double(q.metrics.precision) + ',' +
               detail::fmt_double(q.metrics.recall) + ',' +
               detail::fmt_double(q.metrics.f_measure) + ',' +
               detail::fmt_double(q.average_precision) + ',' +
               std::to_string(q.docs_retrieved) + ',' + std::to_string(q.fitness_evaluations) +
               ',' + (q.metrics.degenerate.any() ? "1" : "0") + '\n';
    }
    return out;
}

/// `recall,precision` rows for one curve — the plotting format
inline std::string pr_curve_csv(const pr_curve& curve) {
    std::string out = "recall,precision\n";
    for (std::size_t i = 0; i < curve.precision.size(); ++i)
        out += detail::fmt_double(pr_curve::level(i)) + "," +
               detail::fmt_double(curve.precision[i]) + "\n";
    return out;
}

/// Writes the full report set for one engine run into `dir`:
/// report.json, metrics.csv, pr_query_<id>.csv per query, pr_mean.csv,
/// and timing.json (the only file allowed to differ between reruns).
inline void write_report_files(const std::filesystem::path& dir, const evaluation_report& r,
                               const nlohmann::json& run_config) {
    std::filesystem::create_directories(dir);
    nlohmann::json j = report_to_json(r);
    j["run_config"] = run_config;
    detail::write_text_file(dir / "report.json", j.dump(2) + "\n");
    detail::write_text_file(dir / "timing.json", timing_to_json(r).dump(2) + "\n");
    detail::write_text_file(dir / "metrics.csv", metrics_csv(r));
    detail::write_text_file(dir / "pr_mean.csv", pr_curve_csv(r.mean_curve));
    for (const query_metrics& q : r.per_query)
        detail::write_text_file(dir / ("pr_query_" + std::to_string(q.query_id) + ".csv"),
                                pr_curve_csv(q.curve));
}

/// side-by-side aggregate table for engine/measure comparisons
inline std::string comparison_csv(const std::vector<evaluation_report>& reports) {
    std::string out = "engine,measure,k,map,total_fitness_evaluations,total_docs_retrieved\n";
    for (const evaluation_report& r : reports)
        out += std::string(to_string(r.engine)) + ',' + std::string(to_string(r.measure)) + ',' +
               std::to_string(r.k) + ',' + detail::fmt_double(r.map) + ',' +
               std::to_string(r.total_fitness_evaluations) + ',' +
               std::to_string(r.total_docs_retrieved) + '\n';
    return out;
}

} // namespace swirl

#endif // SWIRL_REPORT_HPP
