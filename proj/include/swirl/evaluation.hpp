#ifndef SWIRL_EVALUATION_HPP
#define SWIRL_EVALUATION_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "swirl/corpus.hpp"
#include "swirl/errors.hpp"
#include "swirl/index.hpp"
#include "swirl/pso.hpp"
#include "swirl/similarity.hpp"

namespace swirl {

struct confusion_counts {
    long long tp = 0, fp = 0, fn = 0, tn = 0;

    bool operator==(const confusion_counts&) const = default;
};

/// Set arithmetic over retrieved/relevant documents; tn completes the
/// counts to the corpus size.
inline confusion_counts confusion(const std::set<int>& retrieved, const std::set<int>& relevant,
                                  int num_docs) {
    const auto check = [num_docs](const std::set<int>& s, const char* name) {
        for (const int id : s)
            if (id < 1 || id > num_docs)
                throw contract_error(std::string("confusion: ") + name + " id " +
                                     std::to_string(id) + " outside 1.." +
                                     std::to_string(num_docs));
    };
    check(retrieved, "retrieved");
    check(relevant, "relevant");
    confusion_counts c;
    for (const int id : retrieved) {
        if (relevant.contains(id))
            ++c.tp;
        else
            ++c.fp;
    }
    c.fn = static_cast<long long>(relevant.size()) - c.tp;
    c.tn = static_cast<long long>(num_docs) - c.tp - c.fp - c.fn;
    return c;
}

/// Confusion-matrix metrics. Every 0/0 yields 0 and raises the matching
/// degenerate flag; values are never NaN.
struct basic_metrics_result {
    double accuracy = 0.0;
    double sensitivity = 0.0;   // recall
    double specificity = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    struct {
        bool accuracy = false;
        bool sensitivity = false;
        bool specificity = false;
        bool precision = false;
        bool f_measure = false;
        bool any() const { return accuracy || sensitivity || specificity || precision || f_measure; }
    } degenerate;
};

inline basic_metrics_result basic_metrics(const confusion_counts& c) {
    basic_metrics_result r;
    const auto ratio = [](long long num, long long den, double& out, bool& flag) {
        if (den == 0) {
            out = 0.0;
            flag = true;
        } else {
            out = static_cast<double>(num) / static_cast<double>(den);
        }
    };
    ratio(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn, r.accuracy, r.degenerate.accuracy);
    ratio(c.tp, c.tp + c.fn, r.sensitivity, r.degenerate.sensitivity);
    ratio(c.tn, c.tn + c.fp, r.specificity, r.degenerate.specificity);
    ratio(c.tp, c.tp + c.fp, r.precision, r.degenerate.precision);
    r.recall = r.sensitivity;
    if (r.precision + r.recall == 0.0) {
        r.f_measure = 0.0;
        r.degenerate.f_measure = true;
    } else {
        r.f_measure = 2.0 * (r.precision * r.recall) / (r.precision + r.recall);
    }
    return r;
}

/// Interpolated precision at the 11 standard recall levels 0.0, 0.1 .. 1.0.
struct pr_curve {
    std::array<double, 11> precision{};

    static double level(std::size_t i) { return static_cast<double>(i) / 10.0; }
};

/// At each level r: the maximum precision over all ranks whose recall
/// reaches r; 0 where no rank does. Non-increasing in r by construction.
inline pr_curve interpolated_pr(const std::vector<int>& ranking, const std::set<int>& relevant) {
    if (relevant.empty()) throw contract_error("interpolated_pr: query has no relevant documents");
    std::vector<std::pair<double, double>> points; // (recall, precision) per rank
    points.reserve(ranking.size());
    long long hits = 0;
    for (std::size_t rank = 0; rank < ranking.size(); ++rank) {
        if (relevant.contains(ranking[rank])) ++hits;
        points.emplace_back(static_cast<double>(hits) / static_cast<double>(relevant.size()),
                            static_cast<double>(hits) / static_cast<double>(rank + 1));
    }
    pr_curve curve;
    for (std::size_t i = 0; i < curve.precision.size(); ++i) {
        const double level = pr_curve::level(i);
        double best = 0.0;
        for (const auto& [recall, precision] : points)
            if (recall >= level) best = std::max(best, precision);
        curve.precision[i] = best;
    }
    return curve;
}

/// Mean over all relevant documents of the precision at their rank;
/// relevant documents missing from the ranking contribute 0.
inline double average_precision(const std::vector<int>& ranking, const std::set<int>& relevant) {
    if (relevant.empty()) throw contract_error("average_precision: query has no relevant documents");
    long long hits = 0;
    double sum = 0.0;
    for (std::size_t rank = 0; rank < ranking.size(); ++rank) {
        if (relevant.contains(ranking[rank])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
        }
    }
    return sum / static_cast<double>(relevant.size());
}

inline double mean_average_precision(const std::vector<double>& per_query_ap) {
    if (per_query_ap.empty()) throw contract_error("mean_average_precision: no queries");
    double sum = 0.0;
    for (const double ap : per_query_ap) sum += ap;
    return sum / static_cast<double>(per_query_ap.size());
}

enum class engine_kind { exhaustive, pso };

inline std::string_view to_string(engine_kind e) {
    return e == engine_kind::exhaustive ? "exhaustive" : "pso";
}

inline std::optional<engine_kind> engine_from_string(std::string_view s) {
    if (s == "exhaustive") return engine_kind::exhaustive;
    if (s == "pso") return engine_kind::pso;
    return std::nullopt;
}

struct engine_config {
    engine_kind engine = engine_kind::exhaustive;
    pso_config pso;
    int k = 50;                  // retrieval cutoff
    unsigned threads = 1;
    int timing_repetitions = 3;  // response time = median over repetitions
};

struct query_metrics {
    int query_id = 0;
    confusion_counts confusion;
    basic_metrics_result metrics;
    double average_precision = 0.0;
    pr_curve curve;
    int docs_retrieved = 0;              // score > 0 within the top-k cutoff
    double top_score = 0.0;
    std::uint64_t fitness_evaluations = 0;
    double response_time_ms = 0.0;       // median of repetitions, scoring+ranking only
    bool oov = false;
};

struct evaluation_report {
    engine_kind engine = engine_kind::exhaustive;
    similarity_measure measure = similarity_measure::cosine;
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<query_metrics> per_query;        // query id order
    std::vector<int> excluded_queries;           // no relevance judgments
    double map = 0.0;
    pr_curve mean_curve;
    std::uint64_t total_fitness_evaluations = 0;
    std::uint64_t total_docs_retrieved = 0;
    double total_response_time_ms = 0.0;
};

namespace detail {

// retrieved list = ranking prefix with positive scores, already <= k long
inline std::vector<ranked_hit> positive_prefix(std::vector<ranked_hit> ranking) {
    const auto first_zero = std::find_if(ranking.begin(), ranking.end(),
                                         [](const ranked_hit& h) { return !(h.score > 0.0); });
    ranking.erase(first_zero, ranking.end());
    return ranking;
}

} // namespace detail

/// Runs one engine over the judged queries and assembles the full metrics
/// report. PSO seeds are derived per query from the base seed, so both
/// engines and all measures see identical inputs and the run reproduces
/// bit-for-bit under the same configuration.
inline evaluation_report evaluate_engine(const std::vector<weighted_query>& queries,
                                         const relevance_judgments& qrels,
                                         const inverted_index& idx, similarity_measure measure,
                                         const engine_config& cfg) {
    if (cfg.k < 1) throw config_error("evaluate: cutoff k must be >= 1");
    if (cfg.timing_repetitions < 1) throw config_error("evaluate: repetitions must be >= 1");
    evaluation_report report;
    report.engine = cfg.engine;
    report.measure = measure;
    report.k = cfg.k;
    report.seed = cfg.pso.rng_seed;

    std::vector<double> aps;
    std::array<double, 11> curve_sum{};
    for (const weighted_query& query : queries) {
        const auto rel_it = qrels.find(query.query_id);
        if (rel_it == qrels.end() || rel_it->second.empty()) {
            report.excluded_queries.push_back(query.query_id);
            continue;
        }
        const std::set<int>& relevant = rel_it->second;

        std::vector<ranked_hit> ranking;
        std::uint64_t evaluations = 0;
        std::vector<double> times_ms;
        times_ms.reserve(cfg.timing_repetitions);
        for (int rep = 0; rep < cfg.timing_repetitions; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            if (cfg.engine == engine_kind::exhaustive) {
                ranking = rank_all(measure, query, idx, static_cast<std::size_t>(cfg.k),
                                   cfg.threads);
                evaluations = idx.num_docs();
            } else {
                pso_config per_query = cfg.pso;
                per_query.rng_seed = rng::splitmix64(
                    rng::splitmix64(cfg.pso.rng_seed) ^
                    static_cast<std::uint64_t>(query.query_id));
                const pso_result result =
                    pso_search(query, idx, measure, per_query, static_cast<std::size_t>(cfg.k));
                ranking = result.ranking;
                evaluations = result.fitness_evaluations;
            }
            const auto stop = std::chrono::steady_clock::now();
            times_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        }
        std::sort(times_ms.begin(), times_ms.end());
        const double median_ms = times_ms[times_ms.size() / 2];

        const std::vector<ranked_hit> retrieved_hits = detail::positive_prefix(std::move(ranking));
        std::vector<int> retrieved_ids;
        std::set<int> retrieved_set;
        retrieved_ids.reserve(retrieved_hits.size());
        for (const ranked_hit& h : retrieved_hits) {
            retrieved_ids.push_back(h.doc_id);
            retrieved_set.insert(h.doc_id);
        }

        query_metrics qm;
        qm.query_id = query.query_id;
        qm.oov = query.empty();
        qm.confusion = confusion(retrieved_set, relevant, static_cast<int>(idx.num_docs()));
        qm.metrics = basic_metrics(qm.confusion);
        qm.average_precision = average_precision(retrieved_ids, relevant);
        qm.curve = interpolated_pr(retrieved_ids, relevant);
        qm.docs_retrieved = static_cast<int>(retrieved_ids.size());
        qm.top_score = retrieved_hits.empty() ? 0.0 : retrieved_hits.front().score;
        qm.fitness_evaluations = evaluations;
        qm.response_time_ms = median_ms;

        aps.push_back(qm.average_precision);
        for (std::size_t i = 0; i < curve_sum.size(); ++i) curve_sum[i] += qm.curve.precision[i];
        report.total_fitness_evaluations += evaluations;
        report.total_docs_retrieved += static_cast<std::uint64_t>(qm.docs_retrieved);
        report.total_response_time_ms += median_ms;
        report.per_query.push_back(std::move(qm));
    }

    if (aps.empty()) throw config_error("evaluate: no query has relevance judgments");
    report.map = mean_average_precision(aps);
    for (std::size_t i = 0; i < curve_sum.size(); ++i)
        report.mean_curve.precision[i] = curve_sum[i] / static_cast<double>(aps.size());
    return report;
}

/// Both engines over identical inputs: the exhaustive baseline first, then
/// the swarm engine, timed in isolation.
inline std::pair<evaluation_report, evaluation_report> compare_engines(
    const std::vector<weighted_query>& queries, const relevance_judgments& qrels,
    const inverted_index& idx, similarity_measure measure, const engine_config& cfg) {
    engine_config exhaustive_cfg = cfg;
    exhaustive_cfg.engine = engine_kind::exhaustive;
    engine_config pso_cfg = cfg;
    pso_cfg.engine = engine_kind::pso;
    auto exhaustive = evaluate_engine(queries, qrels, idx, measure, exhaustive_cfg);
    auto swarm = evaluate_engine(queries, qrels, idx, measure, pso_cfg);
    return {std::move(exhaustive), std::move(swarm)};
}

} // namespace swirl

#endif // SWIRL_EVALUATION_HPP
