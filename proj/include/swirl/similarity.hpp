#ifndef SWIRL_SIMILARITY_HPP
#define SWIRL_SIMILARITY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

#include "swirl/errors.hpp"
#include "swirl/index.hpp"

namespace swirl {

enum class similarity_measure { cosine, dice, jaccard, smdr };

inline constexpr std::array<similarity_measure, 4> all_measures = {
    similarity_measure::cosine, similarity_measure::dice, similarity_measure::jaccard,
    similarity_measure::smdr};

inline std::string_view to_string(similarity_measure m) {
    switch (m) {
        case similarity_measure::cosine: return "cosine";
        case similarity_measure::dice: return "dice";
        case similarity_measure::jaccard: return "jaccard";
        case similarity_measure::smdr: return "smdr";
    }
    return "?";
}

inline std::optional<similarity_measure> measure_from_string(std::string_view s) {
    for (const auto m : all_measures)
        if (s == to_string(m)) return m;
    return std::nullopt;
}

/// Aligned inputs for the document-retrieval similarity score: q_i and t_i
/// are the query and document weights, tc_i the document's raw term counts
/// (support identical to t), and query_hit_count the number of distinct
/// query terms that occur in the document, applied as a scalar at every
/// index.
struct smdr_inputs {
    std::span<const double> q;
    std::span<const double> t;
    std::span<const int> tc;
    int query_hit_count = 0;
};

/// Scores a (query, document) pair:
///
///   sum_i(tc_i * qhc * q_i * t_i)
///   ------------------------------------------------------------
///   sqrt(sum_i (tc_i/qhc)^2) + sqrt(sum_i q_i^2) * sqrt(sum_i t_i^2)
///
/// The hit count guards the tc/qhc ratio: no hits means score 0. Unlike
/// the cosine family the result has no unit upper bound, and it is not
/// symmetric in query and document.
inline double smdr_score(const smdr_inputs& in) {
    if (in.t.size() != in.tc.size() || in.q.size() != in.t.size())
        throw contract_error("smdr_score: q, t and tc must share one index domain");
    if (in.query_hit_count < 0) throw contract_error("smdr_score: negative hit count");
    if (in.query_hit_count == 0) return 0.0;
    const double qhc = static_cast<double>(in.query_hit_count);
    double numerator = 0.0, tc_sq = 0.0, q_sq = 0.0, t_sq = 0.0;
    for (std::size_t i = 0; i < in.t.size(); ++i) {
        const double tc = static_cast<double>(in.tc[i]);
        numerator += tc * qhc * in.q[i] * in.t[i];
        tc_sq += (tc / qhc) * (tc / qhc);
        q_sq += in.q[i] * in.q[i];
        t_sq += in.t[i] * in.t[i];
    }
    const double denominator = std::sqrt(tc_sq) + std::sqrt(q_sq) * std::sqrt(t_sq);
    return denominator > 0.0 ? numerator / denominator : 0.0;
}

namespace detail {

// one merge over the sparse supports collects everything every measure needs
struct overlap_stats {
    double dot = 0.0;        // sum of q_i * t_i over the overlap
    double smdr_num = 0.0;   // sum of tc_i * q_i * t_i over the overlap
    double q_sq = 0.0;       // query norm^2 over its own support
    double t_sq = 0.0;       // document norm^2 over its own support
    double tc_sq = 0.0;      // sum of tc_i^2 over the document support
    int hits = 0;            // qhc: distinct query terms present in the doc
};

inline overlap_stats merge(const weighted_query& q, const doc_vector& d) {
    overlap_stats s;
    for (const double w : q.weights) s.q_sq += w * w;
    for (const double w : d.weights) s.t_sq += w * w;
    for (const int c : d.counts) s.tc_sq += static_cast<double>(c) * static_cast<double>(c);
    std::size_t i = 0, j = 0;
    while (i < q.terms.size() && j < d.terms.size()) {
        if (q.terms[i] < d.terms[j]) {
            ++i;
        } else if (q.terms[i] > d.terms[j]) {
            ++j;
        } else {
            s.dot += q.weights[i] * d.weights[j];
            s.smdr_num += static_cast<double>(d.counts[j]) * q.weights[i] * d.weights[j];
            ++s.hits;
            ++i;
            ++j;
        }
    }
    return s;
}

} // namespace detail

/// Similarity of one document to the query under the chosen measure.
/// Cosine, dice and jaccard live in [0, 1]; all four return 0 when the
/// overlap carries no weight.
inline double score(similarity_measure measure, const weighted_query& q, int doc_id,
                    const inverted_index& idx) {
    const doc_vector& d = idx.vector_of(doc_id);
    if (q.empty() || d.empty()) return 0.0;
    const detail::overlap_stats s = detail::merge(q, d);
    switch (measure) {
        case similarity_measure::cosine:
            return s.dot == 0.0 ? 0.0 : s.dot / (std::sqrt(s.q_sq) * std::sqrt(s.t_sq));
        case similarity_measure::dice:
            return s.dot == 0.0 ? 0.0 : 2.0 * s.dot / (s.q_sq + s.t_sq);
        case similarity_measure::jaccard:
            return s.dot == 0.0 ? 0.0 : s.dot / (s.q_sq + s.t_sq - s.dot);
        case similarity_measure::smdr: {
            if (s.hits == 0) return 0.0;
            const double qhc = static_cast<double>(s.hits);
            const double denominator =
                std::sqrt(s.tc_sq) / qhc + std::sqrt(s.q_sq) * std::sqrt(s.t_sq);
            return denominator > 0.0 ? qhc * s.smdr_num / denominator : 0.0;
        }
    }
    return 0.0;
}

struct ranked_hit {
    int doc_id = 0;
    double score = 0.0;

    bool operator==(const ranked_hit&) const = default;
};

/// descending score, ties broken by ascending doc id
inline bool rank_order(const ranked_hit& a, const ranked_hit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
}

inline void sort_ranking(std::vector<ranked_hit>& hits) {
    std::sort(hits.begin(), hits.end(), rank_order);
}

/// Exhaustive ranking: scores every document and returns the top k in the
/// deterministic rank order. Scoring fans out over `threads`; the result
/// does not depend on the thread count.
inline std::vector<ranked_hit> rank_all(similarity_measure measure, const weighted_query& q,
                                        const inverted_index& idx, std::size_t k,
                                        unsigned threads = 1) {
    if (k < 1) throw contract_error("rank_all: cutoff k must be >= 1");
    const std::size_t n = idx.num_docs();
    std::vector<ranked_hit> hits(n);
    const auto score_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const int doc_id = static_cast<int>(i) + 1;
            hits[i] = {doc_id, score(measure, q, doc_id, idx)};
        }
    };
    if (threads <= 1 || n < 2 * threads) {
        score_range(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min(n, static_cast<std::size_t>(t) * chunk);
            const std::size_t end = std::min(n, begin + chunk);
            if (begin < end) pool.emplace_back(score_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    sort_ranking(hits);
    if (hits.size() > k) hits.resize(k);
    return hits;
}

} // namespace swirl

#endif // SWIRL_SIMILARITY_HPP
