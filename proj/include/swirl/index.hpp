#ifndef SWIRL_INDEX_HPP
#define SWIRL_INDEX_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swirl/errors.hpp"
#include "swirl/textprep.hpp"

namespace swirl {

enum class weighting_scheme { tf, tfidf };

inline std::string_view to_string(weighting_scheme s) {
    return s == weighting_scheme::tf ? "tf" : "tfidf";
}

inline std::optional<weighting_scheme> weighting_scheme_from_string(std::string_view s) {
    if (s == "tf") return weighting_scheme::tf;
    if (s == "tfidf") return weighting_scheme::tfidf;
    return std::nullopt;
}

struct posting {
    int doc_id = 0;
    int count = 0;

    bool operator==(const posting&) const = default;
};

/// Sparse per-document vector: parallel arrays sorted by term id, raw
/// counts and weights over the same support.
struct doc_vector {
    std::vector<int> terms;
    std::vector<int> counts;
    std::vector<double> weights;

    std::size_t size() const { return terms.size(); }
    bool empty() const { return terms.empty(); }
};

/// Immutable vector-space model over a document collection: vocabulary,
/// postings, document frequencies and per-document weight vectors. Safe to
/// share across threads once built.
class inverted_index {
public:
    /// docs[i] is the bag of document id i+1
    static inverted_index build(const std::vector<term_bag>& docs, weighting_scheme scheme) {
        if (docs.empty()) throw empty_collection_error("cannot index an empty corpus");
        inverted_index idx;
        idx.scheme_ = scheme;
        idx.num_docs_ = docs.size();

        for (const auto& bag : docs)
            for (const auto& [term, count] : bag.counts) idx.vocabulary_.try_emplace(term, 0);
        int next_id = 0;
        for (auto& [term, id] : idx.vocabulary_) id = next_id++;

        idx.terms_.resize(idx.vocabulary_.size());
        for (const auto& [term, id] : idx.vocabulary_) idx.terms_[id] = term;

        idx.postings_.resize(idx.vocabulary_.size());
        for (std::size_t i = 0; i < docs.size(); ++i) {
            const int doc_id = static_cast<int>(i) + 1;
            for (const auto& [term, count] : docs[i].counts)
                idx.postings_[idx.vocabulary_.at(term)].push_back({doc_id, count});
        }

        idx.finish_build(docs);
        return idx;
    }

    /// rebuilds from snapshot data; postings must be sorted by doc id
    static inverted_index from_postings(std::vector<std::string> terms,
                                        std::vector<std::vector<posting>> postings,
                                        std::size_t num_docs, weighting_scheme scheme) {
        if (num_docs == 0) throw empty_collection_error("cannot index an empty corpus");
        if (terms.size() != postings.size())
            throw contract_error("vocabulary/postings size mismatch");
        inverted_index idx;
        idx.scheme_ = scheme;
        idx.num_docs_ = num_docs;
        idx.terms_ = std::move(terms);
        idx.postings_ = std::move(postings);
        for (std::size_t id = 0; id < idx.terms_.size(); ++id)
            idx.vocabulary_.emplace(idx.terms_[id], static_cast<int>(id));

        std::vector<term_bag> docs(num_docs);
        for (std::size_t id = 0; id < idx.postings_.size(); ++id)
            for (const posting& p : idx.postings_[id]) {
                if (p.doc_id < 1 || static_cast<std::size_t>(p.doc_id) > num_docs || p.count < 1)
                    throw contract_error("posting out of range");
                docs[p.doc_id - 1].counts[idx.terms_[id]] = p.count;
            }
        idx.finish_build(docs);
        return idx;
    }

    std::size_t num_docs() const { return num_docs_; }
    std::size_t vocab_size() const { return terms_.size(); }
    weighting_scheme scheme() const { return scheme_; }
    const std::map<std::string, int>& vocabulary() const { return vocabulary_; }
    const std::string& term(int term_id) const { return terms_.at(term_id); }

    std::optional<int> term_id(std::string_view term) const {
        const auto it = vocabulary_.find(std::string(term));
        if (it == vocabulary_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<posting>& postings(int term_id) const { return postings_.at(term_id); }

    int doc_freq(int term_id) const { return static_cast<int>(postings_.at(term_id).size()); }

    /// ln(N / df); 0 for terms present in every document
    double idf(int term_id) const {
        return std::log(static_cast<double>(num_docs_) / static_cast<double>(doc_freq(term_id)));
    }

    const doc_vector& vector_of(int doc_id) const {
        check_doc_id(doc_id);
        return doc_vectors_[static_cast<std::size_t>(doc_id) - 1];
    }

    /// number of distinct terms in the document
    int max_terms(int doc_id) const { return static_cast<int>(vector_of(doc_id).size()); }

    void check_doc_id(int doc_id) const {
        if (doc_id < 1 || static_cast<std::size_t>(doc_id) > num_docs_)
            throw std::out_of_range("doc_id " + std::to_string(doc_id) + " outside 1.." +
                                    std::to_string(num_docs_));
    }

private:
    void finish_build(const std::vector<term_bag>& docs) {
        doc_vectors_.resize(docs.size());
        for (std::size_t i = 0; i < docs.size(); ++i) {
            doc_vector& v = doc_vectors_[i];
            v.terms.reserve(docs[i].counts.size());
            // bags iterate terms lexicographically, matching term id order
            for (const auto& [term, count] : docs[i].counts) {
                const int id = vocabulary_.at(term);
                v.terms.push_back(id);
                v.counts.push_back(count);
                v.weights.push_back(weight(count, id));
            }
        }
    }

    double weight(int count, int term_id) const {
        if (scheme_ == weighting_scheme::tf) return static_cast<double>(count);
        return static_cast<double>(count) * idf(term_id);
    }

    weighting_scheme scheme_ = weighting_scheme::tfidf;
    std::size_t num_docs_ = 0;
    std::map<std::string, int> vocabulary_;            // term -> dense id
    std::vector<std::string> terms_;                   // id -> term
    std::vector<std::vector<posting>> postings_;       // id -> (doc, count), doc ascending
    std::vector<doc_vector> doc_vectors_;
};

/// Query as a sparse weight vector over the index vocabulary. Terms absent
/// from the vocabulary are dropped and counted in oov_terms.
struct weighted_query {
    int query_id = 0;
    std::vector<int> terms;       // ascending term ids
    std::vector<double> weights;  // q_i, same scheme as the documents
    int term_count = 0;           // h: surviving distinct terms
    int oov_terms = 0;            // distinct terms dropped

    bool empty() const { return terms.empty(); }
    bool fully_oov() const { return terms.empty() && oov_terms > 0; }
};

inline weighted_query weight_query(const term_bag& bag, const inverted_index& idx,
                                   int query_id = 0) {
    weighted_query q;
    q.query_id = query_id;
    for (const auto& [term, count] : bag.counts) {
        const auto id = idx.term_id(term);
        if (!id) {
            ++q.oov_terms;
            continue;
        }
        q.terms.push_back(*id);
        q.weights.push_back(idx.scheme() == weighting_scheme::tf
                                ? static_cast<double>(count)
                                : static_cast<double>(count) * idx.idf(*id));
    }
    q.term_count = static_cast<int>(q.terms.size());
    return q;
}

} // namespace swirl

#endif // SWIRL_INDEX_HPP
