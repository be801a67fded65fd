#ifndef SWIRL_SNAPSHOT_HPP
#define SWIRL_SNAPSHOT_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swirl/corpus.hpp"
#include "swirl/errors.hpp"
#include "swirl/index.hpp"
#include "swirl/textprep.hpp"

namespace swirl {

inline constexpr int snapshot_version = 1;

/// per-document metadata kept alongside the index for display and stats
struct doc_meta {
    int doc_id = 0;
    int source_id = 0;
    std::string title;
    std::size_t bytes = 0;
};

struct loaded_snapshot {
    inverted_index index;
    std::vector<doc_meta> docs;
    std::uint64_t preprocess_fingerprint = 0;
};

namespace detail {

inline std::string fingerprint_hex(std::uint64_t fp) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
    return buf;
}

} // namespace detail

/// Writes the index and document metadata as a deterministic JSON
/// snapshot. The preprocessing fingerprint rides along so queries are
/// guaranteed to flow through the same pipeline the documents did.
inline void save_snapshot(std::ostream& out, const inverted_index& idx,
                          const std::vector<raw_document>& docs,
                          const preprocess_config& preproc) {
    nlohmann::json j;
    j["format"] = "swirl-index";
    j["version"] = snapshot_version;
    j["scheme"] = std::string(to_string(idx.scheme()));
    j["preprocess_fingerprint"] = detail::fingerprint_hex(preproc.fingerprint());
    j["num_docs"] = idx.num_docs();

    nlohmann::json jdocs = nlohmann::json::array();
    for (const auto& d : docs)
        jdocs.push_back({{"id", d.doc_id},
                         {"source_id", d.source_id},
                         {"title", d.title},
                         {"bytes", d.byte_size()}});
    j["docs"] = std::move(jdocs);

    nlohmann::json vocab = nlohmann::json::array();
    nlohmann::json postings = nlohmann::json::array();
    for (std::size_t id = 0; id < idx.vocab_size(); ++id) {
        vocab.push_back(idx.term(static_cast<int>(id)));
        nlohmann::json plist = nlohmann::json::array();
        for (const posting& p : idx.postings(static_cast<int>(id)))
            plist.push_back({p.doc_id, p.count});
        postings.push_back(std::move(plist));
    }
    j["vocabulary"] = std::move(vocab);
    j["postings"] = std::move(postings);
    out << j.dump() << '\n';
}

inline void save_snapshot_file(const std::filesystem::path& path, const inverted_index& idx,
                               const std::vector<raw_document>& docs,
                               const preprocess_config& preproc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write snapshot: " + path.string());
    save_snapshot(out, idx, docs, preproc);
}

/// Loads a snapshot and rejects it when the active preprocessing pipeline
/// differs from the one the snapshot was built with.
inline loaded_snapshot load_snapshot(std::istream& in, const preprocess_config& active) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("snapshot is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format") != "swirl-index")
            throw parse_error("not a swirl index snapshot");
        if (j.at("version").get<int>() != snapshot_version)
            throw config_error("unsupported snapshot version");
        const std::string fp = j.at("preprocess_fingerprint").get<std::string>();
        const std::string active_fp = detail::fingerprint_hex(active.fingerprint());
        if (fp != active_fp)
            throw config_error("snapshot preprocessing fingerprint " + fp +
                               " does not match the active configuration " + active_fp +
                               "; rebuild the index or align the flags");
        const auto scheme = weighting_scheme_from_string(j.at("scheme").get<std::string>());
        if (!scheme) throw parse_error("snapshot names an unknown weighting scheme");

        loaded_snapshot snap;
        snap.preprocess_fingerprint = active.fingerprint();
        const std::size_t num_docs = j.at("num_docs").get<std::size_t>();
        for (const auto& jd : j.at("docs")) {
            doc_meta d;
            d.doc_id = jd.at("id").get<int>();
            d.source_id = jd.at("source_id").get<int>();
            d.title = jd.at("title").get<std::string>();
            d.bytes = jd.at("bytes").get<std::size_t>();
            snap.docs.push_back(std::move(d));
        }
        std::vector<std::string> terms;
        for (const auto& t : j.at("vocabulary")) terms.push_back(t.get<std::string>());
        std::vector<std::vector<posting>> postings;
        for (const auto& plist : j.at("postings")) {
            std::vector<posting> entries;
            for (const auto& p : plist) entries.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
            postings.push_back(std::move(entries));
        }
        snap.index = inverted_index::from_postings(std::move(terms), std::move(postings),
                                                   num_docs, *scheme);
        return snap;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("snapshot is malformed: ") + e.what());
    }
}

inline loaded_snapshot load_snapshot_file(const std::filesystem::path& path,
                                          const preprocess_config& active) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open snapshot: " + path.string());
    return load_snapshot(in, active);
}

} // namespace swirl

#endif // SWIRL_SNAPSHOT_HPP
