#ifndef SWIRL_CORPUS_HPP
#define SWIRL_CORPUS_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "swirl/errors.hpp"

namespace swirl {

/// One parsed collection record. doc_id is the dense 1..N identifier the
/// engines work with; source_id is the identifier found in the input.
struct raw_document {
    int doc_id = 0;
    int source_id = 0;
    std::string title;
    std::string author;
    std::string body;

    /// text the index sees: title plus body; authors are names, not topics
    std::string indexed_text() const {
        if (title.empty()) return body;
        if (body.empty()) return title;
        return title + "\n" + body;
    }

    std::size_t byte_size() const { return title.size() + author.size() + body.size(); }

    bool operator==(const raw_document&) const = default;
};

struct raw_query {
    int query_id = 0;
    std::string text;
};

/// query id -> set of relevant doc ids
using relevance_judgments = std::map<int, std::set<int>>;

struct collection_stats {
    std::size_t num_documents = 0;
    std::size_t num_terms = 0;           // post-preprocessing vocabulary size
    std::size_t avg_doc_size_bytes = 0;  // nearest byte
};

enum class collection_format { smart, directory };

namespace detail {

inline std::string trim_copy(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// SMART marker files: records open with ".I <id>"; ".T", ".A", ".W" carry
// title / author / body on the following lines; any other ".X"-style
// marker is skipped up to the next marker.
struct smart_record {
    int id = 0;
    std::string title, author, body;
};

template <typename OnRecord>
inline void scan_smart(std::istream& in, OnRecord&& on_record) {
    std::string line;
    std::size_t offset = 0;       // byte offset of the current line
    bool in_record = false;
    smart_record rec;
    char section = 0;             // 'T', 'A', 'W' or 0 = skipping
    std::string* field = nullptr;
    bool any_content = false;

    const auto begin_section = [&](char s, std::string* f) {
        section = s;
        field = f;
    };

    while (std::getline(in, line)) {
        const std::size_t line_offset = offset;
        offset += line.size() + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (line.size() >= 2 && line[0] == '.' && line[1] >= 'A' && line[1] <= 'Z') {
            any_content = true;
            const char marker = line[1];
            if (marker == 'I') {
                if (in_record) on_record(rec);
                rec = smart_record{};
                in_record = true;
                begin_section(0, nullptr);
                try {
                    std::size_t pos = 0;
                    const std::string rest = trim_copy(std::string_view(line).substr(2));
                    rec.id = std::stoi(rest, &pos);
                    if (pos != rest.size() || rec.id <= 0) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw parse_error("malformed .I record marker at byte offset " +
                                      std::to_string(line_offset) + ": '" + line + "'");
                }
                continue;
            }
            if (!in_record)
                throw parse_error("field marker before any .I record at byte offset " +
                                  std::to_string(line_offset) + ": '" + line + "'");
            switch (marker) {
                case 'T': begin_section('T', &rec.title); break;
                case 'A': begin_section('A', &rec.author); break;
                case 'W': begin_section('W', &rec.body); break;
                default: begin_section(0, nullptr); break; // .B, .X, .N, ... skipped
            }
            continue;
        }

        if (!in_record) {
            if (trim_copy(line).empty()) continue;
            throw parse_error("content before first .I record at byte offset " +
                              std::to_string(line_offset) + ": '" + line + "'");
        }
        any_content = true;
        if (field != nullptr) {
            if (!field->empty()) field->push_back('\n');
            field->append(line);
        }
    }
    if (in_record) on_record(rec);
    if (!any_content) throw empty_collection_error("empty collection stream");
}

} // namespace detail

/// Parses a SMART marker stream into documents in id order, renumbered
/// densely 1..N; the source ids survive in raw_document::source_id.
inline std::vector<raw_document> parse_smart_collection(std::istream& in) {
    std::vector<raw_document> docs;
    std::set<int> seen;
    detail::scan_smart(in, [&](const detail::smart_record& rec) {
        if (!seen.insert(rec.id).second)
            throw parse_error("duplicate record id " + std::to_string(rec.id));
        raw_document d;
        d.source_id = rec.id;
        d.title = detail::trim_copy(rec.title);
        d.author = detail::trim_copy(rec.author);
        d.body = detail::trim_copy(rec.body);
        docs.push_back(std::move(d));
    });
    if (docs.empty()) throw empty_collection_error("collection stream holds no records");
    std::sort(docs.begin(), docs.end(),
              [](const raw_document& a, const raw_document& b) { return a.source_id < b.source_id; });
    for (std::size_t i = 0; i < docs.size(); ++i) docs[i].doc_id = static_cast<int>(i) + 1;
    return docs;
}

/// Directory fallback: every regular file is one document (body = file
/// content, title = file name), ordered by file name.
inline std::vector<raw_document> parse_directory_collection(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw parse_error("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<raw_document> docs;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) throw parse_error("cannot read document file: " + f.string());
        std::ostringstream content;
        content << in.rdbuf();
        raw_document d;
        d.doc_id = d.source_id = static_cast<int>(docs.size()) + 1;
        d.title = f.filename().string();
        d.body = detail::trim_copy(content.str());
        docs.push_back(std::move(d));
    }
    if (docs.empty()) throw empty_collection_error("directory holds no document files: " + dir.string());
    return docs;
}

inline std::vector<raw_document> parse_collection(const std::filesystem::path& path,
                                                  collection_format format) {
    if (format == collection_format::directory) return parse_directory_collection(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open collection file: " + path.string());
    return parse_smart_collection(in);
}

/// Queries in the same SMART marker format (.I id, .W text).
inline std::vector<raw_query> parse_smart_queries(std::istream& in) {
    std::vector<raw_query> queries;
    std::set<int> seen;
    detail::scan_smart(in, [&](const detail::smart_record& rec) {
        if (!seen.insert(rec.id).second)
            throw parse_error("duplicate query id " + std::to_string(rec.id));
        raw_query q;
        q.query_id = rec.id; // query ids join against qrels, never renumbered
        const std::string title = detail::trim_copy(rec.title);
        const std::string body = detail::trim_copy(rec.body);
        q.text = body.empty() ? title : (title.empty() ? body : title + "\n" + body);
        queries.push_back(std::move(q));
    });
    std::sort(queries.begin(), queries.end(),
              [](const raw_query& a, const raw_query& b) { return a.query_id < b.query_id; });
    return queries;
}

inline std::vector<raw_query> parse_queries_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open query file: " + path.string());
    return parse_smart_queries(in);
}

/// qrels lines: `query_id doc_id [ignored columns]`, whitespace separated.
/// Duplicate (query, doc) pairs collapse into one judgment.
inline relevance_judgments parse_qrels(std::istream& in) {
    relevance_judgments out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string qtok, dtok;
        if (!(fields >> qtok)) continue; // blank line
        if (!(fields >> dtok))
            throw parse_error("qrels line " + std::to_string(line_no) + ": missing doc id");
        const auto to_id = [&](const std::string& tok, const char* what) {
            try {
                std::size_t pos = 0;
                const int v = std::stoi(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument("");
                return v;
            } catch (const std::exception&) {
                throw parse_error("qrels line " + std::to_string(line_no) + ": non-integer " +
                                  what + " '" + tok + "'");
            }
        };
        out[to_id(qtok, "query id")].insert(to_id(dtok, "doc id"));
    }
    return out;
}

inline relevance_judgments parse_qrels_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open qrels file: " + path.string());
    return parse_qrels(in);
}

/// Re-keys judgments from source ids to dense ids and enforces closure:
/// every judged document must exist in the parsed collection.
inline relevance_judgments remap_qrels(const relevance_judgments& judgments,
                                       const std::map<int, int>& dense) {
    relevance_judgments out;
    for (const auto& [query_id, rel] : judgments) {
        for (const int source_id : rel) {
            const auto it = dense.find(source_id);
            if (it == dense.end())
                throw parse_error("qrels reference unknown document id " +
                                  std::to_string(source_id) + " (query " +
                                  std::to_string(query_id) + ")");
            out[query_id].insert(it->second);
        }
    }
    return out;
}

inline relevance_judgments remap_qrels(const relevance_judgments& judgments,
                                       const std::vector<raw_document>& docs) {
    std::map<int, int> dense;
    for (const auto& d : docs) dense.emplace(d.source_id, d.doc_id);
    return remap_qrels(judgments, dense);
}

inline collection_stats make_collection_stats(const std::vector<raw_document>& docs,
                                              std::size_t vocab_size) {
    if (docs.empty()) throw empty_collection_error("no documents to summarize");
    std::size_t total = 0;
    for (const auto& d : docs) total += d.byte_size();
    collection_stats stats;
    stats.num_documents = docs.size();
    stats.num_terms = vocab_size;
    stats.avg_doc_size_bytes = static_cast<std::size_t>(
        std::llround(static_cast<double>(total) / static_cast<double>(docs.size())));
    return stats;
}

/// Serializes documents back to SMART markers; parse(to_smart(parse(x)))
/// reproduces the records.
inline std::string to_smart(const std::vector<raw_document>& docs) {
    std::string out;
    for (const auto& d : docs) {
        out += ".I " + std::to_string(d.doc_id) + "\n";
        if (!d.title.empty()) out += ".T\n" + d.title + "\n";
        if (!d.author.empty()) out += ".A\n" + d.author + "\n";
        if (!d.body.empty()) out += ".W\n" + d.body + "\n";
    }
    return out;
}

} // namespace swirl

#endif // SWIRL_CORPUS_HPP
