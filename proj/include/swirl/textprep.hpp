#ifndef SWIRL_TEXTPREP_HPP
#define SWIRL_TEXTPREP_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "swirl/errors.hpp"
#include "swirl/porter.hpp"
#include "swirl/stoplist.hpp"

namespace swirl {

/// Bag of index terms with raw occurrence counts.
struct term_bag {
    std::map<std::string, int> counts;
    int total_terms = 0;

    bool empty() const { return counts.empty(); }
    std::size_t distinct_terms() const { return counts.size(); }
};

struct preprocess_config {
    std::set<std::string> stop_list = smart_stop_words();
    bool use_stemmer = true;    // porter fixpoint; false = none
    bool strip_numbers = true;  // drop digit-only tokens
    bool split_hyphens = true;  // "information-retrieval" -> two tokens

    /// stable hash of everything that changes index terms; stored in
    /// snapshots so a mismatched query pipeline is rejected at load
    std::uint64_t fingerprint() const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        auto mix = [&h](std::string_view s) {
            for (const unsigned char c : s) {
                h ^= c;
                h *= 0x100000001b3ull;
            }
            h ^= 0x1f;
            h *= 0x100000001b3ull;
        };
        mix(use_stemmer ? "stem:porter" : "stem:none");
        mix(strip_numbers ? "numbers:strip" : "numbers:keep");
        mix(split_hyphens ? "hyphens:split" : "hyphens:keep");
        for (const auto& w : stop_list) mix(w);
        return h;
    }
};

namespace detail {

inline bool ascii_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline bool all_digits(std::string_view tok) {
    return std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; });
}

} // namespace detail

/// Lexical analysis: lowercased word tokens, punctuation discarded,
/// hyphenated words split (configurable), digit-only tokens dropped when
/// strip_numbers is set. Angle-bracketed markup runs are skipped.
inline std::vector<std::string> tokenize(std::string_view text, const preprocess_config& cfg) {
    std::vector<std::string> out;
    std::string cur;
    const auto flush = [&] {
        if (cur.empty()) return;
        if (!(cfg.strip_numbers && detail::all_digits(cur))) out.push_back(cur);
        cur.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '<') {
            // markup tag: skip a short <...> run; an unclosed '<' is a separator
            const std::size_t close = text.find('>', i + 1);
            if (close != std::string_view::npos && close - i <= 64) {
                flush();
                i = close;
                continue;
            }
            flush();
            continue;
        }
        if (detail::ascii_alnum(c)) {
            cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
            continue;
        }
        if (c == '-' && !cfg.split_hyphens && !cur.empty() && i + 1 < text.size() &&
            detail::ascii_alnum(static_cast<unsigned char>(text[i + 1]))) {
            cur.push_back('-');
            continue;
        }
        flush();
    }
    flush();
    return out;
}

/// Drops stop-listed tokens, preserving order.
inline std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                                 const preprocess_config& cfg) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& tok : tokens)
        if (!cfg.stop_list.contains(tok)) out.push_back(tok);
    return out;
}

/// Full pipeline: tokenize, stop-word elimination, stemming, counting.
/// Stemming can land on a stop word ("uses" -> "us"), so the stop filter
/// is applied to stems as well; the bag never intersects the stop list.
inline term_bag preprocess(std::string_view text, const preprocess_config& cfg) {
    term_bag bag;
    for (auto& tok : remove_stopwords(tokenize(text, cfg), cfg)) {
        std::string t = cfg.use_stemmer ? stem(std::move(tok)) : std::move(tok);
        if (cfg.stop_list.contains(t)) continue;
        ++bag.counts[std::move(t)];
        ++bag.total_terms;
    }
    return bag;
}

/// Stop list file: one word per line, '#' comments, blank lines ignored.
/// Entries are lowercased on load.
inline std::set<std::string> load_stop_list(std::istream& in) {
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        std::string word = line.substr(first, last - first + 1);
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char c) { return c >= 'A' && c <= 'Z' ? char(c - 'A' + 'a') : char(c); });
        out.insert(std::move(word));
    }
    return out;
}

inline std::set<std::string> load_stop_list_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open stop list file: " + path.string());
    return load_stop_list(in);
}

} // namespace swirl

#endif // SWIRL_TEXTPREP_HPP
