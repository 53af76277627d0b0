#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mgtd/corpus.hpp"
#include "mgtd/detail/utf8.hpp"
#include "mgtd/tokenize.hpp"

namespace mgtd {

enum class CleaningMode { English, Multilingual };

inline std::string cleaning_mode_name(CleaningMode m) {
    return m == CleaningMode::English ? "english" : "multilingual";
}

inline CleaningMode cleaning_mode_from_name(std::string_view name) {
    if (name == "english") return CleaningMode::English;
    if (name == "multilingual") return CleaningMode::Multilingual;
    throw ValidationError("unknown cleaning mode: " + std::string(name));
}

// Per-rule firing counters plus the number of documents cleaning emptied.
struct CleaningReport {
    std::map<std::string, std::size_t> counters;
    std::size_t documents_emptied = 0;

    std::size_t total_firings() const {
        std::size_t n = 0;
        for (const auto& [rule, count] : counters) n += count;
        return n;
    }

    void merge(const CleaningReport& other) {
        for (const auto& [rule, count] : other.counters) counters[rule] += count;
        documents_emptied += other.documents_emptied;
    }

    std::size_t count(const std::string& rule) const {
        auto it = counters.find(rule);
        return it == counters.end() ? 0 : it->second;
    }
};

// Lines containing any of these (case-insensitive substring match) are
// treated as boilerplate: sharing prompts, surveys, comment widgets, ads,
// terms-of-use and copyright notices.
inline std::vector<std::string> default_boilerplate_patterns() {
    return {
        "share this",      "share on",        "subscribe to",   "subscribe now",
        "sign up for our", "click here",      "follow us",      "take our survey",
        "complete this survey", "leave a comment", "comments are closed",
        "post a comment",  "advertisement",   "sponsored content",
        "terms of use",    "terms of service", "privacy policy",
        "all rights reserved", "copyright ©", "(c) copyright", "© copyright",
    };
}

inline std::vector<std::string> load_boilerplate_patterns(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open pattern file: " + path.string());
    std::vector<std::string> patterns;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty() && line[0] != '#') patterns.push_back(line);
    }
    return patterns;
}

struct CleaningConfig {
    CleaningMode mode = CleaningMode::English;
    std::vector<std::string> boilerplate_patterns = default_boilerplate_patterns();
    SentenceSplitter splitter;
};

namespace detail {

inline std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Non-ASCII letters for the multilingual preservation guarantee: code points
// at or above U+00A0 (C1 controls are handled by the control-character rule).
inline std::size_t count_non_ascii_letters(std::string_view text) {
    Utf8Decoder dec{text};
    std::size_t n = 0;
    while (!dec.done()) {
        if (dec.next() >= 0xA0) ++n;
    }
    return n;
}

inline bool line_has_non_ascii(std::string_view line) {
    return count_non_ascii_letters(line) > 0;
}

inline bool is_url_start(std::string_view text, std::size_t i) {
    static const std::string_view schemes[] = {"http://", "https://", "ftp://", "www."};
    const bool at_token_start =
        i == 0 || is_ascii_space(text[i - 1]) ||
        (!std::isalnum(static_cast<unsigned char>(text[i - 1])) && text[i - 1] != '.');
    if (!at_token_start) return false;
    for (auto scheme : schemes) {
        if (text.size() - i >= scheme.size()) {
            bool match = true;
            for (std::size_t k = 0; k < scheme.size(); ++k) {
                if (std::tolower(static_cast<unsigned char>(text[i + k])) != scheme[k]) {
                    match = false;
                    break;
                }
            }
            if (match) return true;
        }
    }
    return false;
}

inline std::string remove_hyperlinks(std::string_view text, CleaningMode mode,
                                     std::size_t& fired) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_url_start(text, i)) {
            std::size_t j = i;
            while (j < text.size() && !is_ascii_space(text[j])) {
                // Multilingual mode must not swallow non-ASCII content, so the
                // deleted span ends at the first multi-byte code point.
                if (mode == CleaningMode::Multilingual &&
                    static_cast<unsigned char>(text[j]) >= 0x80) {
                    break;
                }
                ++j;
            }
            ++fired;
            i = j;
            continue;
        }
        out.push_back(text[i]);
        ++i;
    }
    return out;
}

inline std::string remove_boilerplate_lines(std::string_view text,
                                            const std::vector<std::string>& patterns,
                                            CleaningMode mode, std::size_t& fired) {
    if (patterns.empty()) return std::string(text);
    std::string out;
    out.reserve(text.size());
    std::size_t start = 0;
    bool first = true;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line =
            text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        const std::string lowered = ascii_lower(line);
        bool drop = false;
        for (const auto& pat : patterns) {
            if (lowered.find(ascii_lower(pat)) != std::string::npos) {
                drop = true;
                break;
            }
        }
        if (drop && mode == CleaningMode::Multilingual && line_has_non_ascii(line)) {
            drop = false;
        }
        if (drop) {
            ++fired;
        } else {
            if (!first) out.push_back('\n');
            out.append(line);
            first = false;
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

inline bool is_hex_digit(char c) {
    return std::isxdigit(static_cast<unsigned char>(c)) != 0;
}

// Literal escape sequences typed into the text ("\n", "é", ...), not the
// characters they denote. English mode only; each is replaced by a space.
inline std::string remove_escape_sequences(std::string_view text, std::size_t& fired) {
    static const std::string_view simple = "ntr0abfv'\"\\";
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '\\' && i + 1 < text.size()) {
            const char next = text[i + 1];
            if (simple.find(next) != std::string_view::npos) {
                out.push_back(' ');
                ++fired;
                i += 2;
                continue;
            }
            if (next == 'u' && i + 5 < text.size() && is_hex_digit(text[i + 2]) &&
                is_hex_digit(text[i + 3]) && is_hex_digit(text[i + 4]) &&
                is_hex_digit(text[i + 5])) {
                out.push_back(' ');
                ++fired;
                i += 6;
                continue;
            }
            if (next == 'x' && i + 3 < text.size() && is_hex_digit(text[i + 2]) &&
                is_hex_digit(text[i + 3])) {
                out.push_back(' ');
                ++fired;
                i += 4;
                continue;
            }
        }
        out.push_back(text[i]);
        ++i;
    }
    return out;
}

// A token is "numerically formatted" when it consists solely of digits and
// numeric punctuation and has at least one digit: "3.14", "1,000", "50%",
// "2024/01/01". Digits inside word tokens ("COVID19") are kept.
inline bool is_numeric_token(std::string_view token) {
    static const std::string_view numeric_punct = "+-.,:/%$#()";
    bool has_digit = false;
    for (char c : token) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            has_digit = true;
        } else if (numeric_punct.find(c) == std::string_view::npos) {
            return false;
        }
    }
    return has_digit;
}

inline std::string remove_numeric_tokens(std::string_view text, std::size_t& fired) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_ascii_space(text[i])) {
            out.push_back(text[i]);
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !is_ascii_space(text[j])) ++j;
        std::string_view token = text.substr(i, j - i);
        if (is_numeric_token(token)) {
            ++fired;
        } else {
            out.append(token);
        }
        i = j;
    }
    return out;
}

inline bool english_allowed(char32_t cp) {
    if (cp == U'\n' || cp == U'\t' || cp == U'\r') return true;
    if (cp > 0x7E) return false;
    if (cp < 0x20) return false;
    return true;  // printable ASCII: letters, digits, punctuation, space
}

inline std::string remove_special_characters(std::string_view text, CleaningMode mode,
                                             std::size_t& fired) {
    std::string out;
    out.reserve(text.size());
    Utf8Decoder dec{text};
    while (!dec.done()) {
        const char32_t cp = dec.next();
        const bool keep = (mode == CleaningMode::English) ? english_allowed(cp)
                                                          : !is_c0_or_c1_control(cp);
        if (keep) {
            append_utf8(out, cp);
        } else {
            ++fired;
        }
    }
    return out;
}

// Runs of horizontal whitespace become one space, runs containing a line
// break become one newline, and the ends are trimmed.
inline std::string collapse_whitespace(std::string_view text, std::size_t& fired) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_ascii_space(text[i])) {
            out.push_back(text[i]);
            ++i;
            continue;
        }
        std::size_t j = i;
        bool has_newline = false;
        while (j < text.size() && is_ascii_space(text[j])) {
            if (text[j] == '\n' || text[j] == '\r') has_newline = true;
            ++j;
        }
        std::string_view run = text.substr(i, j - i);
        const bool at_edge = (i == 0) || (j == text.size());
        std::string_view replacement = at_edge ? "" : (has_newline ? "\n" : " ");
        if (run != replacement) ++fired;
        out.append(replacement);
        i = j;
    }
    return out;
}

inline std::string sentence_key(std::string_view sentence) {
    std::string key;
    key.reserve(sentence.size());
    bool in_space = false;
    for (char c : sentence) {
        if (is_ascii_space(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !key.empty()) key.push_back(' ');
        in_space = false;
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return key;
}

inline std::string dedup_sentences(std::string_view text, const SentenceSplitter& splitter,
                                   std::size_t& fired) {
    auto pieces = splitter.split_keep_separators(text);
    std::set<std::string> seen;
    std::string out;
    out.reserve(text.size());
    for (const auto& piece : pieces) {
        const std::string key = sentence_key(piece.text);
        if (!key.empty() && !seen.insert(key).second) {
            ++fired;
            continue;
        }
        out.append(piece.text);
        out.append(piece.separator);
    }
    // Dropping a trailing duplicate can leave the previous separator dangling.
    while (!out.empty() && is_ascii_space(out.back())) out.pop_back();
    return out;
}

}  // namespace detail

// One pass of the fixed rule order. Exposed for the report-summation oracle;
// clean_document iterates it to a fixpoint.
inline std::string cleaning_pass(std::string_view text, const CleaningConfig& config,
                                 CleaningReport& report) {
    std::size_t fired = 0;
    std::string cur = detail::remove_hyperlinks(text, config.mode, fired);
    report.counters["hyperlinks"] += fired;

    fired = 0;
    cur = detail::remove_boilerplate_lines(cur, config.boilerplate_patterns, config.mode, fired);
    report.counters["boilerplate_lines"] += fired;

    if (config.mode == CleaningMode::English) {
        fired = 0;
        cur = detail::remove_escape_sequences(cur, fired);
        report.counters["escape_sequences"] += fired;
    }

    fired = 0;
    cur = detail::remove_numeric_tokens(cur, fired);
    report.counters["numeric_tokens"] += fired;

    fired = 0;
    cur = detail::remove_special_characters(cur, config.mode, fired);
    report.counters["special_characters"] += fired;

    fired = 0;
    cur = detail::collapse_whitespace(cur, fired);
    report.counters["whitespace"] += fired;

    fired = 0;
    cur = detail::dedup_sentences(cur, config.splitter, fired);
    report.counters["duplicate_sentences"] += fired;
    return cur;
}

// Applies the rule pipeline until the text stops changing, so cleaning is
// idempotent by construction. Never fails; a fully-emptied document is
// returned with empty text and counted in the report.
inline std::pair<Document, CleaningReport> clean_document(const Document& doc,
                                                          const CleaningConfig& config) {
    CleaningReport report;
    std::string cur = doc.text;
    for (int iter = 0; iter < 8; ++iter) {
        std::string next = cleaning_pass(cur, config, report);
        const bool stable = next == cur;
        cur = std::move(next);
        if (stable) break;
    }
    Document out = doc;
    if (cur != doc.text) {
        out.text = cur;
        out.provenance.push_back("cleaned");
    }
    if (out.text.empty()) report.documents_emptied += 1;
    return {std::move(out), std::move(report)};
}

inline std::pair<Document, CleaningReport> clean_document(const Document& doc,
                                                          CleaningMode mode) {
    CleaningConfig config;
    config.mode = mode;
    return clean_document(doc, config);
}

// Element-wise cleaning; emptied documents are dropped, survivors keep their
// relative order, and the per-document reports are summed.
inline std::pair<std::vector<Document>, CleaningReport> clean_corpus(
    const std::vector<Document>& docs, const CleaningConfig& config) {
    std::vector<Document> out;
    out.reserve(docs.size());
    CleaningReport report;
    for (const auto& doc : docs) {
        auto [cleaned, doc_report] = clean_document(doc, config);
        report.merge(doc_report);
        if (!cleaned.text.empty()) out.push_back(std::move(cleaned));
    }
    return {std::move(out), std::move(report)};
}

inline std::pair<std::vector<Document>, CleaningReport> clean_corpus(
    const std::vector<Document>& docs, CleaningMode mode) {
    CleaningConfig config;
    config.mode = mode;
    return clean_corpus(docs, config);
}

}  // namespace mgtd
