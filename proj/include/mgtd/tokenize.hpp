#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mgtd {

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Whitespace-delimited tokens, punctuation left attached.
inline std::vector<std::string> word_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_ascii_space(text[i])) ++i;
        if (i > start) out.emplace_back(text.substr(start, i - start));
    }
    return out;
}

inline std::size_t word_count(std::string_view text) {
    std::size_t n = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        if (i < text.size()) ++n;
        while (i < text.size() && !is_ascii_space(text[i])) ++i;
    }
    return n;
}

// One sentence plus the exact whitespace that followed it, so the original
// text is the concatenation of text+separator over all pieces.
struct SentencePiece {
    std::string text;
    std::string separator;
};

// Rule-based splitter: a sentence ends at a run of {. ! ?} followed by
// whitespace, unless the word before the period is a known abbreviation.
// A trailing fragment without terminal punctuation counts as a sentence.
class SentenceSplitter {
public:
    SentenceSplitter()
        : abbreviations_{"mr",  "mrs", "ms",  "dr",   "prof", "st",  "jr",  "sr",
                         "vs",  "etc", "e.g", "i.e",  "fig",  "no",  "inc", "ltd",
                         "co",  "dept", "est", "approx", "al", "cf"} {}

    explicit SentenceSplitter(std::set<std::string> abbreviations)
        : abbreviations_(std::move(abbreviations)) {}

    std::vector<SentencePiece> split_keep_separators(std::string_view text) const {
        std::vector<SentencePiece> pieces;
        std::size_t start = 0;
        std::size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (c == '.' || c == '!' || c == '?') {
                std::size_t punct_end = i;
                while (punct_end + 1 < text.size() &&
                       (text[punct_end + 1] == '.' || text[punct_end + 1] == '!' ||
                        text[punct_end + 1] == '?')) {
                    ++punct_end;
                }
                std::size_t after = punct_end + 1;
                bool boundary = (after >= text.size()) || is_ascii_space(text[after]);
                if (boundary && c == '.' && punct_end == i && is_abbreviation(text, i)) {
                    boundary = false;
                }
                if (boundary) {
                    std::size_t sep_end = after;
                    while (sep_end < text.size() && is_ascii_space(text[sep_end])) ++sep_end;
                    pieces.push_back({std::string(text.substr(start, after - start)),
                                      std::string(text.substr(after, sep_end - after))});
                    start = sep_end;
                    i = sep_end;
                    continue;
                }
                i = after;
                continue;
            }
            ++i;
        }
        if (start < text.size()) {
            pieces.push_back({std::string(text.substr(start)), ""});
        }
        return pieces;
    }

    std::vector<std::string> split(std::string_view text) const {
        std::vector<std::string> out;
        for (auto& p : split_keep_separators(text)) {
            if (!is_blank(p.text)) out.push_back(std::move(p.text));
        }
        return out;
    }

    std::size_t count(std::string_view text) const {
        std::size_t n = 0;
        for (const auto& p : split_keep_separators(text)) {
            if (!is_blank(p.text)) ++n;
        }
        return n;
    }

private:
    static bool is_blank(std::string_view s) {
        return std::all_of(s.begin(), s.end(), is_ascii_space);
    }

    // Word immediately before the period at `dot`, lowercased, checked against
    // the exception list ("Dr. Smith" must not split).
    bool is_abbreviation(std::string_view text, std::size_t dot) const {
        std::size_t end = dot;
        std::size_t begin = end;
        while (begin > 0 && !is_ascii_space(text[begin - 1])) --begin;
        if (begin == end) return false;
        std::string word(text.substr(begin, end - begin));
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        return abbreviations_.count(word) > 0;
    }

    std::set<std::string> abbreviations_;
};

inline std::size_t sentence_count(std::string_view text) {
    static const SentenceSplitter splitter;
    return splitter.count(text);
}

}  // namespace mgtd
