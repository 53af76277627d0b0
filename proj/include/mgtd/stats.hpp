#pragma once

#include <cstddef>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgtd/corpus.hpp"
#include "mgtd/tokenize.hpp"

namespace mgtd {

// Corpus-level statistics: mean sentences per document, mean words per
// document, and the fraction of documents longer than 512 words. Means are
// absent (not zero) for an empty corpus.
struct StatsRow {
    std::size_t n_docs = 0;
    std::optional<double> avg_sentences;
    std::optional<double> avg_words;
    std::optional<double> frac_over_512;
};

inline constexpr std::size_t kLongDocWordThreshold = 512;

inline StatsRow corpus_stats(const std::vector<Document>& docs,
                             const SentenceSplitter& splitter = SentenceSplitter()) {
    StatsRow row;
    row.n_docs = docs.size();
    if (docs.empty()) return row;
    double sent_sum = 0.0;
    double word_sum = 0.0;
    std::size_t over = 0;
    for (const auto& doc : docs) {
        sent_sum += static_cast<double>(splitter.count(doc.text));
        const std::size_t words = word_count(doc.text);
        word_sum += static_cast<double>(words);
        if (words > kLongDocWordThreshold) ++over;
    }
    const double n = static_cast<double>(docs.size());
    row.avg_sentences = sent_sum / n;
    row.avg_words = word_sum / n;
    row.frac_over_512 = static_cast<double>(over) / n;
    return row;
}

inline nlohmann::json stats_to_json(const StatsRow& row) {
    nlohmann::json out;
    out["n_docs"] = row.n_docs;
    out["avg_sentences"] = row.avg_sentences ? nlohmann::json(*row.avg_sentences)
                                             : nlohmann::json(nullptr);
    out["avg_words"] = row.avg_words ? nlohmann::json(*row.avg_words) : nlohmann::json(nullptr);
    out["frac_over_512"] =
        row.frac_over_512 ? nlohmann::json(*row.frac_over_512) : nlohmann::json(nullptr);
    return out;
}

// Aligned text table, one row per labeled corpus.
inline std::string format_stats_table(
    const std::vector<std::pair<std::string, StatsRow>>& rows) {
    auto cell = [](const std::optional<double>& v, bool percent) {
        if (!v) return std::string("-");
        std::ostringstream os;
        os << std::fixed << std::setprecision(percent ? 1 : 2);
        if (percent) {
            os << (*v * 100.0) << "%";
        } else {
            os << *v;
        }
        return os.str();
    };
    std::size_t name_width = 7;
    for (const auto& [name, row] : rows) name_width = std::max(name_width, name.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(name_width) + 2) << "corpus" << std::right
       << std::setw(10) << "docs" << std::setw(12) << "avg-sent" << std::setw(12) << "avg-words"
       << std::setw(12) << ">512w" << "\n";
    for (const auto& [name, row] : rows) {
        os << std::left << std::setw(static_cast<int>(name_width) + 2) << name << std::right
           << std::setw(10) << row.n_docs << std::setw(12) << cell(row.avg_sentences, false)
           << std::setw(12) << cell(row.avg_words, false) << std::setw(12)
           << cell(row.frac_over_512, true) << "\n";
    }
    return os.str();
}

}  // namespace mgtd
