#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mgtd/cleaning.hpp"
#include "mgtd/corpus.hpp"

namespace mgtd {

struct BuildVersionOptions {
    std::map<Track, CleaningMode> cleaning_modes = {
        {Track::Mono, CleaningMode::English},
        {Track::Multi, CleaningMode::Multilingual},
        {Track::SubB, CleaningMode::English},
    };
    std::vector<std::string> boilerplate_patterns = default_boilerplate_patterns();
};

namespace detail {

inline void validate_version(const CorpusVersion& cv) {
    for (const auto& [key, docs] : cv.splits) {
        std::unordered_set<std::string> ids;
        for (const auto& d : docs) {
            if (d.id.empty()) throw ValidationError("empty document id in " + track_name(key.track));
            if (!ids.insert(d.id).second) {
                throw ValidationError("duplicate id '" + d.id + "' in " + track_name(key.track) +
                                      "/" + key.split);
            }
        }
    }
    cv.check_train_dev_disjoint();
}

// Removes the monolingual dev entries from the multilingual train split,
// matching by id first and by normalized text for dev entries no id matched.
inline std::size_t remove_dev_overlap(std::vector<Document>& multi_train,
                                      const std::vector<Document>& mono_dev) {
    std::unordered_set<std::string> dev_ids;
    for (const auto& d : mono_dev) dev_ids.insert(d.id);

    std::unordered_set<std::string> matched_dev_ids;
    std::vector<Document> kept;
    kept.reserve(multi_train.size());
    for (auto& doc : multi_train) {
        if (dev_ids.count(doc.id)) {
            matched_dev_ids.insert(doc.id);
        } else {
            kept.push_back(std::move(doc));
        }
    }

    // Text fallback for the dev entries that did not match by id.
    std::unordered_set<std::string> leftover_texts;
    for (const auto& d : mono_dev) {
        if (!matched_dev_ids.count(d.id)) leftover_texts.insert(sentence_key(d.text));
    }
    std::size_t removed = multi_train.size() - kept.size();
    if (!leftover_texts.empty()) {
        std::vector<Document> kept2;
        kept2.reserve(kept.size());
        for (auto& doc : kept) {
            if (leftover_texts.count(sentence_key(doc.text))) {
                ++removed;
            } else {
                kept2.push_back(std::move(doc));
            }
        }
        kept = std::move(kept2);
    }
    multi_train = std::move(kept);
    return removed;
}

}  // namespace detail

// Builds v2 (overlap removal + back-translation merge + cleaning) or v3
// (v2 plus the multilingual dev split merged into the monolingual train
// split) from the official v1 snapshot.
inline CorpusVersion build_version(const CorpusVersion& v1, VersionName plan,
                                   const std::vector<Document>& translated,
                                   const BuildVersionOptions& options = {}) {
    if (plan == VersionName::V1) {
        throw ValidationError("build_version plan must be v2 or v3");
    }
    if (plan == VersionName::V3 && translated.empty()) {
        throw ValidationError("plan v3 requested without translations available for v2");
    }

    CorpusVersion out = v1;
    out.name = VersionName::V2;
    out.lineage = v1.lineage;

    const auto& mono_dev = out.split(Track::Mono, "dev");
    auto& multi_train = out.split_mut(Track::Multi, "train");
    const std::size_t removed = detail::remove_dev_overlap(multi_train, mono_dev);
    out.lineage.push_back("mono-dev-overlap removal");
    if (removed == 0 && !mono_dev.empty()) {
        out.lineage.push_back("warning: overlap removal matched 0 of " +
                              std::to_string(mono_dev.size()) + " supplied dev entries");
    }

    auto& mono_train = out.split_mut(Track::Mono, "train");
    mono_train.insert(mono_train.end(), translated.begin(), translated.end());
    out.lineage.push_back("back-translation merge");

    for (auto& [key, docs] : out.splits) {
        CleaningConfig config;
        auto mode_it = options.cleaning_modes.find(key.track);
        config.mode =
            mode_it == options.cleaning_modes.end() ? CleaningMode::English : mode_it->second;
        config.boilerplate_patterns = options.boilerplate_patterns;
        auto [cleaned, report] = clean_corpus(docs, config);
        docs = std::move(cleaned);
        if (report.documents_emptied > 0) {
            out.lineage.push_back("cleaning dropped " + std::to_string(report.documents_emptied) +
                                  " emptied documents from " + track_name(key.track) + "/" +
                                  key.split);
        }
    }
    out.lineage.push_back("cleaning");

    if (plan == VersionName::V3) {
        out.name = VersionName::V3;
        const auto& multi_dev = out.split(Track::Multi, "dev");
        auto& train = out.split_mut(Track::Mono, "train");
        train.insert(train.end(), multi_dev.begin(), multi_dev.end());
        out.lineage.push_back("multilingual-dev-into-train merge");
    }

    detail::validate_version(out);
    return out;
}

}  // namespace mgtd
