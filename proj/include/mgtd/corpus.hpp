#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "mgtd/detail/rng.hpp"

namespace mgtd {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One text instance. `label` is a class id under the active LabelSchema,
// `source` the generator tag ("human", "chatGPT", ...), `provenance` the
// transformation tags accumulated by the pipeline.
struct Document {
    std::string id;
    std::string text;
    std::string language;  // ISO 639-1, empty when unknown
    std::optional<int> label;
    std::optional<std::string> source;
    std::vector<std::string> provenance;

    bool operator==(const Document&) const = default;
};

enum class Task { SubtaskAMono, SubtaskAMulti, SubtaskB };

inline std::string task_name(Task t) {
    switch (t) {
        case Task::SubtaskAMono: return "subtaskA-mono";
        case Task::SubtaskAMulti: return "subtaskA-multi";
        case Task::SubtaskB: return "subtaskB";
    }
    return "?";
}

inline Task task_from_name(std::string_view name) {
    if (name == "subtaskA-mono") return Task::SubtaskAMono;
    if (name == "subtaskA-multi") return Task::SubtaskAMulti;
    if (name == "subtaskB") return Task::SubtaskB;
    throw ValidationError("unknown task name: " + std::string(name));
}

// Ordered class list with a bijection onto 0..C-1. Subtask A tracks are
// binary (human=0, machine=1); subtask B attributes among six generators.
class LabelSchema {
public:
    LabelSchema(Task task, std::vector<std::string> classes)
        : task_(task), classes_(std::move(classes)) {
        const std::size_t expected = (task_ == Task::SubtaskB) ? 6 : 2;
        if (classes_.size() != expected) {
            throw ValidationError("schema for " + task_name(task_) + " needs " +
                                  std::to_string(expected) + " classes, got " +
                                  std::to_string(classes_.size()));
        }
        for (std::size_t i = 0; i < classes_.size(); ++i) {
            auto [it, fresh] = class_to_id_.emplace(classes_[i], static_cast<int>(i));
            if (!fresh) throw ValidationError("duplicate class name: " + classes_[i]);
        }
    }

    static LabelSchema subtask_a_mono() {
        return LabelSchema(Task::SubtaskAMono, {"human", "machine"});
    }
    static LabelSchema subtask_a_multi() {
        return LabelSchema(Task::SubtaskAMulti, {"human", "machine"});
    }
    static LabelSchema subtask_b() {
        return LabelSchema(Task::SubtaskB,
                           {"human", "chatGPT", "cohere", "davinci", "bloomz", "dolly"});
    }
    static LabelSchema for_task(Task t) {
        switch (t) {
            case Task::SubtaskAMono: return subtask_a_mono();
            case Task::SubtaskAMulti: return subtask_a_multi();
            case Task::SubtaskB: return subtask_b();
        }
        throw ValidationError("bad task");
    }

    Task task() const { return task_; }
    int num_classes() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::string>& classes() const { return classes_; }

    bool valid_label(int id) const { return id >= 0 && id < num_classes(); }

    int id_of(const std::string& cls) const {
        auto it = class_to_id_.find(cls);
        if (it == class_to_id_.end()) throw ValidationError("unknown class name: " + cls);
        return it->second;
    }

    const std::string& name_of(int id) const {
        if (!valid_label(id)) throw ValidationError("class id out of range: " + std::to_string(id));
        return classes_[static_cast<std::size_t>(id)];
    }

    bool operator==(const LabelSchema& o) const {
        return task_ == o.task_ && classes_ == o.classes_;
    }

private:
    Task task_;
    std::vector<std::string> classes_;
    std::map<std::string, int> class_to_id_;
};

namespace detail {

inline nlohmann::json parse_record(const std::string& line, std::size_t line_no) {
    nlohmann::json rec;
    try {
        rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!rec.is_object()) {
        throw ParseError("line " + std::to_string(line_no) + ": record is not an object");
    }
    return rec;
}

inline std::string id_field(const nlohmann::json& rec, std::size_t line_no) {
    auto it = rec.find("id");
    if (it == rec.end()) throw ParseError("line " + std::to_string(line_no) + ": missing id");
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
    throw ParseError("line " + std::to_string(line_no) + ": id must be string or integer");
}

inline int label_field(const nlohmann::json& v, std::size_t line_no) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) {
        try {
            std::size_t used = 0;
            int out = std::stoi(v.get<std::string>(), &used);
            if (used == v.get<std::string>().size()) return out;
        } catch (...) {
        }
    }
    throw ParseError("line " + std::to_string(line_no) + ": label must be an integer");
}

}  // namespace detail

// Reads a line-delimited record file. Each line must carry id and text;
// labels are validated against the schema, ids must be unique, empty texts
// are rejected. Input order is preserved.
inline std::vector<Document> load_corpus(const std::filesystem::path& path,
                                         const LabelSchema& schema) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path.string());
    std::vector<Document> docs;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json rec = detail::parse_record(line, line_no);
        Document doc;
        doc.id = detail::id_field(rec, line_no);
        if (!seen.insert(doc.id).second) {
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate id '" +
                                  doc.id + "'");
        }
        auto text = rec.find("text");
        if (text == rec.end() || !text->is_string()) {
            throw ParseError("line " + std::to_string(line_no) + ": missing text field");
        }
        doc.text = text->get<std::string>();
        if (doc.text.empty()) {
            throw ValidationError("line " + std::to_string(line_no) + ": empty text for id '" +
                                  doc.id + "'");
        }
        if (auto it = rec.find("language"); it != rec.end() && it->is_string()) {
            doc.language = it->get<std::string>();
        }
        if (auto it = rec.find("label"); it != rec.end() && !it->is_null()) {
            int label = detail::label_field(*it, line_no);
            if (!schema.valid_label(label)) {
                throw ValidationError("line " + std::to_string(line_no) + ": label " +
                                      std::to_string(label) + " outside schema for " +
                                      task_name(schema.task()));
            }
            doc.label = label;
        }
        if (auto it = rec.find("source"); it != rec.end() && it->is_string()) {
            doc.source = it->get<std::string>();
        }
        if (auto it = rec.find("provenance"); it != rec.end() && it->is_array()) {
            for (const auto& tag : *it) {
                if (tag.is_string()) doc.provenance.push_back(tag.get<std::string>());
            }
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

inline nlohmann::json document_to_json(const Document& doc) {
    nlohmann::json rec;
    rec["id"] = doc.id;
    rec["text"] = doc.text;
    if (!doc.language.empty()) rec["language"] = doc.language;
    if (doc.label) rec["label"] = *doc.label;
    if (doc.source) rec["source"] = *doc.source;
    if (!doc.provenance.empty()) rec["provenance"] = doc.provenance;
    return rec;
}

inline void write_corpus(const std::vector<Document>& docs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    for (const auto& doc : docs) {
        out << document_to_json(doc).dump() << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

// Prediction records carry exactly {id, label}, one per line, input order.
// Output bytes are a pure function of the input.
inline void write_predictions(const std::vector<std::pair<std::string, int>>& predictions,
                              const std::filesystem::path& path) {
    std::unordered_set<std::string> seen;
    for (const auto& [id, label] : predictions) {
        if (!seen.insert(id).second) {
            throw ValidationError("duplicate prediction id '" + id + "'");
        }
        (void)label;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    for (const auto& [id, label] : predictions) {
        nlohmann::json rec;
        rec["id"] = id;
        rec["label"] = label;
        out << rec.dump() << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

inline std::vector<std::pair<std::string, int>> load_predictions(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open predictions file: " + path.string());
    std::vector<std::pair<std::string, int>> preds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json rec = detail::parse_record(line, line_no);
        std::string id = detail::id_field(rec, line_no);
        auto it = rec.find("label");
        if (it == rec.end()) throw ParseError("line " + std::to_string(line_no) + ": missing label");
        preds.emplace_back(std::move(id), detail::label_field(*it, line_no));
    }
    return preds;
}

// Replaces each document's label with tagmap[source]; everything else is
// untouched. Unknown tags are a hard error naming the tag.
inline std::vector<Document> relabel_multiclass(const std::vector<Document>& docs,
                                                const std::map<std::string, int>& tagmap) {
    std::vector<Document> out;
    out.reserve(docs.size());
    for (const auto& doc : docs) {
        const std::string tag = doc.source.value_or("");
        auto it = tagmap.find(tag);
        if (it == tagmap.end()) {
            throw ValidationError("no tagmap entry for source tag '" +
                                  (tag.empty() ? std::string("(none)") : tag) + "' (doc '" +
                                  doc.id + "')");
        }
        Document copy = doc;
        copy.label = it->second;
        out.push_back(std::move(copy));
    }
    return out;
}

// Uniform seeded downsampling of overrepresented classes: each class keeps
// min(count, cap) documents; survivors stay in input order.
inline std::vector<Document> rebalance(const std::vector<Document>& docs, std::size_t cap,
                                       std::uint64_t seed) {
    if (cap < 1) throw ValidationError("rebalance cap must be >= 1");
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (!docs[i].label) {
            throw ValidationError("rebalance requires labels; doc '" + docs[i].id +
                                  "' is unlabeled");
        }
        by_class[*docs[i].label].push_back(i);
    }
    std::vector<char> keep(docs.size(), 1);
    for (auto& [label, indices] : by_class) {
        if (indices.size() <= cap) continue;
        detail::Rng rng(detail::Rng::derive(seed, static_cast<std::uint64_t>(label)));
        std::vector<std::size_t> pool = indices;
        rng.shuffle(pool);
        for (auto idx : indices) keep[idx] = 0;
        for (std::size_t k = 0; k < cap; ++k) keep[pool[k]] = 1;
    }
    std::vector<Document> out;
    out.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (keep[i]) out.push_back(docs[i]);
    }
    return out;
}

enum class Track { Mono, Multi, SubB };

inline std::string track_name(Track t) {
    switch (t) {
        case Track::Mono: return "mono";
        case Track::Multi: return "multi";
        case Track::SubB: return "subB";
    }
    return "?";
}

struct SplitKey {
    Track track;
    std::string split;  // "train", "dev", "test"

    auto operator<=>(const SplitKey&) const = default;
};

enum class VersionName { V1, V2, V3 };

inline std::string version_name(VersionName v) {
    switch (v) {
        case VersionName::V1: return "v1";
        case VersionName::V2: return "v2";
        case VersionName::V3: return "v3";
    }
    return "?";
}

// A named dataset snapshot with per-(track, split) document lists and an
// ordered lineage of the transformations that produced it.
struct CorpusVersion {
    VersionName name = VersionName::V1;
    std::map<SplitKey, std::vector<Document>> splits;
    std::vector<std::string> lineage;

    const std::vector<Document>& split(Track track, const std::string& split_name) const {
        static const std::vector<Document> empty;
        auto it = splits.find(SplitKey{track, split_name});
        return it == splits.end() ? empty : it->second;
    }

    std::vector<Document>& split_mut(Track track, const std::string& split_name) {
        return splits[SplitKey{track, split_name}];
    }

    // No document id may sit in both train and dev of the same track.
    void check_train_dev_disjoint() const {
        for (Track track : {Track::Mono, Track::Multi, Track::SubB}) {
            std::unordered_set<std::string> train_ids;
            for (const auto& d : split(track, "train")) train_ids.insert(d.id);
            for (const auto& d : split(track, "dev")) {
                if (train_ids.count(d.id)) {
                    throw ValidationError("id '" + d.id + "' appears in both train and dev of " +
                                          track_name(track));
                }
            }
        }
    }
};

}  // namespace mgtd
