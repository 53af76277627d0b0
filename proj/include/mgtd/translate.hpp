#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mgtd/corpus.hpp"
#include "mgtd/detail/hashing.hpp"
#include "mgtd/tokenize.hpp"

namespace mgtd {

class TranslationError : public std::runtime_error {
public:
    TranslationError(std::string doc_id, const std::string& what)
        : std::runtime_error(what), doc_id_(std::move(doc_id)) {}

    const std::string& doc_id() const { return doc_id_; }

private:
    std::string doc_id_;
};

// Which languages get back-translated, and into what.
struct TranslationRoute {
    std::set<std::string> source_languages{"zh", "id", "ur", "bg"};
    std::string target_language{"en"};

    void validate() const {
        if (source_languages.count(target_language)) {
            throw ValidationError("target language '" + target_language +
                                  "' must not be a source language");
        }
    }

    bool in_route(const std::string& language) const {
        return source_languages.count(language) > 0;
    }
};

struct TranslationRequest {
    std::string source_language;
    std::string target_language;
    std::string text;
};

class TranslationClient {
public:
    virtual ~TranslationClient() = default;
    // Returns the translated text; throws std::runtime_error on service failure.
    virtual std::string translate(const TranslationRequest& request) = 0;
};

// Deterministic stand-in for a commercial MT endpoint: reverses the token
// order and tags the output, so tests can recognize translated text without
// any network access.
class FakeTranslationClient : public TranslationClient {
public:
    std::string translate(const TranslationRequest& request) override {
        calls_.fetch_add(1, std::memory_order_relaxed);
        auto tokens = word_tokens(request.text);
        std::string out = "[MT " + request.source_language + "->" + request.target_language + "]";
        for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
            out.push_back(' ');
            out.append(*it);
        }
        return out;
    }

    std::size_t calls() const { return calls_.load(std::memory_order_relaxed); }

private:
    std::atomic<std::size_t> calls_{0};
};

// Persistent (language, text-hash) -> translation map backed by an
// append-only JSONL log, so reruns never pay for the same request twice.
class TranslationCache {
public:
    TranslationCache() = default;

    explicit TranslationCache(std::filesystem::path path) : path_(std::move(path)) {
        std::ifstream in(path_);
        if (!in) return;  // fresh cache
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
            if (rec.is_discarded() || !rec.is_object()) {
                ++skipped_records_;  // torn append; ignore
                continue;
            }
            auto lang = rec.find("language");
            auto hash = rec.find("hash");
            auto translation = rec.find("translation");
            if (lang == rec.end() || hash == rec.end() || translation == rec.end()) {
                ++skipped_records_;
                continue;
            }
            entries_[lang->get<std::string>() + ":" + hash->get<std::string>()] =
                translation->get<std::string>();
        }
    }

    std::optional<std::string> lookup(const std::string& language, const std::string& text) {
        const std::string key = make_key(language, text);
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            misses_.fetch_add(1, std::memory_order_relaxed);
            return std::nullopt;
        }
        hits_.fetch_add(1, std::memory_order_relaxed);
        return it->second;
    }

    void store(const std::string& language, const std::string& text,
               const std::string& translation) {
        const std::string key = make_key(language, text);
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, fresh] = entries_.emplace(key, translation);
        if (!fresh) return;
        if (!path_.empty()) {
            std::ofstream out(path_, std::ios::app | std::ios::binary);
            nlohmann::json rec;
            rec["language"] = language;
            rec["hash"] = detail::sha256_hex(text);
            rec["translation"] = translation;
            out << rec.dump() << "\n";
        }
    }

    std::size_t hits() const { return hits_.load(std::memory_order_relaxed); }
    std::size_t misses() const { return misses_.load(std::memory_order_relaxed); }
    std::size_t size() const { return entries_.size(); }
    std::size_t skipped_records() const { return skipped_records_; }

private:
    static std::string make_key(const std::string& language, const std::string& text) {
        return language + ":" + detail::sha256_hex(text);
    }

    std::filesystem::path path_;
    std::unordered_map<std::string, std::string> entries_;
    std::mutex mutex_;
    std::atomic<std::size_t> hits_{0};
    std::atomic<std::size_t> misses_{0};
    std::size_t skipped_records_ = 0;
};

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds initial_backoff{100};
    double multiplier = 2.0;
};

namespace detail {

inline bool plausible_language_code(const std::string& code) {
    if (code.size() != 2) return false;
    return std::islower(static_cast<unsigned char>(code[0])) &&
           std::islower(static_cast<unsigned char>(code[1]));
}

inline std::string translate_with_retries(TranslationClient& client,
                                          const TranslationRequest& request,
                                          const RetryPolicy& retry, const std::string& doc_id) {
    std::chrono::milliseconds backoff = retry.initial_backoff;
    std::string last_error = "no attempts made";
    for (int attempt = 0; attempt < std::max(1, retry.attempts); ++attempt) {
        try {
            return client.translate(request);
        } catch (const std::exception& e) {
            last_error = e.what();
        }
        if (attempt + 1 < retry.attempts && backoff.count() > 0) {
            std::this_thread::sleep_for(backoff);
            backoff = std::chrono::milliseconds(
                static_cast<std::int64_t>(static_cast<double>(backoff.count()) * retry.multiplier));
        }
    }
    throw TranslationError(doc_id, "translation failed for doc '" + doc_id +
                                       "' after " + std::to_string(retry.attempts) +
                                       " attempts: " + last_error);
}

}  // namespace detail

// Translates one document if its language is routed; otherwise passes it
// through unchanged. The cache is consulted before the service. Labels and
// all other fields are preserved.
inline Document back_translate(const Document& doc, const TranslationRoute& route,
                               TranslationCache& cache, TranslationClient& client,
                               const RetryPolicy& retry = {}) {
    route.validate();
    if (doc.language == route.target_language) return doc;
    if (!route.in_route(doc.language)) {
        if (!detail::plausible_language_code(doc.language)) {
            Document out = doc;
            out.provenance.push_back("warning: unknown language code '" + doc.language + "'");
            return out;
        }
        return doc;
    }
    std::string translated;
    if (auto cached = cache.lookup(doc.language, doc.text)) {
        translated = *cached;
    } else {
        TranslationRequest request{doc.language, route.target_language, doc.text};
        translated = detail::translate_with_retries(client, request, retry, doc.id);
        cache.store(doc.language, doc.text, translated);
    }
    Document out = doc;
    out.text = std::move(translated);
    out.language = route.target_language;
    out.provenance.push_back("back-translated");
    return out;
}

struct BatchFailure {
    std::size_t index = 0;
    std::string doc_id;
    std::string error;
};

struct BatchResult {
    std::vector<Document> docs;        // successes, input order
    std::vector<BatchFailure> failures;  // input order
};

// Applies back_translate to every document with at most max_in_flight
// translation requests outstanding. Fail-soft by default: failures are
// collected next to the successes. In fail-fast mode the first failure
// aborts the batch and is rethrown.
inline BatchResult translate_batch(const std::vector<Document>& docs,
                                   const TranslationRoute& route, TranslationCache& cache,
                                   TranslationClient& client, std::size_t max_in_flight,
                                   bool fail_fast = false, const RetryPolicy& retry = {}) {
    if (max_in_flight < 1) throw ValidationError("max_in_flight must be >= 1");
    route.validate();

    std::vector<std::optional<Document>> results(docs.size());
    std::vector<std::optional<BatchFailure>> failures(docs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};

    auto worker = [&]() {
        while (!abort.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= docs.size()) return;
            try {
                results[i] = back_translate(docs[i], route, cache, client, retry);
            } catch (const std::exception& e) {
                failures[i] = BatchFailure{i, docs[i].id, e.what()};
                if (fail_fast) abort.store(true, std::memory_order_relaxed);
            }
        }
    };

    const std::size_t n_threads = std::min(max_in_flight, std::max<std::size_t>(docs.size(), 1));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    BatchResult out;
    out.docs.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (failures[i]) {
            if (fail_fast) {
                throw TranslationError(failures[i]->doc_id,
                                       "batch aborted: " + failures[i]->error);
            }
            out.failures.push_back(*failures[i]);
        } else if (results[i]) {
            out.docs.push_back(std::move(*results[i]));
        }
    }
    return out;
}

}  // namespace mgtd
