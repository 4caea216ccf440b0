#pragma once

#include "prediql/execution.hpp"
#include "prediql/schema_ir.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace prediql {

inline constexpr std::size_t kEmbeddingDim = 256;

using Embedding = std::array<float, kEmbeddingDim>;

// Deterministic hashed bag-of-tokens: lowercase, split on non-alphanumerics,
// FNV-hash each token into one of 256 buckets, count, L2-normalize. Empty
// text embeds to the zero vector. A live embedding provider can replace this
// behind the same store interface.
Embedding embed(std::string_view text);

// Dot product in double precision; pre-normalized inputs make this cosine.
double cosine(const Embedding& a, const Embedding& b);

// One generation/execution episode.
struct Trace {
    std::uint64_t id = 0;
    Node node;
    std::string arm_id;
    std::string query_text;
    Outcome outcome;
    std::string response_excerpt;
    std::vector<std::string> error_messages;
    Embedding embedding{};
    std::string timestamp;

    bool operator==(const Trace&) const = default;
};

struct TraceFields {
    Node node;
    std::string arm_id;
    std::string query_text;
    Outcome outcome;
    std::vector<std::string> error_messages;
};

struct ErrorPair {
    std::string query_text;
    std::string error_message;
    Node node;

    bool operator==(const ErrorPair&) const = default;
};

// Append-only episode log with an exact cosine index over trace embeddings.
// Single writer; reads over already-written records are safe concurrently.
class TraceStore {
public:
    TraceStore() = default; // in-memory only

    // Opens (and loads) the newline-delimited JSON log, appending from the
    // highest existing id.
    static TraceStore open(const std::filesystem::path& ndjson_path);

    // Embeds query_text plus the first error message (when present), assigns
    // the next id, persists, and returns the id. Throws StorageError when the
    // store has been closed or the log cannot be written.
    std::uint64_t record_trace(const TraceFields& fields);

    // Exact top-k by cosine similarity to embed(probe_text), descending; ties
    // break toward the higher (more recent) id. k = 0 yields nothing.
    std::vector<Trace> retrieve_similar(std::string_view probe_text, std::size_t k) const;

    // The n most recent distinct (query_text, error_message) pairs for the
    // node, newest first.
    std::vector<ErrorPair> recent_errors(const Node& node, std::size_t n) const;

    const std::vector<Trace>& traces() const { return traces_; }
    const Trace& trace(std::uint64_t id) const;
    std::size_t size() const { return traces_.size(); }
    bool is_open() const { return open_; }
    void close();

private:
    std::vector<Trace> traces_;
    std::uint64_t next_id_ = 1;
    bool open_ = true;
    std::filesystem::path path_;
    std::ofstream sink_; // valid only for file-backed stores
};

} // namespace prediql
