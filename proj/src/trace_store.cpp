#include "prediql/trace_store.hpp"

#include "prediql/errors.hpp"
#include "prediql/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <ctime>

namespace prediql {

Embedding embed(std::string_view text) {
    Embedding counts{};
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            counts[fnv1a64(token) % kEmbeddingDim] += 1.0f;
            token.clear();
        }
    };
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            flush();
        }
    }
    flush();

    double norm_sq = 0.0;
    for (float v : counts) {
        norm_sq += static_cast<double>(v) * static_cast<double>(v);
    }
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& v : counts) {
            v = static_cast<float>(v * inv);
        }
    }
    return counts;
}

double cosine(const Embedding& a, const Embedding& b) {
    double dot = 0.0;
    for (std::size_t i = 0; i < kEmbeddingDim; ++i) {
        dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return dot;
}

namespace {

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json outcome_to_json(const Outcome& o) {
    return {
        {"http_status", o.http_status},
        {"graphql_errors", o.graphql_errors},
        {"data_present", o.data_present},
        {"timed_out", o.timed_out},
        {"latency_ms", o.latency_ms},
        {"classification", outcome_class_name(o.classification)},
    };
}

OutcomeClass outcome_class_from(const std::string& name) {
    for (auto c : {OutcomeClass::Success, OutcomeClass::GraphqlError, OutcomeClass::HttpError,
                   OutcomeClass::TransportError, OutcomeClass::Timeout}) {
        if (name == outcome_class_name(c)) {
            return c;
        }
    }
    return OutcomeClass::TransportError;
}

nlohmann::json trace_to_json(const Trace& t) {
    nlohmann::json j = {
        {"id", t.id},
        {"node", {{"kind", op_kind_name(t.node.kind)}, {"name", t.node.name}}},
        {"arm_id", t.arm_id},
        {"query_text", t.query_text},
        {"outcome", outcome_to_json(t.outcome)},
        {"response_excerpt", t.response_excerpt},
        {"error_messages", t.error_messages},
        {"timestamp", t.timestamp},
    };
    j["embedding"] = std::vector<float>(t.embedding.begin(), t.embedding.end());
    return j;
}

Trace trace_from_json(const nlohmann::json& j) {
    Trace t;
    t.id = j.at("id").get<std::uint64_t>();
    t.node.kind = j.at("node").at("kind").get<std::string>() == "mutation" ? OpKind::Mutation
                                                                           : OpKind::Query;
    t.node.name = j.at("node").at("name").get<std::string>();
    t.arm_id = j.at("arm_id").get<std::string>();
    t.query_text = j.at("query_text").get<std::string>();
    const auto& o = j.at("outcome");
    t.outcome.http_status = o.at("http_status").get<int>();
    t.outcome.graphql_errors = o.at("graphql_errors").get<std::vector<std::string>>();
    t.outcome.data_present = o.at("data_present").get<bool>();
    t.outcome.timed_out = o.at("timed_out").get<bool>();
    t.outcome.latency_ms = o.at("latency_ms").get<double>();
    t.outcome.classification = outcome_class_from(o.at("classification").get<std::string>());
    t.outcome.truncated_body = j.at("response_excerpt").get<std::string>();
    t.response_excerpt = t.outcome.truncated_body;
    t.error_messages = j.at("error_messages").get<std::vector<std::string>>();
    const auto emb = j.at("embedding").get<std::vector<float>>();
    std::copy_n(emb.begin(), std::min(emb.size(), kEmbeddingDim), t.embedding.begin());
    t.timestamp = j.at("timestamp").get<std::string>();
    return t;
}

} // namespace

TraceStore TraceStore::open(const std::filesystem::path& ndjson_path) {
    TraceStore store;
    store.path_ = ndjson_path;
    if (ndjson_path.has_parent_path()) {
        std::filesystem::create_directories(ndjson_path.parent_path());
    }
    if (std::filesystem::exists(ndjson_path)) {
        std::ifstream in(ndjson_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) {
                throw StorageError("corrupt trace log line in " + ndjson_path.string());
            }
            store.traces_.push_back(trace_from_json(j));
            store.next_id_ = std::max(store.next_id_, store.traces_.back().id + 1);
        }
    }
    store.sink_.open(ndjson_path, std::ios::app);
    if (!store.sink_) {
        throw StorageError("cannot open trace log for append: " + ndjson_path.string());
    }
    return store;
}

std::uint64_t TraceStore::record_trace(const TraceFields& fields) {
    if (!open_) {
        throw StorageError("trace store is closed");
    }
    Trace t;
    t.id = next_id_++;
    t.node = fields.node;
    t.arm_id = fields.arm_id;
    t.query_text = fields.query_text;
    t.outcome = fields.outcome;
    t.outcome.truncated_body = t.outcome.truncated_body.substr(
        0, std::min(t.outcome.truncated_body.size(), kExcerptCap));
    t.response_excerpt = t.outcome.truncated_body;
    t.error_messages = fields.error_messages;
    std::string embed_text = t.query_text;
    if (!t.error_messages.empty()) {
        embed_text += "\n" + t.error_messages.front();
    }
    t.embedding = embed(embed_text);
    t.timestamp = now_iso8601();

    if (!path_.empty()) {
        sink_ << trace_to_json(t).dump() << "\n";
        sink_.flush();
        if (!sink_) {
            throw StorageError("failed to append trace to " + path_.string());
        }
    }
    traces_.push_back(std::move(t));
    return traces_.back().id;
}

std::vector<Trace> TraceStore::retrieve_similar(std::string_view probe_text, std::size_t k) const {
    if (k == 0 || traces_.empty()) {
        return {};
    }
    const Embedding probe = embed(probe_text);
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(traces_.size());
    for (std::size_t i = 0; i < traces_.size(); ++i) {
        scored.emplace_back(cosine(probe, traces_[i].embedding), i);
    }
    std::stable_sort(scored.begin(), scored.end(), [this](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        return traces_[a.second].id > traces_[b.second].id;
    });
    std::vector<Trace> out;
    out.reserve(std::min(k, scored.size()));
    for (std::size_t i = 0; i < scored.size() && out.size() < k; ++i) {
        out.push_back(traces_[scored[i].second]);
    }
    return out;
}

std::vector<ErrorPair> TraceStore::recent_errors(const Node& node, std::size_t n) const {
    std::vector<ErrorPair> out;
    if (n == 0) {
        return out;
    }
    for (auto it = traces_.rbegin(); it != traces_.rend() && out.size() < n; ++it) {
        if (it->node != node) {
            continue;
        }
        for (const auto& msg : it->error_messages) {
            if (msg.empty()) {
                continue;
            }
            ErrorPair pair{it->query_text, msg, node};
            if (std::find(out.begin(), out.end(), pair) == out.end()) {
                out.push_back(std::move(pair));
                if (out.size() >= n) {
                    break;
                }
            }
        }
    }
    return out;
}

const Trace& TraceStore::trace(std::uint64_t id) const {
    for (const auto& t : traces_) {
        if (t.id == id) {
            return t;
        }
    }
    throw StorageError("no trace with id " + std::to_string(id));
}

void TraceStore::close() {
    open_ = false;
    if (sink_.is_open()) {
        sink_.close();
    }
}

} // namespace prediql
