#include "prediql/execution.hpp"

#include "prediql/query_ast.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <thread>

namespace prediql {

const char* outcome_class_name(OutcomeClass c) {
    switch (c) {
    case OutcomeClass::Success: return "success";
    case OutcomeClass::GraphqlError: return "graphql_error";
    case OutcomeClass::HttpError: return "http_error";
    case OutcomeClass::TransportError: return "transport_error";
    case OutcomeClass::Timeout: return "timeout";
    }
    return "unknown";
}

OutcomeClass classify(const Outcome& outcome) {
    if (outcome.timed_out) {
        return OutcomeClass::Timeout;
    }
    if (outcome.http_status == 0) {
        return OutcomeClass::TransportError;
    }
    if (outcome.http_status != 200) {
        return OutcomeClass::HttpError;
    }
    if (!outcome.graphql_errors.empty()) {
        return OutcomeClass::GraphqlError;
    }
    return outcome.data_present ? OutcomeClass::Success : OutcomeClass::GraphqlError;
}

namespace {

double steady_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

} // namespace

TokenBucket::TokenBucket(double rate_per_sec, double burst, Clock clock)
    : rate_(rate_per_sec),
      capacity_(burst),
      tokens_(burst),
      clock_(clock ? std::move(clock) : Clock(steady_seconds)) {
    last_ = clock_();
}

void TokenBucket::refill() {
    const double now = clock_();
    tokens_ = std::min(capacity_, tokens_ + (now - last_) * rate_);
    last_ = now;
}

bool TokenBucket::try_acquire() {
    refill();
    if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return true;
    }
    return false;
}

void TokenBucket::acquire() {
    while (!try_acquire()) {
        const double deficit = 1.0 - tokens_;
        const double wait_s = rate_ > 0.0 ? deficit / rate_ : 0.01;
        std::this_thread::sleep_for(
            std::chrono::microseconds(static_cast<long>(wait_s * 1e6) + 100));
    }
}

namespace {

// The response key of the first root field decides data_present; an
// unparseable query (sent anyway, it is a fuzzer) falls back to "data is a
// non-null object".
bool response_has_data(const nlohmann::json& body, const std::string& query_text) {
    if (!body.is_object() || !body.contains("data") || body["data"].is_null()) {
        return false;
    }
    const auto& data = body["data"];
    try {
        QueryAST ast = parse_query(query_text);
        const std::string& key = ast.selections.front().response_key();
        return data.is_object() && data.contains(key) && !data[key].is_null();
    } catch (const std::exception&) {
        return data.is_object();
    }
}

} // namespace

Outcome execute(Transport& transport, const std::string& query_text,
                const ExecuteOptions& options) {
    if (options.limiter != nullptr) {
        options.limiter->acquire();
    }

    nlohmann::json request = {{"query", query_text}};
    const auto start = std::chrono::steady_clock::now();
    TransportResult wire = transport.post_json(request.dump());
    const auto stop = std::chrono::steady_clock::now();

    Outcome outcome;
    outcome.latency_ms = std::chrono::duration<double, std::milli>(stop - start).count();

    if (!wire.ok) {
        outcome.timed_out = wire.timed_out;
        // Transport diagnostics ride in the error list so self-correction
        // sees them; classify() keys on status 0, not on this list.
        outcome.graphql_errors.push_back("transport: " + wire.error);
        outcome.truncated_body = wire.error.substr(0, options.excerpt_cap);
        outcome.classification = classify(outcome);
        return outcome;
    }

    outcome.http_status = wire.status;
    outcome.truncated_body = wire.body.substr(0, options.excerpt_cap);

    nlohmann::json body = nlohmann::json::parse(wire.body, nullptr, false);
    if (!body.is_discarded()) {
        if (body.contains("errors") && body["errors"].is_array()) {
            for (const auto& err : body["errors"]) {
                if (err.is_object() && err.contains("message") && err["message"].is_string()) {
                    outcome.graphql_errors.push_back(err["message"].get<std::string>());
                } else {
                    outcome.graphql_errors.push_back(err.dump());
                }
            }
        }
        outcome.data_present = response_has_data(body, query_text);
    }

    outcome.classification = classify(outcome);
    return outcome;
}

} // namespace prediql
