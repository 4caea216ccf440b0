#pragma once

#include "prediql/transport.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace prediql {

// Stored response bodies and prompt excerpts are capped at this many bytes.
inline constexpr std::size_t kExcerptCap = 2048;

enum class OutcomeClass { Success, GraphqlError, HttpError, TransportError, Timeout };

const char* outcome_class_name(OutcomeClass c);

struct Outcome {
    int http_status = 0;
    std::vector<std::string> graphql_errors;
    bool data_present = false; // data field non-null for the target root field
    bool timed_out = false;
    double latency_ms = 0.0;
    std::string truncated_body;
    OutcomeClass classification = OutcomeClass::TransportError;

    bool operator==(const Outcome&) const = default;
};

// success ⇔ 200 ∧ no GraphQL errors ∧ data present. A 200 with neither
// errors nor data lands in GraphqlError: the server answered at the GraphQL
// layer but produced nothing usable.
OutcomeClass classify(const Outcome& outcome);

// Token bucket with burst capacity; with rate r and burst 1 any one-second
// window admits at most r+1 sends. The clock is injectable for tests.
class TokenBucket {
public:
    using Clock = std::function<double()>; // seconds, monotonic

    explicit TokenBucket(double rate_per_sec, double burst = 1.0, Clock clock = {});

    bool try_acquire();
    // Blocks (sleeps) until a token is available. Only meaningful with the
    // real clock.
    void acquire();
    double rate() const { return rate_; }

private:
    void refill();

    double rate_;
    double capacity_;
    double tokens_;
    double last_;
    Clock clock_;
};

struct ExecuteOptions {
    std::chrono::milliseconds timeout{15000};
    TokenBucket* limiter = nullptr;
    std::size_t excerpt_cap = kExcerptCap;
};

// Sends `{"query": ...}` and classifies the response. Transport failures and
// timeouts become Outcome classifications, never exceptions, so the campaign
// loop keeps running.
Outcome execute(Transport& transport, const std::string& query_text,
                const ExecuteOptions& options = {});

} // namespace prediql
