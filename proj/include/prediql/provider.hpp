#pragma once

#include "prediql/bandit.hpp"
#include "prediql/query_ast.hpp"
#include "prediql/schema_ir.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace prediql {

struct CompletionRequest {
    std::string prompt;
    double temperature = 0.7; // clamped to [0, 2]
    int max_tokens = 1024;
    std::string model;
};

// Completion backend seam: a live chat endpoint or the deterministic offline
// generator. Providers are stateless per request.
class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    virtual std::string complete(const CompletionRequest& request) = 0;
    virtual std::string kind() const = 0;
};

// --- prompt-free template generation -------------------------------------

struct TemplateOptions {
    ArgMode arg_mode = ArgMode::Real;
    int depth = 1;
    std::map<std::string, Value> known_values;  // prior successful literals by arg name
    std::map<std::string, Value> forced_values; // overrides for targeted probes
    std::uint64_t variant = 0;                  // rotates real-mode payloads
};

// Synthesizes a schema-valid operation for the node: scalar fields at every
// level, object fields only while the depth cap allows another level.
// Throws ConfigError when the node is not in the IR.
std::string template_query(const SchemaIR& ir, const Node& node, const TemplateOptions& options);

// A chain of object links nested `target_depth` selections deep (for probing
// unbounded-depth acceptance); nullopt when the type graph has no such path.
std::optional<std::string> deep_probe_query(const SchemaIR& ir, const Node& node, int target_depth);

// --- offline provider ------------------------------------------------------

struct OfflineProviderOptions {
    std::uint64_t seed = 0;
    // Ablation handicap: renames one argument per generated query to an
    // invalid name unless the prompt's prior-errors section already reports
    // that name, so only self-correcting configurations recover.
    bool handicap_invalid_arg = false;
};

// Deterministic stand-in for a live model. Reads the rendered prompt: the
// DIRECTIVES section names the target and depth, the SCHEMA section (when
// present) is parsed back into an IR for template synthesis, and the
// EXAMPLES section supplies known argument values. Without a schema section
// it falls back to a flat `{ <node> { __typename } }` shape. Never errors.
class OfflineTemplateProvider : public CompletionProvider {
public:
    explicit OfflineTemplateProvider(OfflineProviderOptions options = {});

    std::string complete(const CompletionRequest& request) override;
    std::string kind() const override { return "offline_template"; }

private:
    OfflineProviderOptions options_;
};

// --- HTTP chat provider ------------------------------------------------------

struct BackoffPolicy {
    std::chrono::milliseconds base{1000};
    int factor = 2;
    int max_attempts = 5;
    std::function<void(std::chrono::milliseconds)> sleeper; // injectable for tests
};

struct HttpChatOptions {
    std::string endpoint; // e.g. https://api.example.com/v1/chat/completions
    std::string api_key_env = "PREDIQL_API_KEY";
    std::string model = "gpt-4o-mini";
    std::chrono::milliseconds timeout{30000};
    BackoffPolicy backoff;
    bool verbose = false;
};

// OpenAI-compatible chat-completions client; single user message per request.
// Retries transport failures and non-200 statuses with exponential backoff,
// then throws TransportError/EndpointError.
class HttpChatProvider : public CompletionProvider {
public:
    explicit HttpChatProvider(HttpChatOptions options);

    std::string complete(const CompletionRequest& request) override;
    std::string kind() const override { return "http_chat"; }

private:
    HttpChatOptions options_;
};

// Contents of all fenced code blocks carrying no tag or a graphql/gql tag,
// in order, exact duplicates removed. Without fences, the whole text is
// returned iff it parses as a GraphQL document.
std::vector<std::string> extract_queries(const std::string& completion);

} // namespace prediql
