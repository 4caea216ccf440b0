#pragma once

#include "prediql/bandit.hpp"
#include "prediql/schema_ir.hpp"
#include "prediql/trace_store.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace prediql {

inline constexpr std::size_t kDefaultPromptBudget = 16000;

// The five prompt sections, rendered strictly in order: restricting header,
// schema fragment, retrieved examples, prior error-query pairs, and the
// arm's directives.
struct PromptBundle {
    std::string header;                         // B
    std::string schema_fragment;                // S; empty ⇔ arm excludes schema
    std::string schema_signature;               // S = signature + type blocks
    std::vector<std::string> schema_type_blocks; // ordered shallow → deep
    std::vector<std::string> retrieved;         // R, most similar first
    std::vector<std::uint64_t> retrieved_ids;   // parallel to retrieved
    std::vector<std::string> prior_errors;      // E, newest first
    std::string directives;                     // D
    Node target_node;
    std::string arm_id;
};

// Operation signature plus transitively referenced type definitions up to
// `depth` levels, rendered in the same YAML forms as the schema files.
std::string schema_fragment_for_node(const SchemaIR& ir, const Node& node, int depth);

// Throws ConfigError when the node is not part of the IR. Deterministic:
// identical inputs produce identical bundles.
PromptBundle assemble_prompt(const Arm& arm, const SchemaIR& ir, const Node& node,
                             const std::vector<Trace>& retrieved,
                             const std::vector<ErrorPair>& errors);

// Joins the sections under labeled delimiters. Renders to at most `budget`
// characters: overflow trims R entries oldest-first, then drops S type blocks
// deepest-first, then drops E pairs oldest-first, then hard-truncates.
std::string render(const PromptBundle& bundle, std::size_t budget = kDefaultPromptBudget);

} // namespace prediql
