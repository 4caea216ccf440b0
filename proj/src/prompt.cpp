#include "prediql/prompt.hpp"

#include "prediql/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace prediql {

namespace {

constexpr const char* kHeaderText =
    "You are generating GraphQL test queries for an authorized security testing campaign.\n"
    "Rules:\n"
    "- Emit exactly one GraphQL operation in a single ```graphql fenced code block.\n"
    "- Ground every field, argument, and value in the evidence sections below; do not invent "
    "schema elements.\n"
    "- No fragments, directives, or subscriptions.";

std::string yaml_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        out += c;
        if (c == '\'') {
            out += '\'';
        }
    }
    out += '\'';
    return out;
}

void emit_signature(std::ostringstream& out, const OperationDef& op) {
    out << "operation:\n";
    out << "  kind: " << op_kind_name(op.kind) << "\n";
    out << "  name: " << op.name << "\n";
    if (op.args.empty()) {
        out << "  args: []\n";
    } else {
        out << "  args:\n";
        for (const auto& a : op.args) {
            out << "    - name: " << a.name << "\n";
            out << "      type: " << yaml_quote(a.type.to_string()) << "\n";
            out << "      nullable: " << (a.nullable ? "true" : "false") << "\n";
            if (a.default_value) {
                out << "      default: " << yaml_quote(*a.default_value) << "\n";
            }
        }
    }
    out << "  returns: " << yaml_quote(op.return_type.to_string()) << "\n";
}

std::string emit_type_block(const SchemaIR& ir, const std::string& name) {
    std::ostringstream out;
    if (auto it = ir.enums.find(name); it != ir.enums.end()) {
        out << "  " << name << ":\n    values:\n";
        for (const auto& v : it->second) {
            out << "      - " << v << "\n";
        }
        return out.str();
    }
    const ObjectDef* obj = ir.find_object(name);
    if (obj == nullptr) {
        return {};
    }
    out << "  " << name << ":\n    fields:\n";
    for (const auto& f : obj->fields) {
        out << "      - name: " << f.name << "\n";
        out << "        type: " << yaml_quote(f.type.to_string()) << "\n";
    }
    return out.str();
}

// Referenced type names grouped by distance from the operation, level 1 being
// the return type and argument types. Only objects and enums yield blocks.
std::vector<std::vector<std::string>> referenced_levels(const SchemaIR& ir,
                                                        const OperationDef& op, int depth) {
    std::vector<std::vector<std::string>> levels;
    std::set<std::string> seen;

    std::set<std::string> frontier;
    auto consider = [&](const std::string& base, std::set<std::string>& into) {
        if ((ir.objects.count(base) > 0 || ir.enums.count(base) > 0) && seen.insert(base).second) {
            into.insert(base);
        }
    };
    consider(op.return_type.base, frontier);
    for (const auto& a : op.args) {
        consider(a.type.base, frontier);
    }
    for (int level = 0; level < depth && !frontier.empty(); ++level) {
        levels.emplace_back(frontier.begin(), frontier.end());
        std::set<std::string> next;
        for (const auto& name : frontier) {
            if (const ObjectDef* obj = ir.find_object(name)) {
                for (const auto& f : obj->fields) {
                    consider(f.type.base, next);
                    for (const auto& a : f.args) {
                        consider(a.type.base, next);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return levels;
}

std::string collapse_newlines(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return out;
}

std::string retrieved_entry(const Trace& t) {
    std::ostringstream out;
    out << "[example id=" << t.id << " node=\"" << t.node.label() << "\" outcome="
        << outcome_class_name(t.outcome.classification) << "]\n";
    out << "query:\n" << t.query_text << "\n";
    out << "response:\n" << (t.response_excerpt.empty() ? "(empty)" : t.response_excerpt) << "\n";
    out << "[/example]";
    return out.str();
}

std::string error_entry(const ErrorPair& pair) {
    return "failed query: " + collapse_newlines(pair.query_text) + "\nerror: " +
           collapse_newlines(pair.error_message);
}

std::string directive_for(ArgMode mode) {
    switch (mode) {
    case ArgMode::Known:
        return "reuse argument values that previously succeeded (listed in the examples section)";
    case ArgMode::Real:
        return "synthesize realistic, type-appropriate literals";
    case ArgMode::Nulls:
        return "set every optional argument to null";
    }
    return {};
}

} // namespace

std::string schema_fragment_for_node(const SchemaIR& ir, const Node& node, int depth) {
    const OperationDef* op = ir.find_operation(node.kind, node.name);
    if (op == nullptr) {
        throw ConfigError("node not in schema: " + node.label());
    }
    std::ostringstream out;
    emit_signature(out, *op);
    const auto levels = referenced_levels(ir, *op, depth);
    bool any = false;
    for (const auto& level : levels) {
        for (const auto& name : level) {
            if (!any) {
                out << "types:\n";
                any = true;
            }
            out << emit_type_block(ir, name);
        }
    }
    return out.str();
}

PromptBundle assemble_prompt(const Arm& arm, const SchemaIR& ir, const Node& node,
                             const std::vector<Trace>& retrieved,
                             const std::vector<ErrorPair>& errors) {
    const OperationDef* op = ir.find_operation(node.kind, node.name);
    if (op == nullptr) {
        throw ConfigError("node not in schema: " + node.label());
    }

    PromptBundle bundle;
    bundle.header = kHeaderText;
    bundle.target_node = node;
    bundle.arm_id = arm.id;

    if (arm.include_schema) {
        std::ostringstream sig;
        emit_signature(sig, *op);
        bundle.schema_signature = sig.str();
        bool first = true;
        for (const auto& level : referenced_levels(ir, *op, arm.depth)) {
            for (const auto& name : level) {
                std::string block = emit_type_block(ir, name);
                if (first) {
                    block.insert(0, "types:\n");
                    first = false;
                }
                bundle.schema_type_blocks.push_back(std::move(block));
            }
        }
        bundle.schema_fragment = bundle.schema_signature;
        for (const auto& block : bundle.schema_type_blocks) {
            bundle.schema_fragment += block;
        }
    }

    const std::size_t cap = static_cast<std::size_t>(std::max(arm.top_k, 0));
    for (std::size_t i = 0; i < retrieved.size() && i < cap; ++i) {
        bundle.retrieved.push_back(retrieved_entry(retrieved[i]));
        bundle.retrieved_ids.push_back(retrieved[i].id);
    }

    for (const auto& pair : errors) {
        bundle.prior_errors.push_back(error_entry(pair));
    }

    std::ostringstream d;
    d << "Target operation: " << node.label() << "\n";
    d << "Selection depth cap: " << arm.depth << "\n";
    d << "Argument mode: " << directive_for(arm.arg_mode) << "\n";
    d << "Output: exactly one GraphQL operation for the target inside a ```graphql fenced block.";
    bundle.directives = d.str();

    return bundle;
}

namespace {

std::string render_once(const PromptBundle& bundle, std::size_t schema_blocks,
                        std::size_t r_skip_oldest, std::size_t e_count) {
    std::ostringstream out;
    out << "### HEADER\n" << bundle.header << "\n\n";

    out << "### SCHEMA\n";
    if (bundle.schema_fragment.empty()) {
        out << "(omitted)\n\n";
    } else {
        out << bundle.schema_signature;
        for (std::size_t i = 0; i < schema_blocks && i < bundle.schema_type_blocks.size(); ++i) {
            out << bundle.schema_type_blocks[i];
        }
        out << "\n";
    }

    out << "### EXAMPLES\n";
    if (bundle.retrieved.empty() || r_skip_oldest >= bundle.retrieved.size()) {
        out << "(none)\n";
    } else {
        // Oldest entries (lowest trace ids) drop first under budget pressure.
        std::vector<std::uint64_t> ids = bundle.retrieved_ids;
        std::sort(ids.begin(), ids.end());
        std::set<std::uint64_t> dropped(ids.begin(), ids.begin() + static_cast<long>(r_skip_oldest));
        for (std::size_t i = 0; i < bundle.retrieved.size(); ++i) {
            if (dropped.count(bundle.retrieved_ids[i]) > 0) {
                continue;
            }
            out << bundle.retrieved[i] << "\n\n";
        }
    }
    out << "\n";

    out << "### PRIOR ERRORS\n";
    if (bundle.prior_errors.empty() || e_count == 0) {
        out << "(none)\n";
    } else {
        for (std::size_t i = 0; i < e_count && i < bundle.prior_errors.size(); ++i) {
            out << bundle.prior_errors[i] << "\n\n";
        }
    }
    out << "\n";

    out << "### DIRECTIVES\n" << bundle.directives << "\n";
    return out.str();
}

} // namespace

std::string render(const PromptBundle& bundle, std::size_t budget) {
    std::size_t schema_blocks = bundle.schema_type_blocks.size();
    std::size_t r_skip = 0;
    std::size_t e_count = bundle.prior_errors.size();

    std::string text = render_once(bundle, schema_blocks, r_skip, e_count);
    while (text.size() > budget && r_skip < bundle.retrieved.size()) {
        ++r_skip;
        text = render_once(bundle, schema_blocks, r_skip, e_count);
    }
    while (text.size() > budget && schema_blocks > 0) {
        --schema_blocks;
        text = render_once(bundle, schema_blocks, r_skip, e_count);
    }
    while (text.size() > budget && e_count > 0) {
        --e_count;
        text = render_once(bundle, schema_blocks, r_skip, e_count);
    }
    if (text.size() > budget) {
        text.resize(budget);
    }
    return text;
}

} // namespace prediql
