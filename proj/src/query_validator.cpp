#include "prediql/query_ast.hpp"

#include <sstream>

namespace prediql {

const char* violation_code_name(ViolationCode code) {
    switch (code) {
    case ViolationCode::UnknownField: return "unknown-field";
    case ViolationCode::UnknownArgument: return "unknown-argument";
    case ViolationCode::MissingRequiredArgument: return "missing-required-argument";
    case ViolationCode::ScalarWithSubselection: return "scalar-with-subselection";
    case ViolationCode::ObjectWithoutSubselection: return "object-without-subselection";
    case ViolationCode::DepthExceeded: return "depth-exceeded";
    }
    return "unknown";
}

std::vector<std::string> ValidationReport::messages() const {
    std::vector<std::string> out;
    out.reserve(violations.size());
    for (const auto& v : violations) {
        out.push_back(std::string(violation_code_name(v.code)) + " at " + v.path + ": " + v.message);
    }
    return out;
}

namespace {

struct Checker {
    const SchemaIR& ir;
    ValidationReport report;

    void add(ViolationCode code, const std::string& path, std::string message) {
        report.violations.push_back({code, path, std::move(message)});
    }

    void check_args(const std::vector<Argument>& given, const std::vector<ArgDef>& declared,
                    const std::string& owner_kind, const std::string& owner_name,
                    const std::string& path) {
        for (const auto& a : given) {
            bool known = false;
            for (const auto& d : declared) {
                if (d.name == a.name) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                add(ViolationCode::UnknownArgument, path,
                    "Unknown argument \"" + a.name + "\" on " + owner_kind + " \"" + owner_name +
                        "\".");
            }
        }
        for (const auto& d : declared) {
            if (!d.required()) {
                continue;
            }
            bool present = false;
            for (const auto& a : given) {
                if (a.name == d.name) {
                    present = true;
                    break;
                }
            }
            if (!present) {
                add(ViolationCode::MissingRequiredArgument, path,
                    "Argument \"" + d.name + "\" of type \"" + d.type.to_string() + "\" on " +
                        owner_kind + " \"" + owner_name + "\" is required, but it was not provided.");
            }
        }
    }

    // Walks the selection of `field` whose declared return base type is
    // `base`. Wrappers are irrelevant to nesting; only the base matters.
    void check_selection(const FieldNode& field, const std::string& base, const std::string& path) {
        const ObjectDef* obj = ir.find_object(base);
        if (obj == nullptr) {
            // Scalar, enum, or pass-through named type: a leaf either way.
            if (!field.selections.empty()) {
                add(ViolationCode::ScalarWithSubselection, path,
                    "Field \"" + field.name + "\" of type \"" + base +
                        "\" must not have a selection.");
            }
            return;
        }
        if (field.selections.empty()) {
            add(ViolationCode::ObjectWithoutSubselection, path,
                "Field \"" + field.name + "\" of type \"" + base +
                    "\" must have a selection of subfields.");
            return;
        }
        for (const auto& sub : field.selections) {
            const std::string sub_path = path + "." + sub.response_key();
            if (sub.name == "__typename") {
                if (!sub.selections.empty()) {
                    add(ViolationCode::ScalarWithSubselection, sub_path,
                        "Field \"__typename\" must not have a selection.");
                }
                continue;
            }
            const FieldDef* def = obj->find_field(sub.name);
            if (def == nullptr) {
                add(ViolationCode::UnknownField, sub_path,
                    "Cannot query field \"" + sub.name + "\" on type \"" + obj->name + "\".");
                continue;
            }
            check_args(sub.args, def->args, "field", def->name, sub_path);
            check_selection(sub, def->type.base, sub_path);
        }
    }
};

} // namespace

ValidationReport validate_against_schema(const QueryAST& ast, const SchemaIR& ir, int depth_limit) {
    Checker checker{ir, {}};
    for (const auto& root : ast.selections) {
        const std::string path = root.response_key();
        if (root.name == "__typename") {
            continue;
        }
        const OperationDef* op = ir.find_operation(ast.kind, root.name);
        if (op == nullptr) {
            checker.add(ViolationCode::UnknownField, path,
                        "Cannot query field \"" + root.name + "\" on type \"" +
                            (ast.kind == OpKind::Query ? "Query" : "Mutation") + "\".");
            continue;
        }
        checker.check_args(root.args, op->args, "field", op->name, path);
        checker.check_selection(root, op->return_type.base, path);
    }

    checker.report.depth = measured_depth(ast);
    if (checker.report.depth > depth_limit) {
        checker.add(ViolationCode::DepthExceeded, "(document)",
                    "Selection depth " + std::to_string(checker.report.depth) +
                        " exceeds the limit of " + std::to_string(depth_limit) + ".");
    }
    checker.report.valid = checker.report.violations.empty();
    return checker.report;
}

} // namespace prediql
