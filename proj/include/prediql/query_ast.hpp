#pragma once

#include "prediql/schema_ir.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prediql {

// Executable-document subset: operations, fields, arguments, variables,
// aliases. No fragments or directives; the generator never emits them.

enum class ValueKind { Int, Float, String, Boolean, Enum, Null, List, Object, Variable };

struct Value {
    ValueKind kind = ValueKind::Null;
    // Int/Float keep their source text so printing round-trips exactly;
    // String holds the decoded text; Enum/Variable hold the bare name.
    std::string scalar;
    bool boolean = false;
    std::vector<Value> list;
    std::vector<std::pair<std::string, Value>> object;

    bool operator==(const Value&) const = default;

    static Value make_int(std::string text);
    static Value make_float(std::string text);
    static Value make_string(std::string text);
    static Value make_bool(bool b);
    static Value make_enum(std::string name);
    static Value make_null();
    static Value make_variable(std::string name);
};

struct Argument {
    std::string name;
    Value value;
    bool operator==(const Argument&) const = default;
};

struct FieldNode {
    std::string alias; // empty when none
    std::string name;
    std::vector<Argument> args;
    std::vector<FieldNode> selections; // empty = leaf

    bool operator==(const FieldNode&) const = default;
    const std::string& response_key() const { return alias.empty() ? name : alias; }
    const Argument* find_arg(const std::string& arg_name) const;
};

struct VariableDef {
    std::string name; // without '$'
    TypeRef type;
    std::optional<Value> default_value;
    bool operator==(const VariableDef&) const = default;
};

struct QueryAST {
    OpKind kind = OpKind::Query;
    std::string name; // empty for anonymous operations
    std::vector<VariableDef> variables;
    std::vector<FieldNode> selections; // non-empty

    bool operator==(const QueryAST&) const = default;
};

// Throws SyntaxError (line/column) on malformed documents. Exactly one
// operation per document; shorthand `{ ... }` parses as an anonymous query.
QueryAST parse_query(std::string_view text);

// Canonical single-space form; parse_query(print_query(a)) == a.
std::string print_query(const QueryAST& ast);
std::string print_value(const Value& v);

// Nesting depth counting fields that open a selection set, so flat queries
// like `{ users { id } }` measure 1 and `{ users { wallet { owner { id } } } }`
// measures 3. Minimum 1 for any non-empty document.
int measured_depth(const QueryAST& ast);

enum class ViolationCode {
    UnknownField,
    UnknownArgument,
    MissingRequiredArgument,
    ScalarWithSubselection,
    ObjectWithoutSubselection,
    DepthExceeded,
};

const char* violation_code_name(ViolationCode code);

struct Violation {
    ViolationCode code;
    std::string path; // dotted response-key path, e.g. "users.wallet"
    std::string message;
    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    bool valid = true;
    std::vector<Violation> violations;
    int depth = 0; // measured depth of the document

    std::vector<std::string> messages() const;
};

// Structural schema check; problems are report entries, never exceptions.
ValidationReport validate_against_schema(const QueryAST& ast, const SchemaIR& ir, int depth_limit);

} // namespace prediql
