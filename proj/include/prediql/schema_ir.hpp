#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace prediql {

// GraphQL type references nest list/non-null wrappers around a named base
// type, e.g. [User!]!. Wrappers are stored outermost-first; nesting beyond
// kMaxTypeWrapDepth is rejected as a malformed (or adversarial) schema.
inline constexpr int kMaxTypeWrapDepth = 8;

enum class TypeWrap { List, NonNull };

struct TypeRef {
    std::string base;
    std::vector<TypeWrap> wraps; // outermost first

    bool operator==(const TypeRef&) const = default;

    bool non_null() const {
        return !wraps.empty() && wraps.front() == TypeWrap::NonNull;
    }
    bool is_list() const;

    // Canonical GraphQL form, e.g. "[User!]!".
    std::string to_string() const;
    // Inverse of to_string(); throws MalformedSchemaError on junk or when the
    // wrapper nesting exceeds kMaxTypeWrapDepth.
    static TypeRef parse(const std::string& text);
};

struct ArgDef {
    std::string name;
    TypeRef type;
    bool nullable = true;
    std::optional<std::string> default_value; // literal text as given

    bool operator==(const ArgDef&) const = default;
    // Required arguments must be supplied by every query.
    bool required() const { return !nullable && !default_value.has_value(); }
};

struct FieldDef {
    std::string name;
    std::vector<ArgDef> args;
    TypeRef type;

    bool operator==(const FieldDef&) const = default;
};

struct ObjectDef {
    std::string name;
    std::vector<FieldDef> fields; // sorted by name, unique

    bool operator==(const ObjectDef&) const = default;
    const FieldDef* find_field(const std::string& field_name) const;
};

enum class OpKind { Query, Mutation };

const char* op_kind_name(OpKind kind); // "query" | "mutation"

struct OperationDef {
    std::string name;
    std::vector<ArgDef> args;
    TypeRef return_type;
    OpKind kind = OpKind::Query;

    bool operator==(const OperationDef&) const = default;
};

// Normalized view of an introspected schema. Immutable after construction and
// safe to share across concurrent readers. All sequences are sorted by name so
// serialization and traversal are deterministic.
struct SchemaIR {
    std::vector<OperationDef> queries;
    std::vector<OperationDef> mutations;
    std::map<std::string, ObjectDef> objects;
    std::set<std::string> scalars;
    std::map<std::string, std::vector<std::string>> enums;

    bool operator==(const SchemaIR&) const = default;

    const OperationDef* find_operation(OpKind kind, const std::string& name) const;
    const ObjectDef* find_object(const std::string& name) const;
    bool is_scalar(const std::string& name) const { return scalars.count(name) > 0; }
    bool is_enum(const std::string& name) const { return enums.count(name) > 0; }
};

// One root-level operation field; the unit of the coverage metric.
struct Node {
    OpKind kind = OpKind::Query;
    std::string name;

    auto operator<=>(const Node&) const = default;
    std::string label() const; // "query users"
};

using NodeSet = std::set<Node>;

// NodeSet = every root query and mutation field; introspection meta-fields
// are never part of it.
NodeSet enumerate_nodes(const SchemaIR& ir);

struct SchemaYamlDocs {
    std::string queries_doc;
    std::string mutations_doc;
    std::string types_doc;
};

// Deterministic YAML rendering (alphabetical by name); serializing the same
// IR twice yields byte-identical documents.
SchemaYamlDocs serialize_schema_yaml(const SchemaIR& ir);

// Inverse of serialize_schema_yaml; throws MalformedSchemaError on documents
// that do not carry the expected structure.
SchemaIR schema_ir_from_yaml(const SchemaYamlDocs& docs);

} // namespace prediql
