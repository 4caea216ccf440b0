#include "prediql/schema_ir.hpp"

#include "prediql/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace prediql {

bool TypeRef::is_list() const {
    return std::find(wraps.begin(), wraps.end(), TypeWrap::List) != wraps.end();
}

std::string TypeRef::to_string() const {
    // Outermost wrapper renders outermost: NonNull appends '!', List brackets.
    std::string prefix;
    std::string suffix;
    for (auto wrap : wraps) {
        if (wrap == TypeWrap::NonNull) {
            suffix.insert(0, "!");
        } else {
            prefix += '[';
            suffix.insert(0, "]");
        }
    }
    return prefix + base + suffix;
}

TypeRef TypeRef::parse(const std::string& text) {
    struct Parser {
        const std::string& s;
        std::size_t pos = 0;

        TypeRef parse_ref(int depth) {
            if (depth > kMaxTypeWrapDepth) {
                throw MalformedSchemaError("type reference wrapper nesting exceeds " +
                                           std::to_string(kMaxTypeWrapDepth) + ": " + s);
            }
            TypeRef inner;
            if (pos < s.size() && s[pos] == '[') {
                ++pos;
                inner = parse_ref(depth + 1);
                if (pos >= s.size() || s[pos] != ']') {
                    throw MalformedSchemaError("unbalanced '[' in type reference: " + s);
                }
                ++pos;
                inner.wraps.insert(inner.wraps.begin(), TypeWrap::List);
            } else {
                std::size_t start = pos;
                while (pos < s.size() &&
                       (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
                    ++pos;
                }
                if (pos == start) {
                    throw MalformedSchemaError("missing type name in reference: " + s);
                }
                inner.base = s.substr(start, pos - start);
            }
            if (pos < s.size() && s[pos] == '!') {
                ++pos;
                inner.wraps.insert(inner.wraps.begin(), TypeWrap::NonNull);
            }
            if (static_cast<int>(inner.wraps.size()) > kMaxTypeWrapDepth) {
                throw MalformedSchemaError("type reference wrapper nesting exceeds " +
                                           std::to_string(kMaxTypeWrapDepth) + ": " + s);
            }
            return inner;
        }
    };

    Parser p{text};
    TypeRef ref = p.parse_ref(0);
    if (p.pos != text.size()) {
        throw MalformedSchemaError("trailing characters in type reference: " + text);
    }
    return ref;
}

const FieldDef* ObjectDef::find_field(const std::string& field_name) const {
    for (const auto& f : fields) {
        if (f.name == field_name) {
            return &f;
        }
    }
    return nullptr;
}

const char* op_kind_name(OpKind kind) {
    return kind == OpKind::Query ? "query" : "mutation";
}

const OperationDef* SchemaIR::find_operation(OpKind kind, const std::string& name) const {
    const auto& ops = kind == OpKind::Query ? queries : mutations;
    for (const auto& op : ops) {
        if (op.name == name) {
            return &op;
        }
    }
    return nullptr;
}

const ObjectDef* SchemaIR::find_object(const std::string& name) const {
    auto it = objects.find(name);
    return it == objects.end() ? nullptr : &it->second;
}

std::string Node::label() const {
    return std::string(op_kind_name(kind)) + " " + name;
}

NodeSet enumerate_nodes(const SchemaIR& ir) {
    NodeSet nodes;
    for (const auto& q : ir.queries) {
        nodes.insert({OpKind::Query, q.name});
    }
    for (const auto& m : ir.mutations) {
        nodes.insert({OpKind::Mutation, m.name});
    }
    return nodes;
}

namespace {

// Single-quoted YAML scalar; safe for type strings that start with '['.
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

void emit_args(std::ostringstream& out, const std::vector<ArgDef>& args, const char* indent) {
    if (args.empty()) {
        out << indent << "args: []\n";
        return;
    }
    out << indent << "args:\n";
    for (const auto& a : args) {
        out << indent << "  - name: " << a.name << "\n";
        out << indent << "    type: " << yaml_quote(a.type.to_string()) << "\n";
        out << indent << "    nullable: " << (a.nullable ? "true" : "false") << "\n";
        if (a.default_value) {
            out << indent << "    default: " << yaml_quote(*a.default_value) << "\n";
        }
    }
}

std::string emit_operations(const char* key, const std::vector<OperationDef>& ops) {
    std::ostringstream out;
    if (ops.empty()) {
        out << key << ": []\n";
        return out.str();
    }
    out << key << ":\n";
    for (const auto& op : ops) {
        out << "  - name: " << op.name << "\n";
        emit_args(out, op.args, "    ");
        out << "    returns: " << yaml_quote(op.return_type.to_string()) << "\n";
    }
    return out.str();
}

std::vector<ArgDef> parse_args(const YAML::Node& node) {
    std::vector<ArgDef> args;
    if (!node || !node.IsSequence()) {
        return args;
    }
    for (const auto& a : node) {
        ArgDef def;
        def.name = a["name"].as<std::string>();
        def.type = TypeRef::parse(a["type"].as<std::string>());
        def.nullable = a["nullable"] ? a["nullable"].as<bool>() : true;
        if (a["default"]) {
            def.default_value = a["default"].as<std::string>();
        }
        args.push_back(std::move(def));
    }
    return args;
}

std::vector<OperationDef> parse_operations(const std::string& doc, const char* key, OpKind kind) {
    YAML::Node root;
    try {
        root = YAML::Load(doc);
    } catch (const YAML::Exception& e) {
        throw MalformedSchemaError(std::string("bad YAML in ") + key + " document: " + e.what());
    }
    std::vector<OperationDef> ops;
    const auto seq = root[key];
    if (!seq) {
        throw MalformedSchemaError(std::string("missing top-level '") + key + "' key");
    }
    if (seq.IsNull()) {
        return ops;
    }
    for (const auto& entry : seq) {
        OperationDef op;
        op.kind = kind;
        op.name = entry["name"].as<std::string>();
        op.args = parse_args(entry["args"]);
        op.return_type = TypeRef::parse(entry["returns"].as<std::string>());
        ops.push_back(std::move(op));
    }
    return ops;
}

} // namespace

SchemaYamlDocs serialize_schema_yaml(const SchemaIR& ir) {
    SchemaYamlDocs docs;
    docs.queries_doc = emit_operations("queries", ir.queries);
    docs.mutations_doc = emit_operations("mutations", ir.mutations);

    std::ostringstream types;
    if (ir.enums.empty()) {
        types << "enums: {}\n";
    } else {
        types << "enums:\n";
        for (const auto& [name, values] : ir.enums) {
            types << "  " << name << ":\n";
            for (const auto& v : values) {
                types << "    - " << v << "\n";
            }
        }
    }
    if (ir.objects.empty()) {
        types << "objects: {}\n";
    } else {
        types << "objects:\n";
        for (const auto& [name, obj] : ir.objects) {
            types << "  " << name << ":\n";
            if (obj.fields.empty()) {
                types << "    fields: []\n";
                continue;
            }
            types << "    fields:\n";
            for (const auto& f : obj.fields) {
                types << "      - name: " << f.name << "\n";
                if (!f.args.empty()) {
                    emit_args(types, f.args, "        ");
                }
                types << "        type: " << yaml_quote(f.type.to_string()) << "\n";
            }
        }
    }
    if (ir.scalars.empty()) {
        types << "scalars: []\n";
    } else {
        types << "scalars:\n";
        for (const auto& s : ir.scalars) {
            types << "  - " << s << "\n";
        }
    }
    docs.types_doc = types.str();
    return docs;
}

SchemaIR schema_ir_from_yaml(const SchemaYamlDocs& docs) {
    SchemaIR ir;
    ir.queries = parse_operations(docs.queries_doc, "queries", OpKind::Query);
    ir.mutations = parse_operations(docs.mutations_doc, "mutations", OpKind::Mutation);

    YAML::Node root;
    try {
        root = YAML::Load(docs.types_doc);
    } catch (const YAML::Exception& e) {
        throw MalformedSchemaError(std::string("bad YAML in types document: ") + e.what());
    }
    const auto enums = root["enums"];
    if (enums && enums.IsMap()) {
        for (const auto& entry : enums) {
            std::vector<std::string> values;
            for (const auto& v : entry.second) {
                values.push_back(v.as<std::string>());
            }
            ir.enums[entry.first.as<std::string>()] = std::move(values);
        }
    }
    const auto objects = root["objects"];
    if (objects && objects.IsMap()) {
        for (const auto& entry : objects) {
            ObjectDef obj;
            obj.name = entry.first.as<std::string>();
            const auto fields = entry.second["fields"];
            if (fields && fields.IsSequence()) {
                for (const auto& f : fields) {
                    FieldDef field;
                    field.name = f["name"].as<std::string>();
                    field.args = parse_args(f["args"]);
                    field.type = TypeRef::parse(f["type"].as<std::string>());
                    obj.fields.push_back(std::move(field));
                }
            }
            ir.objects[obj.name] = std::move(obj);
        }
    }
    const auto scalars = root["scalars"];
    if (scalars && scalars.IsSequence()) {
        for (const auto& s : scalars) {
            ir.scalars.insert(s.as<std::string>());
        }
    }
    return ir;
}

} // namespace prediql
