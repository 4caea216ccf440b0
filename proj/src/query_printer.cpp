#include "prediql/query_ast.hpp"

#include <sstream>

namespace prediql {

namespace {

void print_string_escaped(std::ostringstream& out, const std::string& s) {
    out << '"';
    for (char c : s) {
        switch (c) {
        case '"': out << "\\\""; break;
        case '\\': out << "\\\\"; break;
        case '\n': out << "\\n"; break;
        case '\r': out << "\\r"; break;
        case '\t': out << "\\t"; break;
        case '\b': out << "\\b"; break;
        case '\f': out << "\\f"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                static const char* hex = "0123456789abcdef";
                out << "\\u00" << hex[(c >> 4) & 0xF] << hex[c & 0xF];
            } else {
                out << c;
            }
        }
    }
    out << '"';
}

void print_value_to(std::ostringstream& out, const Value& v) {
    switch (v.kind) {
    case ValueKind::Int:
    case ValueKind::Float:
    case ValueKind::Enum:
        out << v.scalar;
        break;
    case ValueKind::String:
        print_string_escaped(out, v.scalar);
        break;
    case ValueKind::Boolean:
        out << (v.boolean ? "true" : "false");
        break;
    case ValueKind::Null:
        out << "null";
        break;
    case ValueKind::Variable:
        out << '$' << v.scalar;
        break;
    case ValueKind::List: {
        out << '[';
        bool first = true;
        for (const auto& item : v.list) {
            if (!first) {
                out << ", ";
            }
            first = false;
            print_value_to(out, item);
        }
        out << ']';
        break;
    }
    case ValueKind::Object: {
        out << '{';
        bool first = true;
        for (const auto& [key, val] : v.object) {
            if (!first) {
                out << ", ";
            }
            first = false;
            out << key << ": ";
            print_value_to(out, val);
        }
        out << '}';
        break;
    }
    }
}

void print_field(std::ostringstream& out, const FieldNode& f) {
    if (!f.alias.empty()) {
        out << f.alias << ": ";
    }
    out << f.name;
    if (!f.args.empty()) {
        out << '(';
        bool first = true;
        for (const auto& a : f.args) {
            if (!first) {
                out << ", ";
            }
            first = false;
            out << a.name << ": ";
            print_value_to(out, a.value);
        }
        out << ')';
    }
    if (!f.selections.empty()) {
        out << " { ";
        bool first = true;
        for (const auto& sub : f.selections) {
            if (!first) {
                out << ' ';
            }
            first = false;
            print_field(out, sub);
        }
        out << " }";
    }
}

} // namespace

std::string print_value(const Value& v) {
    std::ostringstream out;
    print_value_to(out, v);
    return out.str();
}

std::string print_query(const QueryAST& ast) {
    std::ostringstream out;
    out << op_kind_name(ast.kind);
    if (!ast.name.empty()) {
        out << ' ' << ast.name;
    }
    if (!ast.variables.empty()) {
        out << '(';
        bool first = true;
        for (const auto& var : ast.variables) {
            if (!first) {
                out << ", ";
            }
            first = false;
            out << '$' << var.name << ": " << var.type.to_string();
            if (var.default_value) {
                out << " = ";
                print_value_to(out, *var.default_value);
            }
        }
        out << ')';
    }
    out << " { ";
    bool first = true;
    for (const auto& f : ast.selections) {
        if (!first) {
            out << ' ';
        }
        first = false;
        print_field(out, f);
    }
    out << " }";
    return out.str();
}

namespace {

int subselection_depth(const std::vector<FieldNode>& selections) {
    int best = 0;
    for (const auto& f : selections) {
        if (!f.selections.empty()) {
            best = std::max(best, 1 + subselection_depth(f.selections));
        }
    }
    return best;
}

} // namespace

int measured_depth(const QueryAST& ast) {
    return std::max(1, subselection_depth(ast.selections));
}

} // namespace prediql
