#include "prediql/errors.hpp"
#include "prediql/query_ast.hpp"

#include <cctype>

namespace prediql {

Value Value::make_int(std::string text) {
    Value v;
    v.kind = ValueKind::Int;
    v.scalar = std::move(text);
    return v;
}
Value Value::make_float(std::string text) {
    Value v;
    v.kind = ValueKind::Float;
    v.scalar = std::move(text);
    return v;
}
Value Value::make_string(std::string text) {
    Value v;
    v.kind = ValueKind::String;
    v.scalar = std::move(text);
    return v;
}
Value Value::make_bool(bool b) {
    Value v;
    v.kind = ValueKind::Boolean;
    v.boolean = b;
    return v;
}
Value Value::make_enum(std::string name) {
    Value v;
    v.kind = ValueKind::Enum;
    v.scalar = std::move(name);
    return v;
}
Value Value::make_null() {
    Value v;
    v.kind = ValueKind::Null;
    return v;
}
Value Value::make_variable(std::string name) {
    Value v;
    v.kind = ValueKind::Variable;
    v.scalar = std::move(name);
    return v;
}

const Argument* FieldNode::find_arg(const std::string& arg_name) const {
    for (const auto& a : args) {
        if (a.name == arg_name) {
            return &a;
        }
    }
    return nullptr;
}

namespace {

enum class TokKind {
    Name,
    Int,
    Float,
    String,
    Punct, // single char: { } ( ) [ ] : = $ , plus "..." never emitted (no fragments)
    End,
};

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(line_, col_, msg); }

    char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    void bump() {
        if (pos_ < src_.size()) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_ignored() {
        for (;;) {
            char c = cur();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',') {
                bump();
            } else if (c == '#') {
                while (cur() != '\0' && cur() != '\n') {
                    bump();
                }
            } else {
                break;
            }
        }
    }

    void advance() {
        skip_ignored();
        tok_.line = line_;
        tok_.column = col_;
        char c = cur();
        if (c == '\0') {
            tok_ = {TokKind::End, "", line_, col_};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_') {
                name += cur();
                bump();
            }
            tok_ = {TokKind::Name, std::move(name), tok_.line, tok_.column};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            lex_number();
            return;
        }
        if (c == '"') {
            lex_string();
            return;
        }
        static const std::string puncts = "{}()[]:=$!";
        if (puncts.find(c) != std::string::npos) {
            tok_ = {TokKind::Punct, std::string(1, c), tok_.line, tok_.column};
            bump();
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void lex_number() {
        std::string text;
        bool is_float = false;
        if (cur() == '-') {
            text += cur();
            bump();
        }
        if (!std::isdigit(static_cast<unsigned char>(cur()))) {
            fail("malformed number");
        }
        while (std::isdigit(static_cast<unsigned char>(cur()))) {
            text += cur();
            bump();
        }
        if (cur() == '.') {
            is_float = true;
            text += cur();
            bump();
            if (!std::isdigit(static_cast<unsigned char>(cur()))) {
                fail("malformed float: digits required after '.'");
            }
            while (std::isdigit(static_cast<unsigned char>(cur()))) {
                text += cur();
                bump();
            }
        }
        if (cur() == 'e' || cur() == 'E') {
            is_float = true;
            text += cur();
            bump();
            if (cur() == '+' || cur() == '-') {
                text += cur();
                bump();
            }
            if (!std::isdigit(static_cast<unsigned char>(cur()))) {
                fail("malformed float: digits required in exponent");
            }
            while (std::isdigit(static_cast<unsigned char>(cur()))) {
                text += cur();
                bump();
            }
        }
        tok_ = {is_float ? TokKind::Float : TokKind::Int, std::move(text), tok_.line, tok_.column};
    }

    void lex_string() {
        bump(); // opening quote
        std::string text;
        for (;;) {
            char c = cur();
            if (c == '\0' || c == '\n') {
                fail("unterminated string");
            }
            if (c == '"') {
                bump();
                break;
            }
            if (c == '\\') {
                bump();
                char esc = cur();
                switch (esc) {
                case '"': text += '"'; break;
                case '\\': text += '\\'; break;
                case '/': text += '/'; break;
                case 'b': text += '\b'; break;
                case 'f': text += '\f'; break;
                case 'n': text += '\n'; break;
                case 'r': text += '\r'; break;
                case 't': text += '\t'; break;
                case 'u': {
                    unsigned code = 0;
                    for (int i = 0; i < 4; ++i) {
                        bump();
                        char h = cur();
                        if (!std::isxdigit(static_cast<unsigned char>(h))) {
                            fail("malformed \\u escape");
                        }
                        code = code * 16 +
                               (std::isdigit(static_cast<unsigned char>(h))
                                    ? static_cast<unsigned>(h - '0')
                                    : static_cast<unsigned>(std::tolower(h) - 'a') + 10u);
                    }
                    // UTF-8 encode (BMP only; surrogate pairs out of scope).
                    if (code < 0x80) {
                        text += static_cast<char>(code);
                    } else if (code < 0x800) {
                        text += static_cast<char>(0xC0 | (code >> 6));
                        text += static_cast<char>(0x80 | (code & 0x3F));
                    } else {
                        text += static_cast<char>(0xE0 | (code >> 12));
                        text += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                        text += static_cast<char>(0x80 | (code & 0x3F));
                    }
                    break;
                }
                default:
                    fail("unknown escape sequence");
                }
                bump();
            } else {
                text += c;
                bump();
            }
        }
        tok_ = {TokKind::String, std::move(text), tok_.line, tok_.column};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    QueryAST parse_document() {
        QueryAST ast = parse_operation();
        const Token& t = lex_.peek();
        if (t.kind != TokKind::End) {
            throw SyntaxError(t.line, t.column, "expected end of document after operation");
        }
        return ast;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw SyntaxError(t.line, t.column, msg);
    }

    bool at_punct(const char* p) const {
        return lex_.peek().kind == TokKind::Punct && lex_.peek().text == p;
    }

    Token expect_punct(const char* p) {
        if (!at_punct(p)) {
            fail(lex_.peek(), std::string("expected '") + p + "'");
        }
        return lex_.take();
    }

    Token expect_name() {
        if (lex_.peek().kind != TokKind::Name) {
            fail(lex_.peek(), "expected a name");
        }
        return lex_.take();
    }

    QueryAST parse_operation() {
        QueryAST ast;
        const Token& t = lex_.peek();
        if (t.kind == TokKind::Name) {
            if (t.text == "query") {
                ast.kind = OpKind::Query;
            } else if (t.text == "mutation") {
                ast.kind = OpKind::Mutation;
            } else if (t.text == "subscription") {
                fail(t, "subscriptions are not supported");
            } else {
                fail(t, "expected 'query', 'mutation', or '{'");
            }
            lex_.take();
            if (lex_.peek().kind == TokKind::Name) {
                ast.name = lex_.take().text;
            }
            if (at_punct("(")) {
                ast.variables = parse_variable_defs();
            }
        } else if (!at_punct("{")) {
            fail(t, "expected 'query', 'mutation', or '{'");
        }
        ast.selections = parse_selection_set();
        return ast;
    }

    std::vector<VariableDef> parse_variable_defs() {
        expect_punct("(");
        std::vector<VariableDef> defs;
        while (!at_punct(")")) {
            expect_punct("$");
            VariableDef def;
            def.name = expect_name().text;
            expect_punct(":");
            def.type = parse_type_ref();
            if (at_punct("=")) {
                lex_.take();
                def.default_value = parse_value();
            }
            defs.push_back(std::move(def));
        }
        lex_.take(); // ')'
        if (defs.empty()) {
            fail(lex_.peek(), "empty variable definition list");
        }
        return defs;
    }

    TypeRef parse_type_ref() {
        // Type syntax mirrors schema references: Name, [Type], trailing '!'.
        std::string text;
        int depth = 0;
        const Token start = lex_.peek();
        for (;;) {
            if (at_punct("[")) {
                text += lex_.take().text;
                ++depth;
            } else {
                break;
            }
        }
        if (lex_.peek().kind != TokKind::Name) {
            fail(lex_.peek(), "expected a type name");
        }
        text += lex_.take().text;
        if (at_punct("!")) {
            text += lex_.take().text;
        }
        for (; depth > 0; --depth) {
            if (!at_punct("]")) {
                fail(lex_.peek(), "expected ']' in type");
            }
            text += lex_.take().text;
            if (at_punct("!")) {
                text += lex_.take().text;
            }
        }
        try {
            return TypeRef::parse(text);
        } catch (const MalformedSchemaError& e) {
            fail(start, e.what());
        }
    }

    std::vector<FieldNode> parse_selection_set() {
        expect_punct("{");
        std::vector<FieldNode> fields;
        while (!at_punct("}")) {
            if (lex_.peek().kind == TokKind::End) {
                fail(lex_.peek(), "unclosed selection set: expected '}'");
            }
            fields.push_back(parse_field());
        }
        lex_.take(); // '}'
        if (fields.empty()) {
            fail(lex_.peek(), "empty selection set");
        }
        return fields;
    }

    FieldNode parse_field() {
        FieldNode field;
        Token first = expect_name();
        if (at_punct(":")) {
            lex_.take();
            field.alias = first.text;
            field.name = expect_name().text;
        } else {
            field.name = first.text;
        }
        if (at_punct("(")) {
            lex_.take();
            while (!at_punct(")")) {
                Argument arg;
                arg.name = expect_name().text;
                expect_punct(":");
                arg.value = parse_value();
                field.args.push_back(std::move(arg));
            }
            lex_.take(); // ')'
            if (field.args.empty()) {
                fail(lex_.peek(), "empty argument list");
            }
        }
        if (at_punct("{")) {
            field.selections = parse_selection_set();
        }
        return field;
    }

    Value parse_value() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case TokKind::Int:
            return Value::make_int(lex_.take().text);
        case TokKind::Float:
            return Value::make_float(lex_.take().text);
        case TokKind::String:
            return Value::make_string(lex_.take().text);
        case TokKind::Name: {
            Token name = lex_.take();
            if (name.text == "true") {
                return Value::make_bool(true);
            }
            if (name.text == "false") {
                return Value::make_bool(false);
            }
            if (name.text == "null") {
                return Value::make_null();
            }
            return Value::make_enum(name.text);
        }
        case TokKind::Punct:
            if (t.text == "$") {
                lex_.take();
                return Value::make_variable(expect_name().text);
            }
            if (t.text == "[") {
                lex_.take();
                Value v;
                v.kind = ValueKind::List;
                while (!at_punct("]")) {
                    v.list.push_back(parse_value());
                }
                lex_.take();
                return v;
            }
            if (t.text == "{") {
                lex_.take();
                Value v;
                v.kind = ValueKind::Object;
                while (!at_punct("}")) {
                    std::string key = expect_name().text;
                    expect_punct(":");
                    v.object.emplace_back(std::move(key), parse_value());
                }
                lex_.take();
                return v;
            }
            fail(t, "expected a value");
        default:
            fail(t, "expected a value");
        }
    }

    Lexer lex_;
};

} // namespace

QueryAST parse_query(std::string_view text) {
    bool blank = true;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            blank = false;
            break;
        }
    }
    if (blank) {
        throw SyntaxError(1, 1, "empty document");
    }
    return Parser(text).parse_document();
}

} // namespace prediql
