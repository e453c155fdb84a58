#include "refdiff/code_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string_view>
#include <unordered_set>

namespace refdiff {

const char* to_string(Visibility v) {
    switch (v) {
    case Visibility::Public: return "public";
    case Visibility::Protected: return "protected";
    case Visibility::Private: return "private";
    case Visibility::Package: return "package";
    }
    return "package";
}

const char* to_string(EntityKind k) {
    switch (k) {
    case EntityKind::Package: return "package";
    case EntityKind::Class: return "class";
    case EntityKind::Interface: return "interface";
    case EntityKind::Method: return "method";
    case EntityKind::Field: return "field";
    case EntityKind::Parameter: return "parameter";
    }
    return "package";
}

namespace {

struct Token {
    enum class Kind { Ident, Number, String, Char, Punct, Opaque };
    Kind kind;
    std::string text;
    std::size_t offset = 0;
    std::size_t end = 0;
    int line = 1;
};

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$'; }
bool is_ident_part(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$'; }

// Multi-character operators, longest first.
constexpr std::array<std::string_view, 27> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "==", "!=", "<=", ">=", "&&", "||",
    "++",   "--",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "->",
    "::",   "<<",  ">>",  "//",  "/*",
};

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    void bump(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos < text.size(); ++i) {
            if (text[pos] == '\n') ++line;
            ++pos;
        }
    }

    bool skip_trivia() {
        bool progressed = false;
        while (pos < text.size()) {
            unsigned char c = text[pos];
            if (std::isspace(c)) {
                bump();
                progressed = true;
            } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                while (pos < text.size() && text[pos] != '\n') bump();
                progressed = true;
            } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '*') {
                bump(2);
                while (pos + 1 < text.size() && !(text[pos] == '*' && text[pos + 1] == '/')) bump();
                bump(2);
                progressed = true;
            } else {
                break;
            }
        }
        return progressed;
    }

    std::optional<Token> next() {
        skip_trivia();
        if (pos >= text.size()) return std::nullopt;
        Token tok;
        tok.offset = pos;
        tok.line = line;
        unsigned char c = text[pos];
        if (is_ident_start(c)) {
            tok.kind = Token::Kind::Ident;
            while (pos < text.size() && is_ident_part(text[pos])) bump();
        } else if (std::isdigit(c)) {
            tok.kind = Token::Kind::Number;
            char prev = 0;
            while (pos < text.size()) {
                char d = text[pos];
                bool num_part = std::isalnum(static_cast<unsigned char>(d)) || d == '.' || d == '_';
                bool exp_sign = (d == '+' || d == '-') && (prev == 'e' || prev == 'E');
                if (!num_part && !exp_sign) break;
                prev = d;
                bump();
            }
        } else if (c == '"') {
            tok.kind = Token::Kind::String;
            bump();
            while (pos < text.size() && text[pos] != '"' && text[pos] != '\n') {
                if (text[pos] == '\\' && pos + 1 < text.size()) bump();
                bump();
            }
            if (pos < text.size() && text[pos] == '"') bump();
        } else if (c == '\'') {
            tok.kind = Token::Kind::Char;
            bump();
            while (pos < text.size() && text[pos] != '\'' && text[pos] != '\n') {
                if (text[pos] == '\\' && pos + 1 < text.size()) bump();
                bump();
            }
            if (pos < text.size() && text[pos] == '\'') bump();
        } else if (std::ispunct(c)) {
            tok.kind = Token::Kind::Punct;
            bool matched = false;
            for (auto op : kOperators) {
                if (op == "//" || op == "/*") continue;
                if (text.compare(pos, op.size(), op) == 0) {
                    bump(op.size());
                    matched = true;
                    break;
                }
            }
            if (!matched) bump();
        } else {
            tok.kind = Token::Kind::Opaque;
            bump();
        }
        tok.end = pos;
        tok.text = text.substr(tok.offset, tok.end - tok.offset);
        return tok;
    }
};

std::vector<Token> lex_all(const std::string& text) {
    Lexer lx(text);
    std::vector<Token> out;
    while (auto t = lx.next()) out.push_back(std::move(*t));
    return out;
}

bool valid_utf8(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = s[i];
        std::size_t extra;
        if (c < 0x80) extra = 0;
        else if ((c >> 5) == 0x6) extra = 1;
        else if ((c >> 4) == 0xe) extra = 2;
        else if ((c >> 3) == 0x1e) extra = 3;
        else return false;
        for (std::size_t k = 1; k <= extra; ++k) {
            if (i + k >= s.size() || (static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
        }
        i += extra + 1;
    }
    return true;
}

const std::unordered_set<std::string>& modifier_words() {
    static const std::unordered_set<std::string> words = {
        "public", "protected", "private",  "static",    "final",
        "abstract", "synchronized", "native", "transient", "volatile",
        "strictfp", "default",
    };
    return words;
}

// Recursive-descent parser over the token stream. Grammar covers packages,
// imports, classes/interfaces with extends/implements, fields, and methods
// with typed parameters; everything inside method braces is kept as raw
// token ranges and normalized separately.
struct Parser {
    const std::string& text;
    const std::string& path;
    const std::vector<Token>& toks;
    std::size_t pos = 0;

    Parser(const std::string& t, const std::string& p, const std::vector<Token>& tk)
        : text(t), path(p), toks(tk) {}

    [[noreturn]] void fail(const std::string& what) const {
        int line = pos < toks.size() ? toks[pos].line : (toks.empty() ? 1 : toks.back().line);
        throw MalformedSource(path, line, what);
    }

    bool at_end() const { return pos >= toks.size(); }
    const Token& peek(std::size_t ahead = 0) const {
        static const Token eof{Token::Kind::Punct, "", 0, 0, 0};
        return pos + ahead < toks.size() ? toks[pos + ahead] : eof;
    }
    bool peek_is(const std::string& s) const { return !at_end() && toks[pos].text == s; }
    const Token& take() {
        if (at_end()) fail("unexpected end of file");
        return toks[pos++];
    }
    void expect(const std::string& s) {
        if (!peek_is(s)) fail("expected '" + s + "'");
        ++pos;
    }

    // --- small building blocks -------------------------------------------

    std::string take_qualified_ident() {
        if (peek().kind != Token::Kind::Ident) fail("expected identifier");
        std::string name = take().text;
        while (peek_is(".") && peek(1).kind == Token::Kind::Ident) {
            ++pos;
            name += ".";
            name += take().text;
        }
        return name;
    }

    void skip_annotation() {
        // '@' qualified-ident [ '(' ... ')' ]
        ++pos;
        take_qualified_ident();
        if (peek_is("(")) skip_balanced("(", ")");
    }

    void skip_balanced(const std::string& open, const std::string& close) {
        expect(open);
        int depth = 1;
        while (depth > 0) {
            if (at_end()) fail("unbalanced '" + open + "'");
            const std::string& t = take().text;
            if (t == open) ++depth;
            else if (t == close) --depth;
        }
    }

    // Angle-bracket depth delta for generics assembly; shift operators close
    // several levels at once.
    static int angle_delta(const std::string& t) {
        if (t == "<") return 1;
        if (t == ">") return -1;
        if (t == ">>") return -2;
        if (t == ">>>") return -3;
        return 0;
    }

    // A type name: identifier chain with optional generic arguments and
    // array suffixes, joined into a single token string (e.g. List<String>[]).
    std::string take_type_name() {
        std::string out = take_qualified_ident();
        if (peek_is("<")) {
            int depth = 0;
            do {
                const std::string& t = take().text;
                out += t;
                depth += angle_delta(t);
            } while (depth > 0 && !at_end());
            if (depth != 0) fail("unbalanced generic arguments");
        }
        while (peek_is("[") && peek(1).text == "]") {
            out += "[]";
            pos += 2;
        }
        if (peek_is("...")) {
            out += "...";
            ++pos;
        }
        return out;
    }

    struct ModifierSet {
        Visibility visibility = Visibility::Package;
        std::size_t first_token = SIZE_MAX; // index of first modifier/annotation token
    };

    ModifierSet take_modifiers() {
        ModifierSet m;
        for (;;) {
            if (peek_is("@")) {
                if (m.first_token == SIZE_MAX) m.first_token = pos;
                skip_annotation();
                continue;
            }
            if (peek().kind == Token::Kind::Ident && modifier_words().count(peek().text)) {
                if (m.first_token == SIZE_MAX) m.first_token = pos;
                const std::string& w = take().text;
                if (w == "public") m.visibility = Visibility::Public;
                else if (w == "protected") m.visibility = Visibility::Protected;
                else if (w == "private") m.visibility = Visibility::Private;
                continue;
            }
            break;
        }
        if (m.first_token == SIZE_MAX) m.first_token = pos;
        return m;
    }

    // --- declarations -----------------------------------------------------

    std::unique_ptr<CodeEntity> parse_file() {
        auto root = std::make_unique<CodeEntity>();
        root->kind = EntityKind::Package;
        if (peek_is("package")) {
            ++pos;
            root->simple_name = take_qualified_ident();
            expect(";");
        }
        root->qualified_name = root->simple_name;
        root->range.file_path = path;
        root->range.start_line = 1;
        root->range.start_offset = 0;
        root->range.end_offset = text.size();
        root->range.end_line = 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
        if (!text.empty() && text.back() == '\n') --root->range.end_line;
        if (root->range.end_line < 1) root->range.end_line = 1;

        while (!at_end()) {
            if (peek_is("import")) {
                ++pos;
                while (!at_end() && !peek_is(";")) ++pos;
                expect(";");
                continue;
            }
            if (peek_is(";")) {
                ++pos;
                continue;
            }
            root->children.push_back(parse_type_decl(root.get()));
        }
        return root;
    }

    std::unique_ptr<CodeEntity> parse_type_decl(CodeEntity* parent) {
        ModifierSet mods = take_modifiers();
        if (!peek_is("class") && !peek_is("interface"))
            fail("expected class or interface declaration");
        auto ent = std::make_unique<CodeEntity>();
        ent->kind = peek_is("class") ? EntityKind::Class : EntityKind::Interface;
        ++pos;
        std::size_t first = mods.first_token;
        ent->range.file_path = path;
        ent->range.start_offset = toks[first].offset;
        ent->range.start_line = toks[first].line;
        if (peek().kind != Token::Kind::Ident) fail("expected type name");
        ent->simple_name = take().text;
        ent->parent = parent;
        ent->qualified_name = parent->qualified_name.empty()
                                  ? ent->simple_name
                                  : parent->qualified_name + "." + ent->simple_name;
        if (peek_is("<")) {
            int depth = 0;
            do {
                depth += angle_delta(take().text);
            } while (depth > 0 && !at_end());
        }
        if (peek_is("extends")) {
            ++pos;
            ent->super_types.push_back(take_type_name());
            while (peek_is(",")) {  // interfaces may extend several
                ++pos;
                ent->super_types.push_back(take_type_name());
            }
        }
        if (peek_is("implements")) {
            ++pos;
            ent->super_types.push_back(take_type_name());
            while (peek_is(",")) {
                ++pos;
                ent->super_types.push_back(take_type_name());
            }
        }
        expect("{");
        while (!peek_is("}")) {
            if (at_end()) fail("unbalanced '{' in type " + ent->simple_name);
            parse_member(ent.get());
        }
        const Token& close = take();
        ent->range.end_offset = close.end;
        ent->range.end_line = close.line;
        return ent;
    }

    void parse_member(CodeEntity* owner) {
        if (peek_is(";")) {
            ++pos;
            return;
        }
        // class-level initializer block
        if (peek_is("{")) {
            skip_balanced("{", "}");
            return;
        }
        if (peek_is("static") && peek(1).text == "{") {
            ++pos;
            skip_balanced("{", "}");
            return;
        }
        ModifierSet mods = take_modifiers();
        if (peek_is("class") || peek_is("interface")) {
            pos = mods.first_token;
            owner->children.push_back(parse_type_decl(owner));
            return;
        }
        std::size_t first = mods.first_token;
        if (peek().kind != Token::Kind::Ident) {
            skip_unrecognized_member();
            return;
        }
        std::string first_type = take_type_name();
        if (peek_is("(")) {
            // constructor: single identifier directly followed by parameters
            parse_method(owner, mods, first, first_type, "");
            return;
        }
        if (peek().kind != Token::Kind::Ident) {
            skip_unrecognized_member();
            return;
        }
        std::string name = take().text;
        if (peek_is("(")) {
            parse_method(owner, mods, first, name, first_type);
            return;
        }
        parse_field(owner, mods, first, first_type, name);
    }

    // Skips an unrecognized class-level construct up to the next top-level
    // ';' or balanced '{...}' so parsing stays total for class bodies.
    void skip_unrecognized_member() {
        while (!at_end()) {
            if (peek_is(";")) {
                ++pos;
                return;
            }
            if (peek_is("{")) {
                skip_balanced("{", "}");
                return;
            }
            if (peek_is("}")) return;
            ++pos;
        }
    }

    void parse_method(CodeEntity* owner, const ModifierSet& mods, std::size_t first,
                      const std::string& name, const std::string& return_type) {
        auto ent = std::make_unique<CodeEntity>();
        ent->kind = EntityKind::Method;
        ent->simple_name = name;
        ent->parent = owner;
        ent->signature.name = name;
        ent->signature.return_type = return_type;
        ent->signature.visibility = mods.visibility;
        ent->range.file_path = path;
        ent->range.start_offset = toks[first].offset;
        ent->range.start_line = toks[first].line;

        expect("(");
        std::vector<std::unique_ptr<CodeEntity>> params;
        while (!peek_is(")")) {
            if (at_end()) fail("unbalanced '(' in method " + name);
            while (peek_is("@")) skip_annotation();
            if (peek_is("final")) ++pos;
            std::size_t p_first = pos;
            std::string p_type = take_type_name();
            if (peek().kind != Token::Kind::Ident) fail("expected parameter name in " + name);
            const Token& p_name = take();
            auto param = std::make_unique<CodeEntity>();
            param->kind = EntityKind::Parameter;
            param->simple_name = p_name.text;
            param->declared_type = p_type;
            param->range.file_path = path;
            param->range.start_offset = toks[p_first].offset;
            param->range.start_line = toks[p_first].line;
            param->range.end_offset = p_name.end;
            param->range.end_line = p_name.line;
            ent->signature.parameter_types.push_back(p_type);
            ent->signature.parameter_names.push_back(p_name.text);
            params.push_back(std::move(param));
            if (peek_is(",")) ++pos;
            else if (!peek_is(")")) fail("expected ',' or ')' in parameter list of " + name);
        }
        expect(")");
        if (peek_is("throws")) {
            ++pos;
            take_qualified_ident();
            while (peek_is(",")) {
                ++pos;
                take_qualified_ident();
            }
        }
        ent->qualified_name = method_qualified_name(owner->qualified_name, name,
                                                    ent->signature.parameter_types);
        for (auto& p : params) {
            p->parent = ent.get();
            p->qualified_name = ent->qualified_name + "." + p->simple_name;
            ent->children.push_back(std::move(p));
        }
        if (peek_is(";")) {
            const Token& close = take();
            ent->range.end_offset = close.end;
            ent->range.end_line = close.line;
        } else if (peek_is("{")) {
            std::size_t open = pos;
            skip_balanced("{", "}");
            const Token& close = toks[pos - 1];
            ent->range.end_offset = close.end;
            ent->range.end_line = close.line;
            // body text excludes the outer braces
            std::size_t body_begin = toks[open].end;
            std::size_t body_end = close.offset;
            if (body_end > body_begin) {
                std::string body_text = text.substr(body_begin, body_end - body_begin);
                int body_first_line = toks[open].line;
                for (std::size_t i = toks[open].offset; i < body_begin; ++i)
                    if (text[i] == '\n') ++body_first_line;
                ent->body = normalize_body(body_text, body_first_line);
            }
        } else {
            fail("expected method body or ';' after " + name);
        }
        owner->children.push_back(std::move(ent));
    }

    void parse_field(CodeEntity* owner, const ModifierSet& mods, std::size_t first,
                     const std::string& type, const std::string& name) {
        auto ent = std::make_unique<CodeEntity>();
        ent->kind = EntityKind::Field;
        ent->simple_name = name;
        ent->declared_type = type;
        ent->parent = owner;
        ent->qualified_name = owner->qualified_name + "." + name;
        ent->signature.visibility = mods.visibility;
        ent->range.file_path = path;
        ent->range.start_offset = toks[first].offset;
        ent->range.start_line = toks[first].line;
        // swallow initializer (and any extra declarators) up to top-level ';'
        int depth = 0;
        while (!at_end()) {
            const std::string& t = peek().text;
            if (depth == 0 && t == ";") break;
            if (t == "(" || t == "{" || t == "[") ++depth;
            else if (t == ")" || t == "}" || t == "]") --depth;
            ++pos;
        }
        if (at_end()) fail("expected ';' after field " + name);
        const Token& close = take();
        ent->range.end_offset = close.end;
        ent->range.end_line = close.line;
        owner->children.push_back(std::move(ent));
    }
};

} // namespace

std::string method_qualified_name(const std::string& parent_qualified,
                                  const std::string& simple_name,
                                  const std::vector<std::string>& parameter_types) {
    std::string out = parent_qualified.empty() ? simple_name : parent_qualified + "." + simple_name;
    out += "(";
    for (std::size_t i = 0; i < parameter_types.size(); ++i) {
        if (i) out += ",";
        out += parameter_types[i];
    }
    out += ")";
    return out;
}

std::string StatementSeq::to_text() const {
    std::string out;
    for (const auto& st : statements) {
        for (std::size_t i = 0; i < st.tokens.size(); ++i) {
            if (i) out += ' ';
            out += st.tokens[i];
        }
        out += '\n';
    }
    return out;
}

StatementSeq normalize_body(const std::string& text, int first_line) {
    StatementSeq seq;
    std::vector<Token> toks = lex_all(text);
    NormalizedStatement cur;
    int paren_depth = 0;
    auto flush = [&] {
        if (!cur.tokens.empty()) seq.statements.push_back(std::move(cur));
        cur = NormalizedStatement{};
    };
    for (const Token& t : toks) {
        int abs_line = first_line + t.line - 1;
        if (t.text == "}") {
            flush();
            seq.statements.push_back(NormalizedStatement{{"}"}, abs_line, abs_line});
            continue;
        }
        if (cur.tokens.empty()) cur.start_line = abs_line;
        cur.tokens.push_back(t.text);
        cur.end_line = abs_line;
        if (t.text == "(") ++paren_depth;
        else if (t.text == ")") --paren_depth;
        else if (t.text == "{") flush();
        else if (t.text == ";" && paren_depth <= 0) flush();
    }
    flush();
    return seq;
}

std::unique_ptr<CodeEntity> parse_source(const std::string& text, const std::string& path) {
    if (!valid_utf8(text)) throw MalformedSource(path, 1, "invalid UTF-8");

    std::vector<Token> toks = lex_all(text);

    // Whole-file brace balance first so errors point at the offending brace.
    std::vector<const Token*> stack;
    for (const Token& t : toks) {
        if (t.text == "{") stack.push_back(&t);
        else if (t.text == "}") {
            if (stack.empty()) throw MalformedSource(path, t.line, "unmatched '}'");
            stack.pop_back();
        }
    }
    if (!stack.empty())
        throw MalformedSource(path, stack.front()->line, "unclosed '{'");

    Parser parser(text, path, toks);
    return parser.parse_file();
}

void visit_entities(const CodeEntity& root, const std::function<void(const CodeEntity&)>& fn) {
    fn(root);
    for (const auto& c : root.children) visit_entities(*c, fn);
}

} // namespace refdiff
