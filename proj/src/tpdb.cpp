#include "lposat/tpdb.hpp"

#include <cctype>
#include <set>

namespace lposat {

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line(line), column(column) {}

UnsupportedSection::UnsupportedSection(std::string section, int line, int column)
    : ParseError("unsupported section " + section, line, column),
      section(std::move(section)) {}

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' ||
           c == '-' || c == '*' || c == '/' || c == '\'' || c == '_';
}

struct Token {
    enum Kind { LParen, RParen, Comma, Arrow, Ident, End } kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        int line = line_, col = col_;
        if (pos_ >= text_.size())
            return {Token::End, "", line, col};
        char c = text_[pos_];
        if (c == '(') { advance(); return {Token::LParen, "(", line, col}; }
        if (c == ')') { advance(); return {Token::RParen, ")", line, col}; }
        if (c == ',') { advance(); return {Token::Comma, ",", line, col}; }
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            advance(); advance();
            return {Token::Arrow, "->", line, col};
        }
        if (is_ident_char(c)) {
            std::string ident;
            // "->" terminates an identifier even though '-' is an
            // identifier character, so "a->b" lexes as three tokens.
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
                if (text_[pos_] == '-' && pos_ + 1 < text_.size() &&
                    text_[pos_ + 1] == '>')
                    break;
                ident.push_back(text_[pos_]);
                advance();
            }
            return {Token::Ident, std::move(ident), line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line, col);
    }

    // Consumes raw text up to the ')' matching an already-consumed '('.
    // Used to skip COMMENT and similar sections whose content is free-form.
    void skip_balanced(int line, int col) {
        int depth = 1;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            advance();
            if (c == '(') ++depth;
            if (c == ')' && --depth == 0)
                return;
        }
        throw ParseError("unterminated section", line, col);
    }

private:
    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    Trs parse() {
        Trs trs;
        trs.arena = std::make_shared<TermArena>();
        bool saw_rules = false;
        while (tok_.kind != Token::End) {
            expect(Token::LParen, "'('");
            Token name = tok_;
            expect(Token::Ident, "section name");
            if (name.text == "VAR") {
                if (saw_rules)
                    throw ParseError("VAR section after RULES", name.line,
                                     name.column);
                parse_var_block();
            } else if (name.text == "RULES") {
                if (saw_rules)
                    throw ParseError("duplicate RULES section", name.line,
                                     name.column);
                saw_rules = true;
                parse_rules(trs);
            } else if (name.text == "THEORY" || name.text == "STRATEGY") {
                throw UnsupportedSection(name.text, name.line, name.column);
            } else {
                // COMMENT, PROOF, ... : skip without interpreting.
                lexer_.skip_balanced(name.line, name.column);
                shift();
                continue;
            }
            expect(Token::RParen, "')'");
        }
        if (!saw_rules)
            throw ParseError("missing RULES section", tok_.line, tok_.column);
        return trs;
    }

private:
    void shift() { tok_ = lexer_.next(); }

    void expect(Token::Kind kind, const char *what) {
        if (tok_.kind != kind)
            throw ParseError(std::string("expected ") + what + " before '" +
                                 (tok_.kind == Token::End ? "<eof>" : tok_.text) +
                                 "'",
                             tok_.line, tok_.column);
        shift();
    }

    void parse_var_block() {
        while (tok_.kind == Token::Ident) {
            variables_.insert(tok_.text);
            shift();
        }
    }

    void parse_rules(Trs &trs) {
        while (tok_.kind != Token::RParen && tok_.kind != Token::End) {
            Token at = tok_;
            const Term *lhs = parse_term(trs);
            expect(Token::Arrow, "'->'");
            const Term *rhs = parse_term(trs);
            std::set<std::string> bound = term_vars(lhs);
            for (const std::string &v : term_vars(rhs)) {
                if (!bound.count(v))
                    throw ParseError("right-hand side variable " + v +
                                         " not bound on the left",
                                     at.line, at.column);
            }
            trs.rules.push_back(Rule{lhs, rhs});
        }
    }

    const Term *parse_term(Trs &trs) {
        Token head = tok_;
        expect(Token::Ident, "term");
        if (variables_.count(head.text)) {
            if (tok_.kind == Token::LParen)
                throw ParseError("variable " + head.text + " used with arguments",
                                 tok_.line, tok_.column);
            return trs.arena->variable(head.text);
        }
        std::vector<const Term *> args;
        if (tok_.kind == Token::LParen) {
            shift();
            if (tok_.kind != Token::RParen) {
                args.push_back(parse_term(trs));
                while (tok_.kind == Token::Comma) {
                    shift();
                    args.push_back(parse_term(trs));
                }
            }
            expect(Token::RParen, "')'");
        }
        int arity = static_cast<int>(args.size());
        auto [it, inserted] = trs.signature.emplace(head.text, arity);
        if (!inserted && it->second != arity)
            throw ParseError("symbol " + head.text + " used with arity " +
                                 std::to_string(arity) + " but declared with " +
                                 std::to_string(it->second),
                             head.line, head.column);
        return trs.arena->app(head.text, std::move(args));
    }

    Lexer lexer_;
    Token tok_;
    std::set<std::string> variables_;
};

} // namespace

Trs parse_trs(std::string_view text) {
    return Parser(text).parse();
}

} // namespace lposat
