#include <cctype>

#include "ifol/error.hpp"
#include "ifol/syntax.hpp"

namespace ifol::syntax {

namespace {

enum class Tok {
    Ident,
    Number,
    QVar,
    LParen,
    RParen,
    Comma,
    Open,    // <<
    Close,   // >>
    Sub,     // _
    Sup,     // ^
    LBrace,
    RBrace,
    And,     // /\ (followed by {)
    Tilde,
    Equals,
    Arrow,   // =>
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

/// Keeps the error type of an ill-formed node and adds where it was written.
ConstructionError positioned(const ConstructionError& e, const Token& at) {
    return ConstructionError(std::string(e.what()) + " at " + std::to_string(at.line) + ":" +
                             std::to_string(at.column));
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            const int l = line_, c = col_;
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", l, c});
                return out;
            }
            const char ch = src_[pos_];
            auto single = [&](Tok k) {
                advance();
                out.push_back({k, std::string(1, ch), l, c});
            };
            if (ch == '?') {
                advance();
                std::string name = ident_chars();
                if (name.empty()) throw SyntaxError("expected variable name after '?'", l, c);
                out.push_back({Tok::QVar, name, l, c});
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || (ch == '_' && peek(1) != '{')) {
                out.push_back({Tok::Ident, ident_chars(), l, c});
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::string num;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    num += src_[pos_];
                    advance();
                }
                out.push_back({Tok::Number, num, l, c});
            } else if (ch == '<' && peek(1) == '<') {
                advance(), advance();
                out.push_back({Tok::Open, "<<", l, c});
            } else if (ch == '>' && peek(1) == '>') {
                advance(), advance();
                out.push_back({Tok::Close, ">>", l, c});
            } else if (ch == '/' && peek(1) == '\\') {
                advance(), advance();
                out.push_back({Tok::And, "/\\", l, c});
            } else if (ch == '=' && peek(1) == '>') {
                advance(), advance();
                out.push_back({Tok::Arrow, "=>", l, c});
            } else if (ch == '_') {
                single(Tok::Sub);
            } else if (ch == '^') {
                single(Tok::Sup);
            } else if (ch == '(') {
                single(Tok::LParen);
            } else if (ch == ')') {
                single(Tok::RParen);
            } else if (ch == ',') {
                single(Tok::Comma);
            } else if (ch == '{') {
                single(Tok::LBrace);
            } else if (ch == '}') {
                single(Tok::RBrace);
            } else if (ch == '~') {
                single(Tok::Tilde);
            } else if (ch == '=') {
                single(Tok::Equals);
            } else {
                throw SyntaxError(std::string("unexpected character '") + ch + "'", l, c);
            }
        }
    }

private:
    char peek(std::size_t ahead) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    std::string ident_chars() {
        std::string s;
        while (pos_ < src_.size()) {
            const char ch = src_[pos_];
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) break;
            if (ch == '_' && peek(1) == '{') break;
            s += ch;
            advance();
        }
        return s;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::string_view text, const Signature* sig) : toks_(Lexer(text).run()), sig_(sig) {}

    Formula formula() {
        Formula f = unary();
        while (at(Tok::And)) {
            next();
            JoinPairs pairs = join_pairs();
            const Token& where = cur();
            Formula rhs = unary();
            try {
                f = Formula::conj(std::move(f), std::move(rhs), std::move(pairs));
            } catch (const ConstructionError& e) {
                throw positioned(e, where);
            }
        }
        return f;
    }

    Term term() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::QVar: next(); return Term::var(t.text);
            case Tok::Number: next(); return Term::constant(t.text);
            case Tok::Ident: {
                if (auto tense = parse_tense(t.text)) {
                    next();
                    return Term(*tense);
                }
                if (peek().kind == Tok::LParen) fail("function symbols are not terms", t);
                next();
                return Term::constant(t.text);
            }
            case Tok::Open: return Term(abstraction());
            default: fail("expected a term", t);
        }
    }

    AbstractionPtr abstraction() {
        const Token& start = expect(Tok::Open, "'<<'");
        Formula body = formula();
        expect(Tok::Close, "'>>'");
        std::vector<Variable> alpha, beta;
        if (at(Tok::Sub)) {
            next();
            alpha = var_list();
        }
        if (at(Tok::Sup)) {
            next();
            beta = var_list();
        }
        try {
            return build_abstraction(std::move(body), std::move(alpha), std::move(beta));
        } catch (const ConstructionError& e) {
            throw positioned(e, start);
        }
    }

    bool at(Tok k) const { return cur().kind == k; }
    const Token& cur() const { return toks_[pos_]; }

    void expect_end() {
        if (!at(Tok::End)) fail("unexpected '" + cur().text + "'", cur());
    }

    const Token& expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what, cur());
        return next();
    }

private:
    const Token& peek() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw SyntaxError(msg, t.line, t.column);
    }

    int number() {
        const Token& t = expect(Tok::Number, "a number");
        return std::stoi(t.text);
    }

    // A bare /\ joins nothing.
    JoinPairs join_pairs() {
        if (!at(Tok::LBrace)) return {};
        next();
        JoinPairs pairs;
        if (!at(Tok::RBrace)) {
            for (;;) {
                expect(Tok::LParen, "'('");
                const int i = number();
                expect(Tok::Comma, "','");
                const int j = number();
                expect(Tok::RParen, "')'");
                pairs.emplace_back(i, j);
                if (!at(Tok::Comma)) break;
                next();
            }
        }
        expect(Tok::RBrace, "'}'");
        return pairs;
    }

    std::vector<Variable> var_list() {
        expect(Tok::LBrace, "'{'");
        std::vector<Variable> vars;
        while (at(Tok::Ident) || at(Tok::QVar)) vars.push_back({next().text});
        expect(Tok::RBrace, "'}'");
        return vars;
    }

    Formula unary() {
        const Token& t = cur();
        if (at(Tok::Tilde)) {
            next();
            return Formula::neg(unary());
        }
        if (at(Tok::Ident) && t.text == "E" && peek().kind == Tok::LBrace) {
            next();
            next();
            const int n = number();
            expect(Tok::RBrace, "'}'");
            Formula body = unary();
            try {
                return Formula::exists(n, std::move(body));
            } catch (const ConstructionError& e) {
                throw positioned(e, t);
            }
        }
        return primary();
    }

    Formula primary() {
        const Token& t = cur();
        if (at(Tok::LParen)) {
            next();
            Formula f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (at(Tok::Ident) && t.text == "Top" && peek().kind != Tok::Equals) {
            next();
            return Formula::top();
        }
        if (at(Tok::Ident) && !parse_tense(t.text) && peek().kind != Tok::Equals) return atom();
        Term left = term();
        expect(Tok::Equals, "'='");
        Term right = term();
        return Formula::identity(std::move(left), std::move(right));
    }

    Formula atom() {
        const Token& name = next();
        std::vector<Term> args;
        if (at(Tok::LParen)) {
            next();
            if (!at(Tok::RParen)) {
                for (;;) {
                    args.push_back(term());
                    if (!at(Tok::Comma)) break;
                    next();
                }
            }
            expect(Tok::RParen, "')'");
        }
        Predicate pred{name.text, static_cast<int>(args.size())};
        if (sig_ && !sig_->declared(pred)) {
            const std::string msg = sig_->knows_name(pred.name)
                                        ? "arity mismatch: " + pred.str() + " is not declared"
                                        : "undeclared predicate " + pred.name;
            throw SignatureError(msg + " at " + std::to_string(name.line) + ":" + std::to_string(name.column));
        }
        return Formula::atom(std::move(pred), std::move(args));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Signature* sig_;
};

std::string join_vars(const std::vector<Variable>& vars) {
    std::string s;
    for (const auto& v : vars) {
        if (!s.empty()) s += ' ';
        s += v.name;
    }
    return s;
}

std::string unary_text(const Formula& f) {
    const std::string s = serialize(f);
    return f.kind() == FormulaKind::Conj ? "(" + s + ")" : s;
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature* sig) {
    Parser p(text, sig);
    Formula f = p.formula();
    p.expect_end();
    return f;
}

Term parse_term(std::string_view text, const Signature* sig) {
    Parser p(text, sig);
    Term t = p.term();
    p.expect_end();
    return t;
}

AbstractionPtr parse_abstraction(std::string_view text, const Signature* sig) {
    Parser p(text, sig);
    AbstractionPtr a = p.abstraction();
    p.expect_end();
    return a;
}

std::pair<Formula, Formula> parse_rule(std::string_view text, const Signature* sig) {
    Parser p(text, sig);
    Formula lhs = p.formula();
    p.expect(Tok::Arrow, "'=>'");
    Formula rhs = p.formula();
    p.expect_end();
    return {std::move(lhs), std::move(rhs)};
}

std::string serialize_pairs(const JoinPairs& pairs) {
    std::string s = "{";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) s += ',';
        s += "(" + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) + ")";
    }
    return s + "}";
}

std::string serialize(const AbstractedTerm& t) {
    std::string s = "<<" + serialize(t.body()) + ">>";
    if (!t.alpha().empty()) s += "_{" + join_vars(t.alpha()) + "}";
    if (!t.beta().empty()) s += "^{" + join_vars(t.beta()) + "}";
    return s;
}

std::string serialize(const Term& t) {
    if (t.is_variable()) return "?" + t.variable().name;
    if (t.is_constant()) return t.constant().name;
    if (t.is_tense()) return std::string(tense_name(t.tense()));
    return serialize(t.abstraction());
}

std::string serialize(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Top: return "Top";
        case FormulaKind::Atom: {
            if (f.args().empty()) return f.predicate().name;
            std::string s = f.predicate().name + "(";
            for (std::size_t i = 0; i < f.args().size(); ++i) {
                if (i) s += ", ";
                s += serialize(f.args()[i]);
            }
            return s + ")";
        }
        case FormulaKind::Identity: return serialize(f.args()[0]) + " = " + serialize(f.args()[1]);
        case FormulaKind::Neg: return "~ " + unary_text(f.body());
        case FormulaKind::Exists: return "E{" + std::to_string(f.index()) + "} " + unary_text(f.body());
        case FormulaKind::Conj:
            return serialize(f.lhs()) + " /\\" + (f.pairs().empty() ? std::string() : serialize_pairs(f.pairs())) + " " +
                   unary_text(f.rhs());
    }
    return {};
}

}  // namespace ifol::syntax
