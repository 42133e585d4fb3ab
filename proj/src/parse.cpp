#include "liemin/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace liemin {
namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) bump();
        tok_.line = line_;
        tok_.col = col_;
        tok_.text.clear();
        if (pos_ >= s_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tok_.kind = Token::Kind::Number;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                tok_.text += take();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                std::size_t save = pos_;
                std::string num = tok_.text + take();
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                        num += take();
                    tok_.text = num;
                } else {
                    pos_ = save;  // lone '/', not a rational literal
                }
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok_.kind = Token::Kind::Ident;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                tok_.text += take();
            return;
        }
        switch (c) {
            case '+': tok_.kind = Token::Kind::Plus; break;
            case '-': tok_.kind = Token::Kind::Minus; break;
            case '*': tok_.kind = Token::Kind::Star; break;
            case '^': tok_.kind = Token::Kind::Caret; break;
            case '(': tok_.kind = Token::Kind::LParen; break;
            case ')': tok_.kind = Token::Kind::RParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
        tok_.text += take();
    }

    char take() {
        char c = s_[pos_];
        bump();
        return c;
    }

    void bump() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

// Parses over an extended variable list (ambient variables first, then
// parameters); the template front end splits the result afterwards.
class ExprParser {
public:
    ExprParser(const std::string& text, const std::vector<std::string>& names)
        : lex_(text), names_(names) {
        for (std::size_t i = 0; i < names.size(); ++i) index_[names[i]] = i;
    }

    Poly parse() {
        Poly p = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw ParseError("trailing input after expression", t.line, t.col);
        return p;
    }

private:
    Poly expr() {
        Poly p = term();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Kind::Plus) {
                lex_.next();
                p = p + term();
            } else if (t.kind == Token::Kind::Minus) {
                lex_.next();
                p = p - term();
            } else {
                return p;
            }
        }
    }

    Poly term() {
        Poly p = factor();
        while (lex_.peek().kind == Token::Kind::Star) {
            lex_.next();
            p = p * factor();
        }
        return p;
    }

    Poly factor() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Minus) {
            lex_.next();
            return -factor();
        }
        if (t.kind == Token::Kind::Plus) {
            lex_.next();
            return factor();
        }
        Poly base = primary();
        while (lex_.peek().kind == Token::Kind::Caret) {
            Token caret = lex_.next();
            Token e = lex_.next();
            if (e.kind != Token::Kind::Number || e.text.find('/') != std::string::npos)
                throw ParseError("exponent must be a non-negative integer", caret.line, caret.col);
            unsigned long n = std::stoul(e.text);
            Poly r = Poly::constant(base.dim(), Rat(1));
            for (unsigned long i = 0; i < n; ++i) r = r * base;
            base = r;
        }
        return base;
    }

    Poly primary() {
        Token t = lex_.next();
        switch (t.kind) {
            case Token::Kind::Number:
                return Poly::constant(names_.size(), rat_from_string(t.text));
            case Token::Kind::Ident: {
                auto it = index_.find(t.text);
                if (it == index_.end())
                    throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
                return Poly::variable(names_.size(), it->second);
            }
            case Token::Kind::LParen: {
                Poly p = expr();
                Token r = lex_.next();
                if (r.kind != Token::Kind::RParen)
                    throw ParseError("expected ')'", r.line, r.col);
                return p;
            }
            default:
                throw ParseError("expected number, identifier or '('", t.line, t.col);
        }
    }

    Lexer lex_;
    const std::vector<std::string>& names_;
    std::map<std::string, std::size_t> index_;
};

std::optional<std::size_t> param_index(const std::string& name) {
    if (name.size() < 2 || name[0] != 'a' || name[1] == '0') return std::nullopt;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    return std::stoul(name.substr(1)) - 1;
}

}  // namespace

Poly parse_polynomial(const std::string& text, const std::vector<std::string>& var_names) {
    if (var_names.empty()) throw ParseError("no variables declared", 1, 1);
    return ExprParser(text, var_names).parse();
}

PolyTemplate parse_template(const std::string& text, const std::vector<std::string>& var_names,
                            std::size_t min_params) {
    if (var_names.empty()) throw ParseError("no variables declared", 1, 1);
    // Pre-scan identifiers of the form a<k> that are not variables.
    std::size_t nparams = min_params;
    {
        Lexer scan(text);
        while (scan.peek().kind != Token::Kind::End) {
            Token t = scan.next();
            if (t.kind != Token::Kind::Ident) continue;
            if (std::find(var_names.begin(), var_names.end(), t.text) != var_names.end()) continue;
            auto pi = param_index(t.text);
            if (!pi) throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
            nparams = std::max(nparams, *pi + 1);
        }
    }
    std::vector<std::string> ext = var_names;
    for (std::size_t i = 0; i < nparams; ++i) {
        std::string pname = "a" + std::to_string(i + 1);
        if (std::find(var_names.begin(), var_names.end(), pname) == var_names.end())
            ext.push_back(pname);
        else
            ext.push_back("#param" + std::to_string(i + 1));  // shadowed, unused
    }
    Poly full = ExprParser(text, ext).parse();

    const std::size_t N = var_names.size();
    PolyTemplate result(N, nparams);
    for (const auto& [m, c] : full.terms()) {
        std::size_t pdeg = 0;
        std::size_t pidx = 0;
        for (std::size_t i = N; i < ext.size(); ++i) {
            pdeg += m.exps[i];
            if (m.exps[i] > 0) pidx = i - N;
        }
        if (pdeg != 1)
            throw ParseError(pdeg == 0
                                 ? "template term without a parameter (constant terms not allowed)"
                                 : "template term is nonlinear in the parameters",
                             1, 1);
        Monomial vm(std::vector<uint32_t>(m.exps.begin(), m.exps.begin() + N));
        result.add_term(vm, LinExpr::param(pidx, c));
    }
    return result;
}

}  // namespace liemin
