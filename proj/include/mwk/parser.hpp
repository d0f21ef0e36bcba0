#pragma once

// Surface syntax for MW expressions and F(1) elements.
//
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*' factor) | factor)*          adjacency multiplies
//   factor  := '-' factor | postfix
//   postfix := primary ('^' signedint)*
//   primary := INT | 'eta' | 'h' | 'eps' | '[' unit ']' | '<' unit '>'
//            | 'theta' '(' unit ')' | '(' expr ')'
//   unit    := '-'? uatom ('*' '-'? uatom)*
//   uatom   := IDENT ('^' signedint)? | '1'
//
// h desugars to 2 + eta*[-1], <u> to 1 + eta*[u], eps to -(1 + eta*[-1]).
// Adjacency such as [U][V] or eta[U] is multiplication.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fa1.hpp"

namespace mwk {

struct Ast {
    enum class Kind {
        Integer,
        Eta,
        H,
        Eps,
        Bracket, // [u]
        GwGen,   // <u>
        Theta,   // theta(u)
        Neg,
        Add,
        Sub,
        Mul,
        Pow,
    };

    struct Node {
        Kind kind;
        Int ival = 0;          // Integer
        FormalUnit unit;       // Bracket / GwGen / Theta
        int power = 0;         // Pow
        std::vector<std::size_t> kids;
    };

    std::vector<Node> nodes;
    std::size_t root = 0;
};

namespace detail {

struct Token {
    enum class Type {
        Integer,
        Ident,
        Plus,
        Minus,
        Star,
        Caret,
        LParen,
        RParen,
        LBracket,
        RBracket,
        Less,
        Greater,
        End,
    };
    Type type;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t pos = i;
        auto push = [&](Token::Type t, std::size_t len) {
            out.push_back(Token{t, src.substr(pos, len), pos});
            i += len;
        };
        if (c >= '0' && c <= '9') {
            std::size_t j = i;
            while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
            push(Token::Type::Integer, j - i);
        } else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   ((src[j] >= 'a' && src[j] <= 'z') ||
                    (src[j] >= 'A' && src[j] <= 'Z') ||
                    (src[j] >= '0' && src[j] <= '9') || src[j] == '_'))
                ++j;
            push(Token::Type::Ident, j - i);
        } else {
            switch (c) {
                case '+': push(Token::Type::Plus, 1); break;
                case '-': push(Token::Type::Minus, 1); break;
                case '*': push(Token::Type::Star, 1); break;
                case '^': push(Token::Type::Caret, 1); break;
                case '(': push(Token::Type::LParen, 1); break;
                case ')': push(Token::Type::RParen, 1); break;
                case '[': push(Token::Type::LBracket, 1); break;
                case ']': push(Token::Type::RBracket, 1); break;
                case '<': push(Token::Type::Less, 1); break;
                case '>': push(Token::Type::Greater, 1); break;
                default:
                    throw mwk::ParseError(pos, std::string("unexpected character '") +
                                                   c + "'");
            }
        }
    }
    out.push_back(Token{Token::Type::End, "", src.size()});
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    Ast parse_expr_all() {
        Ast ast;
        ast.root = parse_expr(ast);
        expect(Token::Type::End, "trailing input");
        return ast;
    }

  private:
    const Token& cur() const { return toks_[i_]; }
    void advance() { ++i_; }
    bool accept(Token::Type t) {
        if (cur().type == t) {
            advance();
            return true;
        }
        return false;
    }
    void expect(Token::Type t, const std::string& what) {
        if (!accept(t)) throw mwk::ParseError(cur().pos, "expected " + what);
    }

    std::size_t add(Ast& ast, Ast::Node n) {
        ast.nodes.push_back(std::move(n));
        return ast.nodes.size() - 1;
    }

    std::size_t parse_expr(Ast& ast) {
        std::size_t lhs = parse_term(ast);
        while (cur().type == Token::Type::Plus ||
               cur().type == Token::Type::Minus) {
            bool plus = cur().type == Token::Type::Plus;
            advance();
            std::size_t rhs = parse_term(ast);
            Ast::Node n;
            n.kind = plus ? Ast::Kind::Add : Ast::Kind::Sub;
            n.kids = {lhs, rhs};
            lhs = add(ast, std::move(n));
        }
        return lhs;
    }

    bool starts_adjacent_factor() const {
        switch (cur().type) {
            case Token::Type::LBracket:
            case Token::Type::Less:
            case Token::Type::LParen:
                return true;
            case Token::Type::Ident:
                return cur().text == "eta" || cur().text == "h" ||
                       cur().text == "eps" || cur().text == "theta";
            default:
                return false;
        }
    }

    std::size_t parse_term(Ast& ast) {
        std::size_t lhs = parse_factor(ast);
        while (true) {
            if (accept(Token::Type::Star)) {
                std::size_t rhs = parse_factor(ast);
                Ast::Node n;
                n.kind = Ast::Kind::Mul;
                n.kids = {lhs, rhs};
                lhs = add(ast, std::move(n));
            } else if (starts_adjacent_factor()) {
                std::size_t rhs = parse_factor(ast);
                Ast::Node n;
                n.kind = Ast::Kind::Mul;
                n.kids = {lhs, rhs};
                lhs = add(ast, std::move(n));
            } else {
                return lhs;
            }
        }
    }

    std::size_t parse_factor(Ast& ast) {
        if (accept(Token::Type::Minus)) {
            std::size_t inner = parse_factor(ast);
            Ast::Node n;
            n.kind = Ast::Kind::Neg;
            n.kids = {inner};
            return add(ast, std::move(n));
        }
        return parse_postfix(ast);
    }

    std::size_t parse_postfix(Ast& ast) {
        std::size_t base = parse_primary(ast);
        while (cur().type == Token::Type::Caret) {
            advance();
            int e = parse_signed_int();
            Ast::Node n;
            n.kind = Ast::Kind::Pow;
            n.power = e;
            n.kids = {base};
            base = add(ast, std::move(n));
        }
        return base;
    }

    int parse_signed_int() {
        bool negate = accept(Token::Type::Minus);
        if (cur().type != Token::Type::Integer)
            throw mwk::ParseError(cur().pos, "expected integer exponent");
        int v = std::stoi(cur().text);
        advance();
        return negate ? -v : v;
    }

    std::size_t parse_primary(Ast& ast) {
        const Token& t = cur();
        switch (t.type) {
            case Token::Type::Integer: {
                Ast::Node n;
                n.kind = Ast::Kind::Integer;
                n.ival = Int(t.text);
                advance();
                return add(ast, std::move(n));
            }
            case Token::Type::Ident: {
                if (t.text == "eta") {
                    advance();
                    Ast::Node n;
                    n.kind = Ast::Kind::Eta;
                    return add(ast, std::move(n));
                }
                if (t.text == "h") {
                    advance();
                    Ast::Node n;
                    n.kind = Ast::Kind::H;
                    return add(ast, std::move(n));
                }
                if (t.text == "eps") {
                    advance();
                    Ast::Node n;
                    n.kind = Ast::Kind::Eps;
                    return add(ast, std::move(n));
                }
                if (t.text == "theta") {
                    advance();
                    expect(Token::Type::LParen, "'(' after theta");
                    FormalUnit u = parse_unit();
                    expect(Token::Type::RParen, "')'");
                    Ast::Node n;
                    n.kind = Ast::Kind::Theta;
                    n.unit = std::move(u);
                    return add(ast, std::move(n));
                }
                throw mwk::ParseError(t.pos, "unexpected identifier '" + t.text +
                                                 "' (units belong inside [ ], < >, theta( ))");
            }
            case Token::Type::LBracket: {
                advance();
                FormalUnit u = parse_unit();
                expect(Token::Type::RBracket, "']'");
                Ast::Node n;
                n.kind = Ast::Kind::Bracket;
                n.unit = std::move(u);
                return add(ast, std::move(n));
            }
            case Token::Type::Less: {
                advance();
                FormalUnit u = parse_unit();
                expect(Token::Type::Greater, "'>'");
                Ast::Node n;
                n.kind = Ast::Kind::GwGen;
                n.unit = std::move(u);
                return add(ast, std::move(n));
            }
            case Token::Type::LParen: {
                advance();
                std::size_t inner = parse_expr(ast);
                expect(Token::Type::RParen, "')'");
                return inner;
            }
            default:
                throw mwk::ParseError(t.pos, "expected an expression");
        }
    }

    FormalUnit parse_unit() {
        FormalUnit u = parse_signed_uatom();
        while (accept(Token::Type::Star)) u = unit_mul(u, parse_signed_uatom());
        return u;
    }

    FormalUnit parse_signed_uatom() {
        bool neg = accept(Token::Type::Minus);
        FormalUnit u = parse_uatom();
        if (neg) u = unit_mul(FormalUnit::minus_one(), u);
        return u;
    }

    FormalUnit parse_uatom() {
        const Token& t = cur();
        if (t.type == Token::Type::Integer) {
            if (t.text != "1")
                throw mwk::ParseError(t.pos, "only the unit 1 (or -1) is a literal");
            advance();
            return FormalUnit::one();
        }
        if (t.type == Token::Type::Ident) {
            std::string name = t.text;
            advance();
            int e = 1;
            if (accept(Token::Type::Caret)) e = parse_signed_int();
            return FormalUnit::ind(name, e);
        }
        throw mwk::ParseError(t.pos, "expected a unit");
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

} // namespace detail

inline Ast parse(const std::string& src) {
    return detail::Parser(src).parse_expr_all();
}

// Evaluation: an expression denotes either a K^MW element or, once theta
// appears, an F(1) element (K2 parts embed as central elements).
using Value = std::variant<MwExpr, Fa1Element>;

namespace detail {

inline Fa1Element embed(const MwExpr& e, const NormalizeOptions& opt) {
    MwExpr nf = normalize(e, nullptr, opt);
    if (!nf.is_homogeneous(2))
        throw DegreeError(
            "only degree-2 expressions multiply into F(1) elements");
    return Fa1Element(nf, FormalUnit::one(), opt);
}

inline Value eval_node(const Ast& ast, std::size_t idx,
                       const NormalizeOptions& opt) {
    const Ast::Node& n = ast.nodes[idx];
    switch (n.kind) {
        case Ast::Kind::Integer: return MwExpr(n.ival);
        case Ast::Kind::Eta: return eta_expr();
        case Ast::Kind::H: return h_expr();
        case Ast::Kind::Eps: return eps_expr();
        case Ast::Kind::Bracket: return bracket(n.unit);
        case Ast::Kind::GwGen: return gw_class(n.unit);
        case Ast::Kind::Theta: return theta(n.unit);
        case Ast::Kind::Neg: {
            Value v = eval_node(ast, n.kids[0], opt);
            if (std::holds_alternative<MwExpr>(v))
                return -std::get<MwExpr>(v);
            throw Error("cannot negate a group element (F(1) is not additive)");
        }
        case Ast::Kind::Add:
        case Ast::Kind::Sub: {
            Value a = eval_node(ast, n.kids[0], opt);
            Value b = eval_node(ast, n.kids[1], opt);
            if (!std::holds_alternative<MwExpr>(a) ||
                !std::holds_alternative<MwExpr>(b))
                throw Error("cannot add F(1) elements; the group is multiplicative");
            if (n.kind == Ast::Kind::Add)
                return std::get<MwExpr>(a) + std::get<MwExpr>(b);
            return std::get<MwExpr>(a) - std::get<MwExpr>(b);
        }
        case Ast::Kind::Mul: {
            Value a = eval_node(ast, n.kids[0], opt);
            Value b = eval_node(ast, n.kids[1], opt);
            if (std::holds_alternative<MwExpr>(a) &&
                std::holds_alternative<MwExpr>(b))
                return mw_mul(std::get<MwExpr>(a), std::get<MwExpr>(b), opt);
            if (std::holds_alternative<Fa1Element>(a) &&
                std::holds_alternative<Fa1Element>(b))
                return fa1_mul(std::get<Fa1Element>(a), std::get<Fa1Element>(b),
                               opt);
            if (std::holds_alternative<MwExpr>(a))
                return fa1_mul(embed(std::get<MwExpr>(a), opt),
                               std::get<Fa1Element>(b), opt);
            return fa1_mul(std::get<Fa1Element>(a),
                           embed(std::get<MwExpr>(b), opt), opt);
        }
        case Ast::Kind::Pow: {
            Value a = eval_node(ast, n.kids[0], opt);
            if (std::holds_alternative<Fa1Element>(a))
                return fa1_pow(std::get<Fa1Element>(a), n.power, opt);
            if (n.power < 0)
                throw Error("negative power of a K^MW expression");
            return mw_pow(std::get<MwExpr>(a), n.power, opt);
        }
    }
    throw Error("eval: malformed tree");
}

} // namespace detail

inline Value eval(const Ast& ast, const NormalizeOptions& opt = {}) {
    return detail::eval_node(ast, ast.root, opt);
}

inline Value eval_text(const std::string& src, const NormalizeOptions& opt = {}) {
    return eval(parse(src), opt);
}

} // namespace mwk
