#include "minigraph/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace minigraph::expr {

namespace {

NodeRef make(Node n) { return std::make_shared<const Node>(std::move(n)); }

constexpr std::size_t kMaxDepth = 200;

struct FuncName {
    std::string_view name;
    Func func;
};
constexpr FuncName kFunctions[] = {
    {"exp", Func::Exp},   {"log", Func::Log},   {"sin", Func::Sin},
    {"cos", Func::Cos},   {"tan", Func::Tan},   {"sinh", Func::Sinh},
    {"cosh", Func::Cosh}, {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
};

bool lookup_function(std::string_view name, Func& out) {
    for (const auto& f : kFunctions)
        if (f.name == name) {
            out = f.func;
            return true;
        }
    return false;
}

std::string_view function_name(Func f) {
    for (const auto& fn : kFunctions)
        if (fn.func == f) return fn.name;
    return "?";
}

}  // namespace

NodeRef number(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("number literal must be finite");
    if (v < 0.0) return negate(number(-v));
    if (v == 0.0) v = 0.0;  // normalize -0
    Node n;
    n.kind = Kind::Number;
    n.number = v;
    return make(std::move(n));
}
NodeRef constant(ConstName c) {
    Node n;
    n.kind = Kind::Constant;
    n.cname = c;
    return make(std::move(n));
}
NodeRef variable(int index) {
    Node n;
    n.kind = Kind::Variable;
    n.var = index;
    return make(std::move(n));
}
NodeRef negate(NodeRef a) {
    Node n;
    n.kind = Kind::Negate;
    n.a = std::move(a);
    return make(std::move(n));
}

namespace {
NodeRef binary(Kind k, NodeRef a, NodeRef b) {
    Node n;
    n.kind = k;
    n.a = std::move(a);
    n.b = std::move(b);
    return make(std::move(n));
}
}  // namespace

NodeRef add(NodeRef a, NodeRef b) { return binary(Kind::Add, std::move(a), std::move(b)); }
NodeRef sub(NodeRef a, NodeRef b) { return binary(Kind::Sub, std::move(a), std::move(b)); }
NodeRef mul(NodeRef a, NodeRef b) { return binary(Kind::Mul, std::move(a), std::move(b)); }
NodeRef div(NodeRef a, NodeRef b) { return binary(Kind::Div, std::move(a), std::move(b)); }
NodeRef pow(NodeRef base, NodeRef exponent) {
    return binary(Kind::Pow, std::move(base), std::move(exponent));
}
NodeRef call(Func f, NodeRef a) {
    Node n;
    n.kind = Kind::Call;
    n.func = f;
    n.a = std::move(a);
    return make(std::move(n));
}

ParseError::ParseError(std::size_t offset, std::string expected, std::string message)
    : std::runtime_error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

EvalError::EvalError(const std::string& what, double x, double y)
    : std::runtime_error(what), x_(x), y_(y) {}
EvalError::EvalError(const std::string& what, std::complex<double> w)
    : std::runtime_error(what), x_(w.real()), y_(w.imag()) {}

int variable_index(Mode mode, std::string_view name) {
    if (mode == Mode::Real2) {
        if (name == "x") return 0;
        if (name == "y") return 1;
        return -1;
    }
    return name == "w" ? 0 : -1;
}

std::string_view variable_name(Mode mode, int index) {
    if (mode == Mode::Real2) return index == 0 ? "x" : "y";
    return "w";
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok type = Tok::End;
    std::size_t offset = 0;
    double number = 0.0;
    std::string_view ident;
};

[[noreturn]] void syntax_error(std::size_t offset, std::string expected) {
    std::ostringstream os;
    os << "syntax error at offset " << offset << ": expected " << expected;
    throw ParseError(offset, std::move(expected), os.str());
}

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;

    Token next() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\n' ||
                                    src[pos] == '\r'))
            ++pos;
        Token t;
        t.offset = pos;
        if (pos >= src.size()) return t;
        const char c = src[pos];
        switch (c) {
            case '+': ++pos; t.type = Tok::Plus; return t;
            case '-': ++pos; t.type = Tok::Minus; return t;
            case '*': ++pos; t.type = Tok::Star; return t;
            case '/': ++pos; t.type = Tok::Slash; return t;
            case '^': ++pos; t.type = Tok::Caret; return t;
            case '(': ++pos; t.type = Tok::LParen; return t;
            case ')': ++pos; t.type = Tok::RParen; return t;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos + 1 < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            return lex_number(t);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos;
            while (end < src.size() && (std::isalnum(static_cast<unsigned char>(src[end])) ||
                                        src[end] == '_'))
                ++end;
            t.type = Tok::Ident;
            t.ident = src.substr(pos, end - pos);
            pos = end;
            return t;
        }
        std::ostringstream os;
        os << "syntax error at offset " << pos << ": unexpected character";
        throw ParseError(pos, "number, identifier, '(', or '-'", os.str());
    }

    Token lex_number(Token t) {
        std::size_t end = pos;
        while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
        if (end < src.size() && src[end] == '.') {
            ++end;
            while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
        }
        // exponent only when followed by at least one digit
        if (end < src.size() && (src[end] == 'e' || src[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < src.size() && (src[e] == '+' || src[e] == '-')) ++e;
            if (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) {
                ++e;
                while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
                end = e;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(src.data() + pos, src.data() + end, value);
        if (res.ec != std::errc() || !std::isfinite(value)) {
            std::ostringstream os;
            os << "number literal out of range at offset " << pos;
            throw ParseError(pos, "", os.str());
        }
        t.type = Tok::Number;
        t.number = value;
        pos = end;
        return t;
    }
};

struct Parser {
    Mode mode;
    Lexer lex;
    Token tok;
    std::size_t depth = 0;

    void advance() { tok = lex.next(); }

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser) {
            if (++p.depth > kMaxDepth)
                syntax_error(p.tok.offset, "a less deeply nested expression");
        }
        ~DepthGuard() { --p.depth; }
    };

    NodeRef parse_expr() {
        DepthGuard guard(*this);
        NodeRef lhs = parse_term();
        while (tok.type == Tok::Plus || tok.type == Tok::Minus) {
            const bool plus = tok.type == Tok::Plus;
            advance();
            NodeRef rhs = parse_term();
            lhs = plus ? add(std::move(lhs), std::move(rhs)) : sub(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    NodeRef parse_term() {
        NodeRef lhs = parse_factor();
        while (tok.type == Tok::Star || tok.type == Tok::Slash) {
            const bool star = tok.type == Tok::Star;
            advance();
            NodeRef rhs = parse_factor();
            lhs = star ? mul(std::move(lhs), std::move(rhs)) : div(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    // '^' is right-associative and binds its left operand at the unary level,
    // so "-x^2" parses as (-x)^2 and "x^-2" is accepted.
    NodeRef parse_factor() {
        NodeRef base = parse_unary();
        if (tok.type == Tok::Caret) {
            advance();
            NodeRef exponent = parse_factor();
            return pow(std::move(base), std::move(exponent));
        }
        return base;
    }

    NodeRef parse_unary() {
        DepthGuard guard(*this);
        if (tok.type == Tok::Minus) {
            advance();
            return negate(parse_unary());
        }
        return parse_atom();
    }

    NodeRef parse_atom() {
        if (tok.type == Tok::Number) {
            NodeRef n = number(tok.number);
            advance();
            return n;
        }
        if (tok.type == Tok::LParen) {
            advance();
            NodeRef inner = parse_expr();
            if (tok.type != Tok::RParen) syntax_error(tok.offset, "')'");
            advance();
            return inner;
        }
        if (tok.type == Tok::Ident) {
            const Token ident = tok;
            advance();
            if (tok.type == Tok::LParen) return parse_call(ident);
            return parse_name(ident);
        }
        syntax_error(tok.offset, "number, identifier, '(', or '-'");
    }

    NodeRef parse_call(const Token& ident) {
        Func f{};
        if (!lookup_function(ident.ident, f)) {
            std::ostringstream os;
            os << "unknown function '" << ident.ident << "' at offset " << ident.offset;
            throw ParseError(ident.offset, "", os.str());
        }
        if (f == Func::Abs && mode == Mode::Complex1) {
            std::ostringstream os;
            os << "function 'abs' is not available in complex mode (offset " << ident.offset
               << ")";
            throw ParseError(ident.offset, "", os.str());
        }
        advance();  // consume '('
        NodeRef arg = parse_expr();
        if (tok.type != Tok::RParen) syntax_error(tok.offset, "')'");
        advance();
        return call(f, std::move(arg));
    }

    NodeRef parse_name(const Token& ident) {
        if (ident.ident == "pi") return constant(ConstName::Pi);
        if (ident.ident == "e") return constant(ConstName::E);
        if (ident.ident == "i") {
            if (mode == Mode::Complex1) return constant(ConstName::I);
            std::ostringstream os;
            os << "undeclared variable 'i' at offset " << ident.offset
               << " (imaginary unit needs complex mode)";
            throw ParseError(ident.offset, "", os.str());
        }
        const int idx = variable_index(mode, ident.ident);
        if (idx < 0) {
            std::ostringstream os;
            os << "undeclared variable '" << ident.ident << "' at offset " << ident.offset;
            throw ParseError(ident.offset, "", os.str());
        }
        return variable(idx);
    }
};

}  // namespace

Expr parse(std::string_view source, Mode mode) {
    Parser p{mode, Lexer{source}, Token{}, 0};
    p.advance();
    NodeRef root = p.parse_expr();
    if (p.tok.type != Tok::End)
        syntax_error(p.tok.offset, "an operator ('+','-','*','/','^') or end of input");
    return Expr{std::move(root), mode};
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Each print_* emits text derivable from the matching grammar nonterminal, so
// reparsing reproduces the structure exactly.
void print_expr(const Node& n, std::string& out, Mode mode);

void print_atom(const Node& n, std::string& out, Mode mode) {
    switch (n.kind) {
        case Kind::Number: out += format_number(n.number); return;
        case Kind::Constant:
            out += n.cname == ConstName::Pi ? "pi" : (n.cname == ConstName::E ? "e" : "i");
            return;
        case Kind::Variable: out += variable_name(mode, n.var); return;
        case Kind::Call:
            out += function_name(n.func);
            out += '(';
            print_expr(*n.a, out, mode);
            out += ')';
            return;
        default:
            out += '(';
            print_expr(n, out, mode);
            out += ')';
            return;
    }
}

void print_unary(const Node& n, std::string& out, Mode mode) {
    if (n.kind == Kind::Negate) {
        out += '-';
        print_unary(*n.a, out, mode);
        return;
    }
    print_atom(n, out, mode);
}

void print_factor(const Node& n, std::string& out, Mode mode) {
    if (n.kind == Kind::Pow) {
        print_unary(*n.a, out, mode);
        out += '^';
        print_factor(*n.b, out, mode);
        return;
    }
    print_unary(n, out, mode);
}

void print_term(const Node& n, std::string& out, Mode mode) {
    if (n.kind == Kind::Mul || n.kind == Kind::Div) {
        print_term(*n.a, out, mode);
        out += n.kind == Kind::Mul ? '*' : '/';
        print_factor(*n.b, out, mode);
        return;
    }
    print_factor(n, out, mode);
}

void print_expr(const Node& n, std::string& out, Mode mode) {
    if (n.kind == Kind::Add || n.kind == Kind::Sub) {
        print_expr(*n.a, out, mode);
        out += n.kind == Kind::Add ? '+' : '-';
        print_term(*n.b, out, mode);
        return;
    }
    print_term(n, out, mode);
}

}  // namespace

std::string print(const Expr& e) {
    std::string out;
    print_expr(*e.root, out, e.mode);
    return out;
}

std::string Expr::str() const { return print(*this); }

bool structurally_equal(const NodeRef& a, const NodeRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Number: return a->number == b->number;
        case Kind::Constant: return a->cname == b->cname;
        case Kind::Variable: return a->var == b->var;
        case Kind::Negate:
        case Kind::Call:
            return (a->kind != Kind::Call || a->func == b->func) &&
                   structurally_equal(a->a, b->a);
        default:
            return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
    }
}

// ---------------------------------------------------------------------------
// Symbolic differentiation
// ---------------------------------------------------------------------------

namespace {

bool is_number(const NodeRef& n, double v) { return n->kind == Kind::Number && n->number == v; }
bool is_zero(const NodeRef& n) { return is_number(n, 0.0); }
bool is_one(const NodeRef& n) { return is_number(n, 1.0); }

// Literal numeric exponent, possibly under a chain of negations.
bool literal_value(const NodeRef& n, double& out) {
    if (n->kind == Kind::Number) {
        out = n->number;
        return true;
    }
    if (n->kind == Kind::Negate && literal_value(n->a, out)) {
        out = -out;
        return true;
    }
    return false;
}

NodeRef s_neg(NodeRef a) {
    if (is_zero(a)) return a;
    if (a->kind == Kind::Negate) return a->a;
    return negate(std::move(a));
}
NodeRef s_add(NodeRef a, NodeRef b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    return add(std::move(a), std::move(b));
}
NodeRef s_sub(NodeRef a, NodeRef b) {
    if (is_zero(b)) return a;
    if (is_zero(a)) return s_neg(std::move(b));
    return sub(std::move(a), std::move(b));
}
NodeRef s_mul(NodeRef a, NodeRef b) {
    if (is_zero(a)) return a;
    if (is_zero(b)) return b;
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return mul(std::move(a), std::move(b));
}
NodeRef s_div(NodeRef a, NodeRef b) {
    if (is_zero(a)) return a;
    if (is_one(b)) return a;
    return div(std::move(a), std::move(b));
}
NodeRef s_pow(NodeRef base, NodeRef exponent) {
    if (is_zero(exponent)) return number(1.0);
    if (is_one(exponent)) return base;
    return pow(std::move(base), std::move(exponent));
}

NodeRef diff_node(const NodeRef& n, int var);

NodeRef diff_call(const NodeRef& n, int var) {
    const NodeRef& u = n->a;
    NodeRef du = diff_node(u, var);
    if (is_zero(du)) return du;
    switch (n->func) {
        case Func::Exp: return s_mul(call(Func::Exp, u), std::move(du));
        case Func::Log: return s_div(std::move(du), u);
        case Func::Sin: return s_mul(call(Func::Cos, u), std::move(du));
        case Func::Cos: return s_neg(s_mul(call(Func::Sin, u), std::move(du)));
        case Func::Tan:
            return s_mul(s_add(number(1.0), pow(call(Func::Tan, u), number(2.0))),
                         std::move(du));
        case Func::Sinh: return s_mul(call(Func::Cosh, u), std::move(du));
        case Func::Cosh: return s_mul(call(Func::Sinh, u), std::move(du));
        case Func::Sqrt:
            return s_div(std::move(du), s_mul(number(2.0), call(Func::Sqrt, u)));
        case Func::Abs:
            // d|u| = u/|u| * du, undefined at u = 0 like the jet convention
            return s_mul(s_div(u, call(Func::Abs, u)), std::move(du));
    }
    throw std::logic_error("unreachable function kind");
}

NodeRef diff_node(const NodeRef& n, int var) {
    switch (n->kind) {
        case Kind::Number:
        case Kind::Constant: return number(0.0);
        case Kind::Variable: return number(n->var == var ? 1.0 : 0.0);
        case Kind::Negate: return s_neg(diff_node(n->a, var));
        case Kind::Add: return s_add(diff_node(n->a, var), diff_node(n->b, var));
        case Kind::Sub: return s_sub(diff_node(n->a, var), diff_node(n->b, var));
        case Kind::Mul:
            return s_add(s_mul(diff_node(n->a, var), n->b),
                         s_mul(n->a, diff_node(n->b, var)));
        case Kind::Div:
            return s_div(s_sub(s_mul(diff_node(n->a, var), n->b),
                               s_mul(n->a, diff_node(n->b, var))),
                         pow(n->b, number(2.0)));
        case Kind::Pow: {
            double c = 0.0;
            if (literal_value(n->b, c)) {
                // d(u^c) = c*u^(c-1)*du for a constant literal exponent
                NodeRef du = diff_node(n->a, var);
                if (is_zero(du) || c == 0.0) return number(0.0);
                return s_mul(s_mul(number(c), s_pow(n->a, number(c - 1.0))), std::move(du));
            }
            // general u^v = exp(v log u)
            NodeRef du = diff_node(n->a, var);
            NodeRef dv = diff_node(n->b, var);
            NodeRef inner = s_add(s_mul(std::move(dv), call(Func::Log, n->a)),
                                  s_mul(n->b, s_div(std::move(du), n->a)));
            return s_mul(pow(n->a, n->b), std::move(inner));
        }
        case Kind::Call: return diff_call(n, var);
    }
    throw std::logic_error("unreachable node kind");
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) {
    const int idx = variable_index(e.mode, var);
    if (idx < 0)
        throw std::invalid_argument("variable '" + std::string(var) +
                                    "' is not declared in this expression mode");
    return Expr{diff_node(e.root, idx), e.mode};
}

}  // namespace minigraph::expr
