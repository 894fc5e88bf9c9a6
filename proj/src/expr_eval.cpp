#include <cmath>
#include <numbers>
#include <sstream>

#include "minigraph/expr.hpp"

namespace minigraph::expr {

namespace {

// A Number literal (possibly negated) whose value is exactly integral. Such
// exponents take the repeated-multiplication path, which is defined for
// non-positive bases; everything else goes through exp(p log(base)).
bool integer_literal(const Node& n, long long& out) {
    if (n.kind == Kind::Negate && n.a) {
        if (!integer_literal(*n.a, out)) return false;
        out = -out;
        return true;
    }
    if (n.kind != Kind::Number) return false;
    const double v = n.number;
    if (v != std::floor(v) || std::fabs(v) > 9.0e15) return false;
    out = static_cast<long long>(v);
    return true;
}

Jet2 eval_real(const Node& n, double x, double y) {
    switch (n.kind) {
        case Kind::Number: return Jet2::constant(n.number);
        case Kind::Constant:
            switch (n.cname) {
                case ConstName::Pi: return Jet2::constant(std::numbers::pi);
                case ConstName::E: return Jet2::constant(std::numbers::e);
                case ConstName::I: throw DomainError("imaginary unit in real evaluation");
            }
            break;
        case Kind::Variable: return n.var == 0 ? Jet2::var_x(x) : Jet2::var_y(y);
        case Kind::Negate: return -eval_real(*n.a, x, y);
        case Kind::Add: return eval_real(*n.a, x, y) + eval_real(*n.b, x, y);
        case Kind::Sub: return eval_real(*n.a, x, y) - eval_real(*n.b, x, y);
        case Kind::Mul: return eval_real(*n.a, x, y) * eval_real(*n.b, x, y);
        case Kind::Div: return eval_real(*n.a, x, y) / eval_real(*n.b, x, y);
        case Kind::Pow: {
            long long k = 0;
            if (integer_literal(*n.b, k)) return jet_pow_int(eval_real(*n.a, x, y), k);
            return jet_pow(eval_real(*n.a, x, y), eval_real(*n.b, x, y));
        }
        case Kind::Call: {
            const Jet2 u = eval_real(*n.a, x, y);
            switch (n.func) {
                case Func::Exp: return jet_exp(u);
                case Func::Log: return jet_log(u);
                case Func::Sin: return jet_sin(u);
                case Func::Cos: return jet_cos(u);
                case Func::Tan: return jet_tan(u);
                case Func::Sinh: return jet_sinh(u);
                case Func::Cosh: return jet_cosh(u);
                case Func::Sqrt: return jet_sqrt(u);
                case Func::Abs: return jet_abs(u);
            }
            break;
        }
    }
    throw std::logic_error("unreachable node kind");
}

CJet1 eval_complex(const Node& n, std::complex<double> w) {
    switch (n.kind) {
        case Kind::Number: return CJet1::constant({n.number, 0.0});
        case Kind::Constant:
            switch (n.cname) {
                case ConstName::Pi: return CJet1::constant({std::numbers::pi, 0.0});
                case ConstName::E: return CJet1::constant({std::numbers::e, 0.0});
                case ConstName::I: return CJet1::constant({0.0, 1.0});
            }
            break;
        case Kind::Variable: return CJet1::var(w);
        case Kind::Negate: return -eval_complex(*n.a, w);
        case Kind::Add: return eval_complex(*n.a, w) + eval_complex(*n.b, w);
        case Kind::Sub: return eval_complex(*n.a, w) - eval_complex(*n.b, w);
        case Kind::Mul: return eval_complex(*n.a, w) * eval_complex(*n.b, w);
        case Kind::Div: return eval_complex(*n.a, w) / eval_complex(*n.b, w);
        case Kind::Pow: {
            long long k = 0;
            if (integer_literal(*n.b, k)) return cjet_pow_int(eval_complex(*n.a, w), k);
            return cjet_pow(eval_complex(*n.a, w), eval_complex(*n.b, w));
        }
        case Kind::Call: {
            const CJet1 u = eval_complex(*n.a, w);
            switch (n.func) {
                case Func::Exp: return cjet_exp(u);
                case Func::Log: return cjet_log(u);
                case Func::Sin: return cjet_sin(u);
                case Func::Cos: return cjet_cos(u);
                case Func::Tan: return cjet_tan(u);
                case Func::Sinh: return cjet_sinh(u);
                case Func::Cosh: return cjet_cosh(u);
                case Func::Sqrt: return cjet_sqrt(u);
                case Func::Abs: throw DomainError("abs is not defined in complex mode");
            }
            break;
        }
    }
    throw std::logic_error("unreachable node kind");
}

}  // namespace

Jet2 eval_jet2(const Expr& e, double x, double y) {
    if (e.mode != Mode::Real2)
        throw std::invalid_argument("eval_jet2 requires an expression in real mode");
    try {
        return eval_real(*e.root, x, y);
    } catch (const DomainError& err) {
        std::ostringstream os;
        os << "domain error at (x=" << x << ", y=" << y << "): " << err.what();
        throw EvalError(os.str(), x, y);
    }
}

CJet1 eval_cjet(const Expr& e, std::complex<double> w) {
    if (e.mode != Mode::Complex1)
        throw std::invalid_argument("eval_cjet requires an expression in complex mode");
    try {
        return eval_complex(*e.root, w);
    } catch (const DomainError& err) {
        std::ostringstream os;
        os << "domain error at w=(" << w.real() << ", " << w.imag() << "): " << err.what();
        throw EvalError(os.str(), w);
    }
}

}  // namespace minigraph::expr
