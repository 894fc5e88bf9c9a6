#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "minigraph/jets.hpp"

namespace minigraph::expr {

// Parsing context. Real2 declares the variables x, y; Complex1 declares w and
// additionally the constant i. abs() is only available in Real2.
enum class Mode { Real2, Complex1 };

enum class Kind { Number, Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Exp, Log, Sin, Cos, Tan, Sinh, Cosh, Sqrt, Abs };
enum class ConstName { Pi, E, I };

struct Node;
using NodeRef = std::shared_ptr<const Node>;

// Immutable AST node. Number nodes always hold finite non-negative values;
// negative literals are represented as Negate(Number) so printing round-trips
// structurally.
struct Node {
    Kind kind{};
    double number = 0.0;   // Kind::Number
    ConstName cname{};     // Kind::Constant
    int var = 0;           // Kind::Variable, index into the mode's variables
    Func func{};           // Kind::Call
    NodeRef a, b;          // operands: a for Negate/Call, a and b for binaries
};

NodeRef number(double v);
NodeRef constant(ConstName c);
NodeRef variable(int index);
NodeRef negate(NodeRef a);
NodeRef add(NodeRef a, NodeRef b);
NodeRef sub(NodeRef a, NodeRef b);
NodeRef mul(NodeRef a, NodeRef b);
NodeRef div(NodeRef a, NodeRef b);
NodeRef pow(NodeRef base, NodeRef exponent);
NodeRef call(Func f, NodeRef a);

struct Expr {
    NodeRef root;
    Mode mode = Mode::Real2;

    std::string str() const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string expected, std::string message);
    std::size_t offset() const { return offset_; }
    // Comma-separated set of token descriptions acceptable at the offset;
    // empty for non-syntax failures (undeclared variable, unknown function).
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

// Thrown when evaluation leaves the domain (log of non-positive value,
// division by zero, ...). Carries the sample point the failure happened at.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& what, double x, double y);
    EvalError(const std::string& what, std::complex<double> w);
    double x() const { return x_; }
    double y() const { return y_; }

private:
    double x_, y_;
};

// Recursive-descent parser for the grammar
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := unary ("^" factor)?
//   unary  := "-" unary | atom
//   atom   := number | ident | ident "(" expr ")" | "(" expr ")"
// Functions: exp log sin cos tan sinh cosh sqrt abs (abs in Real2 only).
// Constants: pi, e, and i in Complex1. No implicit multiplication.
Expr parse(std::string_view source, Mode mode);

// Grammar-directed printer; parse(e.str(), e.mode) is structurally equal to e.
std::string print(const Expr& e);

bool structurally_equal(const NodeRef& a, const NodeRef& b);

// Symbolic partial derivative with light identity simplification (x+0, 1*x,
// pow collapse). The result evaluates pointwise to the matching jet component.
Expr differentiate(const Expr& e, std::string_view var);

int variable_index(Mode mode, std::string_view name);  // -1 when undeclared
std::string_view variable_name(Mode mode, int index);

// Forward-mode evaluation with exact derivatives. Real mode only.
Jet2 eval_jet2(const Expr& e, double x, double y);

// Complex value and first derivative. Complex mode only.
CJet1 eval_cjet(const Expr& e, std::complex<double> w);

}  // namespace minigraph::expr
