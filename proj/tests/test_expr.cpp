#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "minigraph/expr.hpp"
#include "test_support.hpp"

using namespace minigraph;
using namespace minigraph::expr;
using testsupport::ExprGen;

TEST_CASE("parse builds the expected tree for x^2 - y^2") {
    const Expr e = parse("x^2 - y^2", Mode::Real2);
    REQUIRE(e.root->kind == Kind::Sub);
    const auto& lhs = *e.root->a;
    const auto& rhs = *e.root->b;
    CHECK(lhs.kind == Kind::Pow);
    CHECK(lhs.a->kind == Kind::Variable);
    CHECK(lhs.a->var == 0);
    CHECK(lhs.b->number == 2.0);
    CHECK(rhs.kind == Kind::Pow);
    CHECK(rhs.a->var == 1);
}

TEST_CASE("parse accepts the shear example component") {
    CHECK_NOTHROW(parse("0.5*(exp(x)-3*exp(-x))*cos(y/2)", Mode::Real2));
    CHECK_NOTHROW(parse("-0.5*(exp(x)-3*exp(-x))*sin(y/2)", Mode::Real2));
}

TEST_CASE("syntax errors carry the byte offset and an expected set") {
    try {
        parse("x +", Mode::Real2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
        CHECK(!e.expected().empty());
    }

    CHECK_THROWS_AS(parse("", Mode::Real2), ParseError);
    CHECK_THROWS_AS(parse("(x", Mode::Real2), ParseError);
    CHECK_THROWS_AS(parse("x y", Mode::Real2), ParseError);   // no implicit multiplication
    CHECK_THROWS_AS(parse("2x", Mode::Real2), ParseError);
    CHECK_THROWS_AS(parse("x @ y", Mode::Real2), ParseError);
}

TEST_CASE("undeclared names and mode mismatches are rejected") {
    CHECK_THROWS_WITH_AS(parse("z", Mode::Real2), doctest::Contains("undeclared variable"),
                         ParseError);
    CHECK_THROWS_AS(parse("x", Mode::Complex1), ParseError);
    CHECK_THROWS_AS(parse("i", Mode::Real2), ParseError);      // imaginary unit is complex-only
    CHECK_THROWS_AS(parse("abs(w)", Mode::Complex1), ParseError);
    CHECK_THROWS_AS(parse("foo(x)", Mode::Real2), ParseError);  // unknown function
    CHECK_NOTHROW(parse("abs(x)", Mode::Real2));
    CHECK_NOTHROW(parse("i*w", Mode::Complex1));
}

TEST_CASE("deeply nested input fails cleanly instead of overflowing") {
    std::string s(5000, '(');
    s += "x";
    s.append(5000, ')');
    CHECK_THROWS_AS(parse(s, Mode::Real2), ParseError);
    CHECK_THROWS_AS(parse(std::string(5000, '-') + "x", Mode::Real2), ParseError);
}

TEST_CASE("parser is total on arbitrary byte strings") {
    std::mt19937_64 rng(0xABCD1234u);
    std::uniform_int_distribution<int> len(0, 40);
    std::uniform_int_distribution<int> byte(0, 255);
    const std::string alphabet = "xy+-*/^()0123456789.eE pisincoqrtw_";
    std::uniform_int_distribution<std::size_t> from_alpha(0, alphabet.size() - 1);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string s;
        const int n = len(rng);
        for (int k = 0; k < n; ++k) {
            if (trial % 2 == 0)
                s.push_back(char(byte(rng)));
            else
                s.push_back(alphabet[from_alpha(rng)]);
        }
        try {
            const Expr e = parse(s, Mode::Real2);
            CHECK(e.root != nullptr);
        } catch (const ParseError&) {
            // positioned failure is the expected outcome for junk
        }
    }
}

TEST_CASE("eval_jet2 matches hand calculus on the named examples") {
    const Jet2 j = eval_jet2(parse("x^2 - y^2", Mode::Real2), 1.0, 2.0);
    CHECK(j.v == -3.0);
    CHECK(j.dx == 2.0);
    CHECK(j.dy == -4.0);
    CHECK(j.dxx == 2.0);
    CHECK(j.dxy == 0.0);
    CHECK(j.dyy == -2.0);

    const Jet2 k = eval_jet2(parse("exp(x)*cos(y)", Mode::Real2), 0.0, 0.0);
    CHECK(k.v == 1.0);
    CHECK(k.dx == 1.0);
    CHECK(k.dy == 0.0);
    CHECK(k.dxx == 1.0);
    CHECK(k.dxy == 0.0);
    CHECK(k.dyy == -1.0);
}

TEST_CASE("jet partials match central finite differences on random expressions") {
    ExprGen gen(20260810u);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    const std::vector<Point2> probes{{-1.5, -1.5}, {0.3, -0.7}, {1.5, 1.5}, {0.0, 0.0}};
    for (int trial = 0; trial < 60; ++trial) {
        const Expr e = testsupport::bounded_real_expr(gen, probes);
        const double x = coord(gen.rng()), y = coord(gen.rng());
        Jet2 j;
        try {
            j = eval_jet2(e, x, y);
        } catch (const EvalError&) {
            continue;  // the probe box cannot rule out every domain issue
        }
        if (!j.finite() || std::fabs(j.v) > 8.0) continue;
        const auto fd = testsupport::central_differences(e, x, y);
        CAPTURE(e.str());
        CAPTURE(x);
        CAPTURE(y);
        CHECK(std::fabs(j.dx - fd.dx) < 1e-6);
        CHECK(std::fabs(j.dy - fd.dy) < 1e-6);
        CHECK(std::fabs(j.dxx - fd.dxx) < 1e-6);
        CHECK(std::fabs(j.dxy - fd.dxy) < 1e-6);
        CHECK(std::fabs(j.dyy - fd.dyy) < 1e-6);
    }
}

TEST_CASE("domain errors report the offending point") {
    const Expr e = parse("log(x)", Mode::Real2);
    try {
        eval_jet2(e, -1.0, 0.5);
        FAIL("expected EvalError");
    } catch (const EvalError& err) {
        CHECK(err.x() == -1.0);
        CHECK(std::string(err.what()).find("log") != std::string::npos);
    }
    CHECK_THROWS_AS(eval_jet2(parse("1/(x-1)", Mode::Real2), 1.0, 0.0), EvalError);
    CHECK_THROWS_AS(eval_jet2(parse("x^0.5", Mode::Real2), -2.0, 0.0), EvalError);
    CHECK_THROWS_AS(eval_jet2(parse("sqrt(x)", Mode::Real2), -0.25, 0.0), EvalError);
    CHECK_NOTHROW(eval_jet2(parse("x^3", Mode::Real2), -2.0, 0.0));
    CHECK_NOTHROW(eval_jet2(parse("x^-2", Mode::Real2), -2.0, 0.0));
}

TEST_CASE("integer exponents work on non-positive bases") {
    const Jet2 j = eval_jet2(parse("x^3", Mode::Real2), -2.0, 0.0);
    CHECK(j.v == -8.0);
    CHECK(j.dx == 12.0);
    CHECK(j.dxx == -12.0);

    const Jet2 k = eval_jet2(parse("x^-2", Mode::Real2), 2.0, 0.0);
    CHECK(k.v == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(k.dx == doctest::Approx(-0.25).epsilon(1e-14));

    const Jet2 zero = eval_jet2(parse("x^0", Mode::Real2), 0.0, 0.0);
    CHECK(zero.v == 1.0);
}

TEST_CASE("eval_cjet matches the named examples and the FD oracle") {
    const CJet1 a = eval_cjet(parse("exp(w)", Mode::Complex1), {0.0, 0.0});
    CHECK(std::abs(a.v - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(a.d - std::complex<double>(1, 0)) < 1e-15);

    const CJet1 b = eval_cjet(parse("w*w", Mode::Complex1), {1.0, 1.0});
    CHECK(std::abs(b.v - std::complex<double>(0, 2)) < 1e-15);
    CHECK(std::abs(b.d - std::complex<double>(2, 2)) < 1e-15);

    ExprGen gen(77u);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    for (int trial = 0; trial < 60; ++trial) {
        const Expr e = gen.complex_expr();
        const std::complex<double> w(coord(gen.rng()), coord(gen.rng()));
        CJet1 j;
        try {
            j = eval_cjet(e, w);
        } catch (const EvalError&) {
            continue;
        }
        if (!j.finite() || std::abs(j.v) > 20.0 || std::abs(j.d) > 20.0) continue;
        const auto fd = testsupport::complex_fd_derivative(e, w);
        CAPTURE(e.str());
        CHECK(std::abs(j.d - fd) < 1e-6);
    }
}

TEST_CASE("complex domain errors") {
    CHECK_THROWS_AS(eval_cjet(parse("1/w", Mode::Complex1), {0.0, 0.0}), EvalError);
    CHECK_THROWS_AS(eval_cjet(parse("log(w)", Mode::Complex1), {0.0, 0.0}), EvalError);
}

TEST_CASE("complex jet derivative agrees with the symbolic derivative") {
    ExprGen gen(31415u);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    int accepted = 0;
    while (accepted < 60) {
        const Expr e = gen.complex_expr();
        const Expr de = differentiate(e, "w");
        const std::complex<double> w(coord(gen.rng()), coord(gen.rng()));
        CJet1 j, jd;
        try {
            j = eval_cjet(e, w);
            jd = eval_cjet(de, w);
        } catch (const EvalError&) {
            continue;
        }
        if (!j.finite() || !jd.finite() || std::abs(j.d) > 50.0) continue;
        ++accepted;
        CAPTURE(e.str());
        CHECK(std::abs(jd.v - j.d) <= 1e-10 * std::max(1.0, std::abs(j.d)));
    }
}

TEST_CASE("differentiate matches the named derivatives pointwise") {
    const Expr e = parse("x^2*y", Mode::Real2);
    const Expr dx = differentiate(e, "x");
    const Expr expected = parse("2*x*y", Mode::Real2);
    for (double x : {-1.5, 0.2, 1.0, 2.0})
        for (double y : {-2.0, 0.5, 1.0}) {
            CHECK(eval_jet2(dx, x, y).v ==
                  doctest::Approx(eval_jet2(expected, x, y).v).epsilon(1e-12));
        }

    const Expr g = parse("exp(x)*cos(y)", Mode::Real2);
    const Expr dy = differentiate(g, "y");
    const Expr expected_dy = parse("-exp(x)*sin(y)", Mode::Real2);
    for (double x : {-1.0, 0.0, 1.2})
        for (double y : {-0.7, 0.4, 2.0}) {
            CHECK(eval_jet2(dy, x, y).v ==
                  doctest::Approx(eval_jet2(expected_dy, x, y).v).epsilon(1e-12));
        }
}

TEST_CASE("differentiate rejects variables from the wrong mode") {
    CHECK_THROWS_AS(differentiate(parse("x+y", Mode::Real2), "w"), std::invalid_argument);
    CHECK_THROWS_AS(differentiate(parse("w", Mode::Complex1), "x"), std::invalid_argument);
    CHECK_NOTHROW(differentiate(parse("w*w", Mode::Complex1), "w"));
}

TEST_CASE("symbolic derivative agrees with jet components on random expressions") {
    ExprGen gen(424242u);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    const std::vector<Point2> probes{{-1.0, 1.0}, {0.5, -0.5}, {1.8, 0.1}};
    int accepted = 0;
    while (accepted < 100) {
        const Expr e = testsupport::bounded_real_expr(gen, probes, 20.0);
        const Expr dx = differentiate(e, "x");
        const Expr dy = differentiate(e, "y");
        const double x = coord(gen.rng()), y = coord(gen.rng());
        Jet2 j, jx, jy;
        try {
            j = eval_jet2(e, x, y);
            jx = eval_jet2(dx, x, y);
            jy = eval_jet2(dy, x, y);
        } catch (const EvalError&) {
            continue;
        }
        if (!j.finite() || !jx.finite() || !jy.finite()) continue;
        ++accepted;
        CAPTURE(e.str());
        CAPTURE(x);
        CAPTURE(y);
        CHECK(std::fabs(jx.v - j.dx) <= 1e-9 * std::max(1.0, std::fabs(j.dx)));
        CHECK(std::fabs(jy.v - j.dy) <= 1e-9 * std::max(1.0, std::fabs(j.dy)));
        // second derivatives of e equal first derivatives of the gradient
        CHECK(std::fabs(jx.dx - j.dxx) <= 1e-9 * std::max(1.0, std::fabs(j.dxx)));
        CHECK(std::fabs(jx.dy - j.dxy) <= 1e-9 * std::max(1.0, std::fabs(j.dxy)));
        CHECK(std::fabs(jy.dy - j.dyy) <= 1e-9 * std::max(1.0, std::fabs(j.dyy)));
    }
}

TEST_CASE("print/parse round-trips structurally") {
    const char* samples[] = {
        "x^2 - y^2",
        "0.5*(exp(x)-3*exp(-x))*cos(y/2)",
        "-x^2",
        "x^-2",
        "-(x^2)",
        "x-(y-x)",
        "x/(y*y+1)",
        "2^3^2",
        "-(-(x))",
        "abs(x)*sqrt(x*x+1)",
    };
    for (const char* s : samples) {
        const Expr e = parse(s, Mode::Real2);
        const Expr again = parse(e.str(), Mode::Real2);
        CAPTURE(s);
        CAPTURE(e.str());
        CHECK(structurally_equal(e.root, again.root));
    }

    ExprGen gen(99u);
    for (int trial = 0; trial < 300; ++trial) {
        const Expr e = gen.real_expr(4);
        const Expr again = parse(e.str(), Mode::Real2);
        CAPTURE(e.str());
        CHECK(structurally_equal(e.root, again.root));
    }
    for (int trial = 0; trial < 100; ++trial) {
        const Expr e = gen.complex_expr(4);
        const Expr again = parse(e.str(), Mode::Complex1);
        CAPTURE(e.str());
        CHECK(structurally_equal(e.root, again.root));
    }
}

TEST_CASE("grammar places '^' below unary minus on its left operand") {
    // "-x^2" is (-x)^2 per the grammar; printing preserves the distinction
    const Expr e = parse("-x^2", Mode::Real2);
    REQUIRE(e.root->kind == Kind::Pow);
    CHECK(e.root->a->kind == Kind::Negate);
    CHECK(eval_jet2(e, 3.0, 0.0).v == 9.0);

    const Expr n = Expr{negate(pow(variable(0), number(2.0))), Mode::Real2};
    CHECK(n.str() == "-(x^2)");
    CHECK(structurally_equal(parse(n.str(), Mode::Real2).root, n.root));

    // '^' is right-associative; the compound exponent takes the exp/log route
    const Expr r = parse("2^3^2", Mode::Real2);
    CHECK(eval_jet2(r, 0.0, 0.0).v == doctest::Approx(512.0).epsilon(1e-12));
}

TEST_CASE("number printing stays within the grammar") {
    const Expr tiny = Expr{number(2.5e-7), Mode::Real2};
    CHECK(structurally_equal(parse(tiny.str(), Mode::Real2).root, tiny.root));
    const Expr negc = Expr{number(-3.25), Mode::Real2};  // wrapped as Negate(3.25)
    CHECK(negc.root->kind == Kind::Negate);
    CHECK(structurally_equal(parse(negc.str(), Mode::Real2).root, negc.root));
    const Expr huge = Expr{number(1.0e100), Mode::Real2};
    CHECK(structurally_equal(parse(huge.str(), Mode::Real2).root, huge.root));
}
