#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace minigraph {

// Thrown by jet arithmetic when an operation leaves its domain. Evaluation
// entry points catch it and rethrow an EvalError carrying the sample point.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Value and all partial derivatives through second order of a scalar that
// depends on (x, y). The mixed partial is stored once; dxy == dyx holds by
// construction for every operation below.
struct Jet2 {
    double v = 0.0;
    double dx = 0.0, dy = 0.0;
    double dxx = 0.0, dxy = 0.0, dyy = 0.0;

    static Jet2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
    static Jet2 var_x(double x) { return {x, 1, 0, 0, 0, 0}; }
    static Jet2 var_y(double y) { return {y, 0, 1, 0, 0, 0}; }

    bool finite() const {
        return std::isfinite(v) && std::isfinite(dx) && std::isfinite(dy) &&
               std::isfinite(dxx) && std::isfinite(dxy) && std::isfinite(dyy);
    }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dxx + b.dxx, a.dxy + b.dxy, a.dyy + b.dyy};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dxx - b.dxx, a.dxy - b.dxy, a.dyy - b.dyy};
}
inline Jet2 operator-(const Jet2& a) {
    return {-a.v, -a.dx, -a.dy, -a.dxx, -a.dxy, -a.dyy};
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v = a.v * b.v;
    r.dx = a.dx * b.v + a.v * b.dx;
    r.dy = a.dy * b.v + a.v * b.dy;
    r.dxx = a.dxx * b.v + 2.0 * a.dx * b.dx + a.v * b.dxx;
    r.dxy = a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy;
    r.dyy = a.dyy * b.v + 2.0 * a.dy * b.dy + a.v * b.dyy;
    return r;
}

// Composition with a univariate map given g(u), g'(u), g''(u) at u = a.v.
inline Jet2 jet_chain(const Jet2& a, double g, double dg, double ddg) {
    Jet2 r;
    r.v = g;
    r.dx = dg * a.dx;
    r.dy = dg * a.dy;
    r.dxx = ddg * a.dx * a.dx + dg * a.dxx;
    r.dxy = ddg * a.dx * a.dy + dg * a.dxy;
    r.dyy = ddg * a.dy * a.dy + dg * a.dyy;
    return r;
}

inline Jet2 jet_inverse(const Jet2& a) {
    if (a.v == 0.0) throw DomainError("division by zero");
    const double iv = 1.0 / a.v;
    return jet_chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * jet_inverse(b); }

inline Jet2 jet_exp(const Jet2& a) {
    const double e = std::exp(a.v);
    return jet_chain(a, e, e, e);
}
inline Jet2 jet_log(const Jet2& a) {
    if (!(a.v > 0.0)) throw DomainError("log of non-positive value");
    const double iv = 1.0 / a.v;
    return jet_chain(a, std::log(a.v), iv, -iv * iv);
}
inline Jet2 jet_sin(const Jet2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return jet_chain(a, s, c, -s);
}
inline Jet2 jet_cos(const Jet2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return jet_chain(a, c, -s, -c);
}
inline Jet2 jet_tan(const Jet2& a) {
    const double t = std::tan(a.v), s = 1.0 + t * t;
    return jet_chain(a, t, s, 2.0 * t * s);
}
inline Jet2 jet_sinh(const Jet2& a) {
    const double s = std::sinh(a.v), c = std::cosh(a.v);
    return jet_chain(a, s, c, s);
}
inline Jet2 jet_cosh(const Jet2& a) {
    const double s = std::sinh(a.v), c = std::cosh(a.v);
    return jet_chain(a, c, s, c);
}
inline Jet2 jet_sqrt(const Jet2& a) {
    if (a.v < 0.0) throw DomainError("sqrt of negative value");
    if (a.v == 0.0) {
        if (a.dx == 0 && a.dy == 0 && a.dxx == 0 && a.dxy == 0 && a.dyy == 0)
            return Jet2::constant(0.0);
        throw DomainError("sqrt derivative singular at zero");
    }
    const double s = std::sqrt(a.v);
    const double d1 = 0.5 / s;
    return jet_chain(a, s, d1, -0.5 * d1 / a.v);
}
// sign convention at the kink: d|u|/du = 0 at u = 0.
inline Jet2 jet_abs(const Jet2& a) {
    const double sg = a.v > 0.0 ? 1.0 : (a.v < 0.0 ? -1.0 : 0.0);
    return jet_chain(a, std::fabs(a.v), sg, 0.0);
}

inline Jet2 jet_pow_int(const Jet2& base, long long n) {
    if (n == 0) return Jet2::constant(1.0);
    const bool negative = n < 0;
    unsigned long long m = negative ? 0ull - static_cast<unsigned long long>(n)
                                    : static_cast<unsigned long long>(n);
    Jet2 acc = Jet2::constant(1.0);
    Jet2 p = base;
    while (m != 0) {
        if (m & 1ull) acc = acc * p;
        m >>= 1;
        if (m != 0) p = p * p;
    }
    return negative ? jet_inverse(acc) : acc;
}
// Non-integer exponents go through exp(p log(base)); negative and zero bases
// are rejected rather than silently branch-cut.
inline Jet2 jet_pow(const Jet2& base, const Jet2& p) {
    if (!(base.v > 0.0)) throw DomainError("non-integer power of non-positive base");
    return jet_exp(p * jet_log(base));
}

// Complex value and first derivative with respect to w (dual number over C).
struct CJet1 {
    std::complex<double> v{};
    std::complex<double> d{};

    static CJet1 constant(std::complex<double> c) { return {c, {0.0, 0.0}}; }
    static CJet1 var(std::complex<double> w) { return {w, {1.0, 0.0}}; }

    bool finite() const {
        return std::isfinite(v.real()) && std::isfinite(v.imag()) &&
               std::isfinite(d.real()) && std::isfinite(d.imag());
    }
};

inline CJet1 operator+(const CJet1& a, const CJet1& b) { return {a.v + b.v, a.d + b.d}; }
inline CJet1 operator-(const CJet1& a, const CJet1& b) { return {a.v - b.v, a.d - b.d}; }
inline CJet1 operator-(const CJet1& a) { return {-a.v, -a.d}; }
inline CJet1 operator*(const CJet1& a, const CJet1& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}
inline CJet1 operator/(const CJet1& a, const CJet1& b) {
    if (b.v == std::complex<double>(0.0, 0.0)) throw DomainError("division by zero");
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

inline CJet1 cjet_chain(const CJet1& a, std::complex<double> g, std::complex<double> dg) {
    return {g, dg * a.d};
}

inline CJet1 cjet_exp(const CJet1& a) {
    const auto e = std::exp(a.v);
    return cjet_chain(a, e, e);
}
inline CJet1 cjet_log(const CJet1& a) {
    if (a.v == std::complex<double>(0.0, 0.0)) throw DomainError("log of zero");
    return cjet_chain(a, std::log(a.v), 1.0 / a.v);
}
inline CJet1 cjet_sin(const CJet1& a) { return cjet_chain(a, std::sin(a.v), std::cos(a.v)); }
inline CJet1 cjet_cos(const CJet1& a) { return cjet_chain(a, std::cos(a.v), -std::sin(a.v)); }
inline CJet1 cjet_tan(const CJet1& a) {
    const auto t = std::tan(a.v);
    return cjet_chain(a, t, 1.0 + t * t);
}
inline CJet1 cjet_sinh(const CJet1& a) { return cjet_chain(a, std::sinh(a.v), std::cosh(a.v)); }
inline CJet1 cjet_cosh(const CJet1& a) { return cjet_chain(a, std::cosh(a.v), std::sinh(a.v)); }
inline CJet1 cjet_sqrt(const CJet1& a) {
    if (a.v == std::complex<double>(0.0, 0.0)) {
        if (a.d == std::complex<double>(0.0, 0.0)) return CJet1::constant({0.0, 0.0});
        throw DomainError("sqrt derivative singular at zero");
    }
    const auto s = std::sqrt(a.v);
    return cjet_chain(a, s, 0.5 / s);
}

inline CJet1 cjet_pow_int(const CJet1& base, long long n) {
    if (n == 0) return CJet1::constant({1.0, 0.0});
    const bool negative = n < 0;
    unsigned long long m = negative ? 0ull - static_cast<unsigned long long>(n)
                                    : static_cast<unsigned long long>(n);
    CJet1 acc = CJet1::constant({1.0, 0.0});
    CJet1 p = base;
    while (m != 0) {
        if (m & 1ull) acc = acc * p;
        m >>= 1;
        if (m != 0) p = p * p;
    }
    if (!negative) return acc;
    return CJet1::constant({1.0, 0.0}) / acc;
}
inline CJet1 cjet_pow(const CJet1& base, const CJet1& p) {
    if (base.v == std::complex<double>(0.0, 0.0))
        throw DomainError("non-integer power of zero base");
    return cjet_exp(p * cjet_log(base));
}

}  // namespace minigraph
