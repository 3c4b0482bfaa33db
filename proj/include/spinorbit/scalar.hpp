#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace spinorbit {

// Base of all errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct DivisionError : Error {
    using Error::Error;
};
struct PoleError : Error {
    using Error::Error;
};
struct SubstitutionError : Error {
    using Error::Error;
};
struct VerificationError : Error {
    using Error::Error;
};
struct EngineError : Error {
    using Error::Error;
};

// Exact rational scalar. mpq_class keeps the canonical form (reduced,
// positive denominator) under arithmetic; only raw (num,den) construction
// needs an explicit canonicalize.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0)
        throw DivisionError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational &r) { return r.get_str(); }

// Exact complex rational a + b*i. Field operations are closed and exact;
// this is the full coefficient domain, no floating point anywhere.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long n) : re(n), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }
    static GaussianRational of(long num, long den = 1) {
        return GaussianRational(make_rational(num, den));
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_imaginary() const { return re == 0 && im != 0; }
    bool is_one() const { return im == 0 && re == 1; }

    GaussianRational conj() const { return {re, Rational(-im)}; }
    Rational norm() const { return re * re + im * im; }

    friend GaussianRational operator+(const GaussianRational &a, const GaussianRational &b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational &a, const GaussianRational &b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {Rational(-re), Rational(-im)}; }
    friend GaussianRational operator*(const GaussianRational &a, const GaussianRational &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational &a, const GaussianRational &b) {
        if (b.is_zero())
            throw DivisionError("division by zero scalar");
        Rational n = b.norm();
        GaussianRational t = a * b.conj();
        return {t.re / n, t.im / n};
    }
    GaussianRational &operator+=(const GaussianRational &b) {
        re += b.re;
        im += b.im;
        return *this;
    }
    GaussianRational &operator-=(const GaussianRational &b) {
        re -= b.re;
        im -= b.im;
        return *this;
    }
    GaussianRational &operator*=(const GaussianRational &b) { return *this = *this * b; }

    GaussianRational pow(unsigned k) const {
        GaussianRational acc = one(), base = *this;
        while (k) {
            if (k & 1)
                acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    friend bool operator==(const GaussianRational &a, const GaussianRational &b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational &a, const GaussianRational &b) {
        return !(a == b);
    }
};

// Debug/report form; the expression printer has its own sign-aware format.
inline std::string to_string(const GaussianRational &g) {
    if (g.is_zero())
        return "0";
    if (g.is_real())
        return to_string(g.re);
    std::string im_part = (g.im == 1) ? "i" : (g.im == -1) ? "-i" : to_string(g.im) + "*i";
    if (g.re == 0)
        return im_part;
    if (g.im > 0)
        return to_string(g.re) + "+" + im_part;
    return to_string(g.re) + im_part;
}

}  // namespace spinorbit
