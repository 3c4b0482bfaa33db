#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spinorbit/symbol.hpp"

namespace spinorbit {

// Power product of symbols; factors sorted by the global symbol order,
// exponents strictly positive.
struct Monomial {
    std::vector<std::pair<Symbol, int>> factors;

    static Monomial unit() { return Monomial{}; }
    static Monomial of(const Symbol &s, int exp = 1) {
        Monomial m;
        if (exp != 0)
            m.factors.push_back({s, exp});
        return m;
    }

    bool is_unit() const { return factors.empty(); }
    int degree() const {
        int d = 0;
        for (const auto &[s, e] : factors)
            d += e;
        return d;
    }
    int exponent_of(const Symbol &s) const {
        for (const auto &[t, e] : factors)
            if (t == s)
                return e;
        return 0;
    }

    Monomial times(const Monomial &o) const {
        Monomial r;
        r.factors.reserve(factors.size() + o.factors.size());
        size_t i = 0, j = 0;
        while (i < factors.size() && j < o.factors.size()) {
            if (factors[i].first == o.factors[j].first) {
                int e = factors[i].second + o.factors[j].second;
                if (e != 0)
                    r.factors.push_back({factors[i].first, e});
                ++i, ++j;
            } else if (factors[i].first < o.factors[j].first) {
                r.factors.push_back(factors[i++]);
            } else {
                r.factors.push_back(o.factors[j++]);
            }
        }
        for (; i < factors.size(); ++i)
            r.factors.push_back(factors[i]);
        for (; j < o.factors.size(); ++j)
            r.factors.push_back(o.factors[j]);
        return r;
    }

    // Componentwise divisibility.
    bool divisible_by(const Monomial &d) const {
        for (const auto &[s, e] : d.factors)
            if (exponent_of(s) < e)
                return false;
        return true;
    }
    Monomial divide_by(const Monomial &d) const {
        Monomial r;
        for (const auto &[s, e] : factors) {
            int q = e - d.exponent_of(s);
            if (q != 0)
                r.factors.push_back({s, q});
        }
        return r;
    }

    friend bool operator==(const Monomial &a, const Monomial &b) { return a.factors == b.factors; }
};

// Graded lexicographic: total degree first, then the exponent vector in
// symbol order. Fixed so canonical prints are reproducible across runs.
inline int grlex_cmp(const Monomial &a, const Monomial &b) {
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da < db ? -1 : 1;
    size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const auto &[sa, ea] = a.factors[i];
        const auto &[sb, eb] = b.factors[j];
        if (sa == sb) {
            if (ea != eb)
                return ea < eb ? -1 : 1;
            ++i, ++j;
        } else if (sa < sb) {
            return 1;  // a has positive exponent at an earlier slot
        } else {
            return -1;
        }
    }
    if (i < a.factors.size())
        return 1;
    if (j < b.factors.size())
        return -1;
    return 0;
}

struct MonomialLess {
    bool operator()(const Monomial &a, const Monomial &b) const { return grlex_cmp(a, b) < 0; }
};

inline bool operator<(const Monomial &a, const Monomial &b) { return grlex_cmp(a, b) < 0; }

using Poly = std::map<Monomial, GaussianRational, MonomialLess>;

inline void poly_accumulate(Poly &p, const Monomial &m, const GaussianRational &c) {
    if (c.is_zero())
        return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero())
            p.erase(it);
    }
}

inline Poly poly_scalar(const GaussianRational &c) {
    Poly p;
    poly_accumulate(p, Monomial::unit(), c);
    return p;
}
inline Poly poly_symbol(const Symbol &s, int exp = 1) {
    Poly p;
    poly_accumulate(p, Monomial::of(s, exp), GaussianRational::one());
    return p;
}

inline bool poly_is_zero(const Poly &p) { return p.empty(); }

inline Poly poly_add(const Poly &a, const Poly &b) {
    Poly r = a;
    for (const auto &[m, c] : b)
        poly_accumulate(r, m, c);
    return r;
}
inline Poly poly_neg(const Poly &a) {
    Poly r;
    for (const auto &[m, c] : a)
        r.emplace(m, -c);
    return r;
}
inline Poly poly_sub(const Poly &a, const Poly &b) { return poly_add(a, poly_neg(b)); }
inline Poly poly_mul(const Poly &a, const Poly &b) {
    Poly r;
    for (const auto &[ma, ca] : a)
        for (const auto &[mb, cb] : b)
            poly_accumulate(r, ma.times(mb), ca * cb);
    return r;
}
inline Poly poly_scale(const Poly &a, const GaussianRational &c) {
    Poly r;
    if (c.is_zero())
        return r;
    for (const auto &[m, k] : a)
        r.emplace(m, k * c);
    return r;
}

// Leading term w.r.t. grlex (largest monomial).
inline std::pair<Monomial, GaussianRational> poly_leading(const Poly &p) {
    auto it = p.rbegin();
    return {it->first, it->second};
}

// Exact single-divisor division: returns the quotient iff n = q*d exactly.
inline std::optional<Poly> poly_exact_divide(const Poly &n, const Poly &d) {
    if (poly_is_zero(d))
        return std::nullopt;
    Poly r = n, q;
    auto [dm, dc] = poly_leading(d);
    while (!r.empty()) {
        auto [rm, rc] = poly_leading(r);
        if (!rm.divisible_by(dm))
            return std::nullopt;
        Monomial tm = rm.divide_by(dm);
        GaussianRational tc = rc / dc;
        poly_accumulate(q, tm, tc);
        for (const auto &[m, c] : d)
            poly_accumulate(r, tm.times(m), -(tc * c));
    }
    return q;
}

// d(symbol)/d(coordinate axis) following the declared jet rule; the result
// is always polynomial (jets stay jets, the chain rule brings in 2*c).
inline Poly symbol_derivative(const Symbol &s, int axis) {
    switch (s.kind) {
    case SymbolKind::coordinate:
        return s.axis() == axis ? poly_scalar(GaussianRational::one()) : Poly{};
    case SymbolKind::parameter:
        return Poly{};
    case SymbolKind::jet:
        break;
    }
    switch (s.rule) {
    case JetRule::free: {
        if (!s.deps[axis])
            return Poly{};
        Symbol next = s;
        next.alpha[axis] = static_cast<uint8_t>(next.alpha[axis] + 1);
        return poly_symbol(next);
    }
    case JetRule::radial: {
        Symbol next = s;
        next.radial_order = static_cast<uint8_t>(next.radial_order + 1);
        Poly p;
        Monomial m = Monomial::of(Symbol::coordinate(axis)).times(Monomial::of(next));
        poly_accumulate(p, m, GaussianRational::of(2));
        return p;
    }
    case JetRule::antiderivative: {
        if (axis != 0)
            return Poly{};
        // the integrand is by contract a free jet of x alone
        return poly_symbol(Symbol::free_jet(s.anti_of, {true, false, false}));
    }
    }
    return Poly{};
}

inline Poly poly_derivative(const Poly &p, int axis) {
    Poly r;
    for (const auto &[m, c] : p) {
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const auto &[s, e] = m.factors[i];
            Poly ds = symbol_derivative(s, axis);
            if (poly_is_zero(ds))
                continue;
            // c * e * s^(e-1) * ds * (other factors)
            Monomial rest;
            for (size_t j = 0; j < m.factors.size(); ++j) {
                if (j == i) {
                    if (e - 1 != 0)
                        rest = rest.times(Monomial::of(s, e - 1));
                } else {
                    rest = rest.times(Monomial::of(m.factors[j].first, m.factors[j].second));
                }
            }
            GaussianRational k = c * GaussianRational::of(e);
            for (const auto &[dm, dc] : ds)
                poly_accumulate(r, rest.times(dm), k * dc);
        }
    }
    return r;
}

inline Poly poly_conjugate(const Poly &p) {
    Poly r;
    for (const auto &[m, c] : p)
        r.emplace(m, c.conj());
    return r;
}

inline std::pair<Poly, Poly> poly_re_im(const Poly &p) {
    Poly re, im;
    for (const auto &[m, c] : p) {
        if (c.re != 0)
            re.emplace(m, GaussianRational(c.re));
        if (c.im != 0)
            im.emplace(m, GaussianRational(c.im));
    }
    return {re, im};
}

}  // namespace spinorbit
