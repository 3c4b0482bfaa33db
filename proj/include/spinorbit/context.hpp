#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "spinorbit/polynomial.hpp"

namespace spinorbit {

enum class Mode : uint8_t { planar = 2, spatial = 3 };

inline int coord_count(Mode m) { return m == Mode::planar ? 2 : 3; }

struct JetDecl {
    std::string name;
    JetRule rule = JetRule::free;
    std::array<bool, 3> deps{false, false, false};  // free jets
    std::string anti_of;                            // antiderivative jets

    static JetDecl free(std::string name, std::array<bool, 3> deps) {
        return JetDecl{std::move(name), JetRule::free, deps, {}};
    }
    static JetDecl radial(std::string name) {
        return JetDecl{std::move(name), JetRule::radial, {false, false, false}, {}};
    }
    static JetDecl antiderivative(std::string name, std::string integrand) {
        return JetDecl{std::move(name), JetRule::antiderivative, {false, false, false},
                       std::move(integrand)};
    }
};

// Declared symbol universe for one computation: the coordinate mode, the
// transcendental constants, the formal functions, and the registered
// denominator bases. Immutable once built; shared by value handles.
class Context {
  public:
    Mode mode = Mode::planar;
    std::vector<std::string> parameters;
    std::vector<JetDecl> jets;
    std::vector<Poly> den_bases;  // fixed reduction/printing order

    int n_coords() const { return coord_count(mode); }

    bool has_param(const std::string &n) const {
        return std::find(parameters.begin(), parameters.end(), n) != parameters.end();
    }
    const JetDecl *find_jet(const std::string &n) const {
        for (const auto &j : jets)
            if (j.name == n)
                return &j;
        return nullptr;
    }

    Symbol jet_symbol(const std::string &n) const {
        const JetDecl *d = find_jet(n);
        if (!d)
            throw Error("undeclared function symbol: " + n);
        switch (d->rule) {
        case JetRule::free:
            return Symbol::free_jet(d->name, d->deps);
        case JetRule::radial:
            return Symbol::radial_jet(d->name);
        case JetRule::antiderivative:
            return Symbol::antiderivative_jet(d->name, d->anti_of);
        }
        throw Error("bad jet declaration");
    }
};

using ContextPtr = std::shared_ptr<const Context>;

inline Poly radius_squared_poly(int n_coords) {
    Poly u;
    for (int a = 0; a < n_coords; ++a)
        poly_accumulate(u, Monomial::of(Symbol::coordinate(a), 2), GaussianRational::one());
    return u;
}

// Registered denominator bases: the coordinates, x^2+y^2, and (in 3D)
// x^2+y^2+z^2, plus whatever the caller registers. Anything else in a
// denominator is rejected loudly.
inline ContextPtr make_context(Mode mode, std::vector<std::string> parameters = {},
                               std::vector<JetDecl> jets = {},
                               std::vector<Poly> extra_bases = {}) {
    auto ctx = std::make_shared<Context>();
    ctx->mode = mode;
    ctx->parameters = std::move(parameters);
    ctx->jets = std::move(jets);
    for (const auto &p : ctx->parameters) {
        if (p.empty() || p == "i" || p == "x" || p == "y" || p == "z" ||
            p.find('_') != std::string::npos)
            throw Error("invalid parameter name: " + p);
    }
    for (const auto &j : ctx->jets) {
        if (j.name.empty() || j.name == "i" || j.name == "x" || j.name == "y" || j.name == "z" ||
            j.name.find('_') != std::string::npos)
            throw Error("invalid function name: " + j.name);
        if (ctx->has_param(j.name))
            throw Error("name declared as both constant and function: " + j.name);
        if (j.rule == JetRule::free) {
            for (int a = coord_count(mode); a < 3; ++a)
                if (j.deps[a])
                    throw Error("function " + j.name + " depends on a coordinate outside the mode");
        }
        if (j.rule == JetRule::antiderivative) {
            const JetDecl *t = ctx->find_jet(j.anti_of);
            if (!t || t->rule != JetRule::free || !t->deps[0] || t->deps[1] || t->deps[2])
                throw Error("antiderivative " + j.name +
                            " requires its integrand to be a declared function of x alone");
        }
    }
    int n = coord_count(mode);
    for (int a = 0; a < n; ++a)
        ctx->den_bases.push_back(poly_symbol(Symbol::coordinate(a)));
    ctx->den_bases.push_back(radius_squared_poly(2));
    if (mode == Mode::spatial)
        ctx->den_bases.push_back(radius_squared_poly(3));
    for (auto &p : extra_bases)
        ctx->den_bases.push_back(std::move(p));
    return ctx;
}

}  // namespace spinorbit
