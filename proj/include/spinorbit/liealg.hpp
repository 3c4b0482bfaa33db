#pragma once

#include <optional>

#include "spinorbit/catalog.hpp"
#include "spinorbit/linsolve.hpp"

namespace spinorbit {

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct GeneratorSet {
    ContextPtr ctx;
    std::vector<std::pair<std::string, PauliOperator>> gens;

    size_t size() const { return gens.size(); }
    int index_of(const std::string &name) const {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].first == name)
                return static_cast<int>(i);
        return -1;
    }
};

inline GeneratorSet generators_of(const SystemSpec &s) {
    GeneratorSet g;
    g.ctx = s.ctx;
    g.gens = s.integrals;
    return g;
}

namespace detail {

// Power products of the declared constants up to the given degree;
// decomposition coefficients are sought in their span over Q(i).
inline std::vector<Monomial> param_monomials(const Context &ctx, int max_degree) {
    std::vector<Monomial> out = {Monomial::unit()};
    size_t lo = 0;
    for (int d = 1; d <= max_degree; ++d) {
        size_t hi = out.size();
        for (size_t k = lo; k < hi; ++k)
            for (const auto &p : ctx.parameters)
                out.push_back(out[k].times(Monomial::of(Symbol::parameter(p))));
        lo = hi;
    }
    // dedupe (products commute)
    std::vector<Monomial> uniq;
    for (auto &m : out) {
        bool seen = false;
        for (const auto &u : uniq)
            if (u == m)
                seen = true;
        if (!seen)
            uniq.push_back(std::move(m));
    }
    return uniq;
}

struct SlotKey {
    int sigma;
    DerivIndex d;
    bool operator<(const SlotKey &o) const {
        if (sigma != o.sigma)
            return sigma < o.sigma;
        return DerivIndexLess{}(d, o.d);
    }
};

}  // namespace detail

struct Decomposition {
    bool in_span = false;
    std::map<std::string, Expression> coefficients;  // generator name -> scalar
    std::string failure;                             // diagnostic when not in span
};

// Writes P as a linear combination of the generators with coefficients that
// are Gaussian rationals extended by the declared constants.
inline Decomposition decompose(const PauliOperator &p, const GeneratorSet &gens,
                               int max_param_degree = 2) {
    const ContextPtr &ctx = gens.ctx;
    std::vector<Monomial> pmono = detail::param_monomials(*ctx, max_param_degree);
    const size_t k = gens.size(), m = pmono.size();
    const size_t nvars = k * m;

    // collect slots
    std::set<detail::SlotKey> slots;
    auto note_slots = [&](const PauliOperator &q) {
        for (int mu = 0; mu < 4; ++mu)
            for (const auto &[d, c] : q.component(mu).terms())
                slots.insert({mu, d});
    };
    note_slots(p);
    for (const auto &[n, g] : gens.gens)
        note_slots(g);

    // rows indexed by (slot, monomial of the common-denominator numerator)
    std::map<std::pair<detail::SlotKey, Monomial>, size_t> row_of;
    std::vector<Vec> rows;
    Vec rhs;
    auto row_index = [&](const detail::SlotKey &s, const Monomial &mono) {
        auto key = std::make_pair(s, mono);
        auto it = row_of.find(key);
        if (it != row_of.end())
            return it->second;
        size_t idx = rows.size();
        row_of.emplace(key, idx);
        rows.push_back(Vec(nvars, GaussianRational::zero()));
        rhs.push_back(GaussianRational::zero());
        return idx;
    };

    for (const auto &slot : slots) {
        // common denominator over this slot
        DenMap lcm;
        auto widen = [&](const Expression &e) {
            for (const auto &[i, exp] : e.den()) {
                auto it = lcm.find(i);
                if (it == lcm.end())
                    lcm[i] = exp;
                else
                    it->second = std::max(it->second, exp);
            }
        };
        Expression ep = p.component(slot.sigma).coefficient(slot.d);
        widen(ep);
        std::vector<Expression> eg;
        for (const auto &[n, g] : gens.gens) {
            eg.push_back(g.component(slot.sigma).coefficient(slot.d));
            widen(eg.back());
        }
        auto lift = [&](const Expression &e) {
            DenMap diff;
            for (const auto &[i, exp] : lcm) {
                int have = 0;
                auto it = e.den().find(i);
                if (it != e.den().end())
                    have = it->second;
                if (exp - have)
                    diff[i] = exp - have;
            }
            return poly_mul(e.num(), detail::den_to_poly(*ctx, diff));
        };
        Poly np = lift(ep);
        for (const auto &[mono, c] : np)
            rhs[row_index(slot, mono)] = c;
        for (size_t gi = 0; gi < k; ++gi) {
            Poly ng = lift(eg[gi]);
            for (size_t mi = 0; mi < m; ++mi) {
                for (const auto &[mono, c] : ng) {
                    size_t r = row_index(slot, pmono[mi].times(mono));
                    rows[r][gi * m + mi] += c;
                }
            }
        }
    }

    LinearSolution sol = solve_linear(rows, rhs);
    Decomposition out;
    if (!sol.consistent) {
        out.failure = "operator is not in the span of the generators";
        return out;
    }
    if (!sol.unique) {
        // a nontrivial null combination certifies the dependence
        std::string combo;
        const Vec &null = sol.nullspace.front();
        for (size_t gi = 0; gi < k; ++gi) {
            Poly cp;
            for (size_t mi = 0; mi < m; ++mi)
                poly_accumulate(cp, pmono[mi], null[gi * m + mi]);
            if (!poly_is_zero(cp)) {
                if (!combo.empty())
                    combo += " , ";
                combo += gens.gens[gi].first + ": " +
                         to_string(Expression::make(ctx, cp));
            }
        }
        throw Error("dependent generator set; null combination: " + combo);
    }
    out.in_span = true;
    for (size_t gi = 0; gi < k; ++gi) {
        Poly cp;
        for (size_t mi = 0; mi < m; ++mi)
            poly_accumulate(cp, pmono[mi], sol.solution[gi * m + mi]);
        Expression c = Expression::make(ctx, std::move(cp));
        if (!c.is_zero())
            out.coefficients.emplace(gens.gens[gi].first, std::move(c));
    }
    return out;
}

// Full table of structure constants c_{ij}^k with [g_i, g_j] = sum c g_k.
struct StructureTable {
    ContextPtr ctx;
    std::vector<std::string> names;
    // entry[i][j]: decomposition of [g_i, g_j]; nullopt marks "not in span"
    std::vector<std::vector<std::optional<std::map<std::string, Expression>>>> entry;
    std::vector<std::string> closure_failures;

    bool closed() const { return closure_failures.empty(); }

    Expression constant(size_t i, size_t j, const std::string &k) const {
        if (!entry[i][j])
            return Expression::zero(ctx);
        auto it = entry[i][j]->find(k);
        return it == entry[i][j]->end() ? Expression::zero(ctx) : it->second;
    }
};

inline StructureTable commutation_table(const GeneratorSet &gens, int max_param_degree = 2) {
    StructureTable t;
    t.ctx = gens.ctx;
    for (const auto &[n, g] : gens.gens)
        t.names.push_back(n);
    size_t n = gens.size();
    t.entry.assign(n, std::vector<std::optional<std::map<std::string, Expression>>>(n));
    for (size_t i = 0; i < n; ++i) {
        t.entry[i][i] = std::map<std::string, Expression>{};
        for (size_t j = i + 1; j < n; ++j) {
            PauliOperator k = commutator(gens.gens[i].second, gens.gens[j].second);
            Decomposition d = decompose(k, gens, max_param_degree);
            if (!d.in_span) {
                t.closure_failures.push_back("[" + t.names[i] + ", " + t.names[j] +
                                             "] is not in the span; residual: " +
                                             first_nonzero_coefficient(k));
                continue;
            }
            t.entry[i][j] = d.coefficients;
            std::map<std::string, Expression> neg;
            for (const auto &[name, c] : d.coefficients)
                neg.emplace(name, -c);
            t.entry[j][i] = std::move(neg);
        }
    }
    return t;
}

// Jacobi identity on the stored constants, as exact scalar identities.
inline bool jacobi_holds(const StructureTable &t, std::string *failure = nullptr) {
    size_t n = t.names.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                if (!t.entry[i][j] || !t.entry[j][k] || !t.entry[i][k])
                    return false;
                for (const auto &l : t.names) {
                    Expression acc = Expression::zero(t.ctx);
                    for (size_t m = 0; m < n; ++m) {
                        acc += t.constant(j, k, t.names[m]) * t.constant(i, m, l);
                        acc += t.constant(k, i, t.names[m]) * t.constant(j, m, l);
                        acc += t.constant(i, j, t.names[m]) * t.constant(k, m, l);
                    }
                    if (!acc.is_zero()) {
                        if (failure)
                            *failure = "jacobi fails on (" + t.names[i] + "," + t.names[j] +
                                       "," + t.names[k] + ") -> " + l;
                        return false;
                    }
                }
            }
    return true;
}

// One expected bracket: [a, b] = sum_k rhs_k g_k.
struct Relation {
    std::string a, b;
    std::map<std::string, Expression> rhs;
    std::string family;
};

struct RelationReport {
    std::vector<CheckItem> items;
    std::vector<std::string> surplus;  // nonzero brackets the expectation list omits
    bool all_pass() const {
        for (const auto &i : items)
            if (!i.pass)
                return false;
        return true;
    }
};

inline RelationReport verify_relations(const StructureTable &t,
                                       const std::vector<Relation> &expected) {
    RelationReport rep;
    std::set<std::pair<int, int>> covered;
    for (const auto &rel : expected) {
        int i = -1, j = -1;
        for (size_t k = 0; k < t.names.size(); ++k) {
            if (t.names[k] == rel.a)
                i = static_cast<int>(k);
            if (t.names[k] == rel.b)
                j = static_cast<int>(k);
        }
        CheckItem item;
        item.name = rel.family + ": [" + rel.a + ", " + rel.b + "]";
        if (i < 0 || j < 0) {
            item.pass = false;
            item.detail = "unknown generator name";
            rep.items.push_back(item);
            continue;
        }
        covered.insert({std::min(i, j), std::max(i, j)});
        if (!t.entry[i][j]) {
            item.pass = false;
            item.detail = "bracket not in span";
            rep.items.push_back(item);
            continue;
        }
        bool ok = true;
        std::string diff;
        for (const auto &name : t.names) {
            Expression want = Expression::zero(t.ctx);
            auto it = rel.rhs.find(name);
            if (it != rel.rhs.end())
                want = it->second;
            Expression got = t.constant(i, j, name);
            if (!(want == got)) {
                ok = false;
                diff += " " + name + ": got " + to_string(got) + ", expected " + to_string(want);
            }
        }
        item.pass = ok;
        item.detail = ok ? "" : diff;
        rep.items.push_back(item);
    }
    for (size_t i = 0; i < t.names.size(); ++i)
        for (size_t j = i + 1; j < t.names.size(); ++j) {
            if (covered.count({static_cast<int>(i), static_cast<int>(j)}))
                continue;
            if (t.entry[i][j] && !t.entry[i][j]->empty())
                rep.surplus.push_back("[" + t.names[i] + ", " + t.names[j] + "] != 0");
        }
    return rep;
}

// Known closed-form relations of the planar algebra: within each sign family
// [L,X] = 2iY, [L,Y] = -2iX, [X,Y] = +-4 i gamma I, I central; the two
// families commute elementwise. (Derived once by expansion; the computed
// table is the ground truth these are checked against.)
inline std::vector<Relation> expected_relations_2d(const SystemSpec &s) {
    const ContextPtr &ctx = s.ctx;
    Expression gamma = s.v1;  // the coupling constant of the oscillator system
    auto sc = [&](GaussianRational c) { return Expression::scalar(ctx, c); };
    std::vector<Relation> rels;
    for (int sgn : {+1, -1}) {
        std::string tag = sgn > 0 ? "+" : "-";
        std::string fam = "family " + tag;
        rels.push_back({"L" + tag, "X" + tag,
                        {{"Y" + tag, sc(GaussianRational::of(2) * GaussianRational::i())}},
                        fam});
        rels.push_back({"L" + tag, "Y" + tag,
                        {{"X" + tag, sc(GaussianRational::of(-2) * GaussianRational::i())}},
                        fam});
        rels.push_back({"X" + tag, "Y" + tag,
                        {{"I" + tag, GaussianRational::of(4 * sgn) * GaussianRational::i() * gamma}},
                        fam});
        for (const char *g : {"L", "X", "Y"})
            rels.push_back({"I" + tag, g + tag, {}, "central I" + tag});
        rels.push_back({"I" + tag, "I" + (sgn > 0 ? std::string("-") : std::string("+")), {},
                        "central I" + tag});
    }
    for (const char *a : {"L+", "X+", "Y+"})
        for (const char *b : {"L-", "X-", "Y-"})
            rels.push_back({a, b, {}, "cross family"});
    return rels;
}

// Basis {K_i = J_i - S_i, Pi_i, S_i} exhibiting e(3) + o(3).
inline GeneratorSet e3_o3_basis(const SystemSpec &s) {
    GeneratorSet g;
    g.ctx = s.ctx;
    for (int i = 1; i <= 3; ++i) {
        std::string n = std::to_string(i);
        g.gens.push_back({"K" + n, s.integral("J" + n) - s.integral("S" + n)});
    }
    for (int i = 1; i <= 3; ++i)
        g.gens.push_back({"Pi" + std::to_string(i), s.integral("Pi" + std::to_string(i))});
    for (int i = 1; i <= 3; ++i)
        g.gens.push_back({"S" + std::to_string(i), s.integral("S" + std::to_string(i))});
    return g;
}

// The five relation families of the spatial algebra on the K/Pi/S basis,
// plus the o(3) relations of the S span implied by the direct-sum claim.
inline std::vector<Relation> expected_relations_3d(const SystemSpec &s) {
    const ContextPtr &ctx = s.ctx;
    Expression hb = hbar_factor(ctx, s.hbar);
    std::vector<Relation> rels;
    auto eps_rhs = [&](const std::string &prefix, int i, int j) {
        std::map<std::string, Expression> rhs;
        for (int k = 0; k < 3; ++k) {
            int e = epsilon3(i, j, k);
            if (e)
                rhs.emplace(prefix + std::to_string(k + 1),
                            GaussianRational::of(e) * GaussianRational::i() * hb);
        }
        return rhs;
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::string si = std::to_string(i + 1), sj = std::to_string(j + 1);
            rels.push_back({"K" + si, "S" + sj, {}, "[J-S, S] = 0"});
            if (i < j) {
                rels.push_back({"Pi" + si, "S" + sj, {}, "[Pi, S] = 0"});
                rels.push_back({"Pi" + sj, "S" + si, {}, "[Pi, S] = 0"});
                rels.push_back({"Pi" + si, "Pi" + sj, {}, "[Pi, Pi] = 0"});
                rels.push_back(
                    {"K" + si, "K" + sj, eps_rhs("K", i, j), "[J-S, J-S] = i eps (J-S)"});
                rels.push_back({"S" + si, "S" + sj, eps_rhs("S", i, j), "[S, S] = i eps S"});
            }
            if (i != j)
                rels.push_back({"K" + si, "Pi" + sj, eps_rhs("Pi", i, j), "[J-S, Pi] = i eps Pi"});
        }
    return rels;
}

// Casimir elements of the planar algebra: C = X^2 + Y^2 +- 4 gamma L I per
// family; they commute with everything and reassemble the Hamiltonian as
// H = (C+ + C-)/8.
inline std::vector<CheckItem> casimir_check(const SystemSpec &s) {
    if (s.id != "2d-superintegrable")
        throw Error("casimir check applies to the 2d-superintegrable system");
    Expression gamma = s.v1;
    std::vector<CheckItem> items;
    std::map<std::string, PauliOperator> c;
    for (int sgn : {+1, -1}) {
        std::string tag = sgn > 0 ? "+" : "-";
        const PauliOperator &x = s.integral("X" + tag);
        const PauliOperator &y = s.integral("Y" + tag);
        const PauliOperator &l = s.integral("L" + tag);
        const PauliOperator &ii = s.integral("I" + tag);
        c.emplace("C" + tag, x * x + y * y +
                                 (GaussianRational::of(4 * sgn) * gamma) * (l * ii));
    }
    for (const auto &[cn, cop] : c)
        for (const auto &[gn, g] : s.integrals) {
            PauliOperator k = commutator(cop, g);
            items.push_back({"[" + cn + ", " + gn + "] = 0", k.is_zero(),
                             k.is_zero() ? "" : first_nonzero_coefficient(k)});
        }
    {
        PauliOperator k = commutator(c.at("C+"), c.at("C-"));
        items.push_back({"[C+, C-] = 0", k.is_zero(),
                         k.is_zero() ? "" : first_nonzero_coefficient(k)});
    }
    {
        PauliOperator recon =
            s.hamiltonian - GaussianRational::of(1, 8) * (c.at("C+") + c.at("C-"));
        items.push_back({"H = (C+ + C-)/8", recon.is_zero(),
                         recon.is_zero() ? "" : first_nonzero_coefficient(recon)});
    }
    return items;
}

}  // namespace spinorbit
