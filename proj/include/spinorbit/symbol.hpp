#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>

#include "spinorbit/scalar.hpp"

namespace spinorbit {

inline const char *axis_name(int axis) {
    static const char *names[3] = {"x", "y", "z"};
    return names[axis];
}

enum class SymbolKind : uint8_t { coordinate = 0, parameter = 1, jet = 2 };

// How a formal function symbol reacts to coordinate differentiation.
//   free           : d/dc shifts the multi-index (0 outside its dependency set)
//   radial         : depends on u = x^2+y^2(+z^2) only; d/dc f^(k) = 2c f^(k+1)
//   antiderivative : d/dx W = the named integrand jet, d/dy = d/dz = 0
enum class JetRule : uint8_t { free = 0, radial = 1, antiderivative = 2 };

struct Symbol {
    SymbolKind kind = SymbolKind::parameter;
    std::string name;  // coordinate/parameter name, or jet base name
    JetRule rule = JetRule::free;
    std::array<uint8_t, 3> alpha{0, 0, 0};  // free jets: derivative multi-index
    uint8_t radial_order = 0;               // radial jets: number of d/du applied
    std::string anti_of;                    // antiderivative jets: integrand base name
    std::array<bool, 3> deps{false, false, false};  // free jets: allowed coordinates

    static Symbol coordinate(int axis) {
        Symbol s;
        s.kind = SymbolKind::coordinate;
        s.name = axis_name(axis);
        return s;
    }
    static Symbol parameter(std::string n) {
        Symbol s;
        s.kind = SymbolKind::parameter;
        s.name = std::move(n);
        return s;
    }
    static Symbol free_jet(std::string base, std::array<bool, 3> deps,
                           std::array<uint8_t, 3> alpha = {0, 0, 0}) {
        Symbol s;
        s.kind = SymbolKind::jet;
        s.rule = JetRule::free;
        s.name = std::move(base);
        s.deps = deps;
        s.alpha = alpha;
        return s;
    }
    static Symbol radial_jet(std::string base, uint8_t order = 0) {
        Symbol s;
        s.kind = SymbolKind::jet;
        s.rule = JetRule::radial;
        s.name = std::move(base);
        s.radial_order = order;
        return s;
    }
    static Symbol antiderivative_jet(std::string base, std::string integrand) {
        Symbol s;
        s.kind = SymbolKind::jet;
        s.rule = JetRule::antiderivative;
        s.name = std::move(base);
        s.anti_of = std::move(integrand);
        return s;
    }

    bool is_coordinate() const { return kind == SymbolKind::coordinate; }
    bool is_parameter() const { return kind == SymbolKind::parameter; }
    bool is_jet() const { return kind == SymbolKind::jet; }

    int axis() const {
        // coordinates only
        return name == "x" ? 0 : name == "y" ? 1 : 2;
    }

    int derivative_order() const {
        if (rule == JetRule::radial)
            return radial_order;
        return alpha[0] + alpha[1] + alpha[2];
    }

    // Printable / parseable name: base plus derivative suffix.
    std::string display() const {
        if (!is_jet())
            return name;
        if (rule == JetRule::radial) {
            if (radial_order == 0)
                return name;
            return name + "_" + std::string(radial_order, 'u');
        }
        if (rule == JetRule::free && derivative_order() > 0) {
            std::string out = name + "_";
            for (int a = 0; a < 3; ++a)
                out += std::string(alpha[a], axis_name(a)[0]);
            return out;
        }
        return name;
    }

    friend auto sym_key(const Symbol &s) {
        return std::tie(s.kind, s.name, s.rule, s.alpha, s.radial_order, s.anti_of);
    }
    friend bool operator==(const Symbol &a, const Symbol &b) { return sym_key(a) == sym_key(b); }
    friend bool operator!=(const Symbol &a, const Symbol &b) { return !(a == b); }
    // Global order: coordinates < parameters < jets, then alphabetical.
    friend bool operator<(const Symbol &a, const Symbol &b) { return sym_key(a) < sym_key(b); }
};

}  // namespace spinorbit
