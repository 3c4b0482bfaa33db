#pragma once

#include "spinorbit/determining.hpp"

namespace spinorbit {

// Checked-in transcriptions of the known closed-form determining systems for
// the first-order spin-orbit ansatz, written as zero-forms in the generator's
// own variable names. The spatial blocks quote A0, B0, C0 symbolically; the
// accessor substitutes their translation/rotation form before handing the
// equations out, matching what the generator does.

namespace reference {

// planar first-order block: the phi gradients, both sigma couplings
inline const char *planar_gradient_block[] = {
    "phi0_x + b1*V1 + (omega1*y + a1)*y*V1_x - (omega1*x - b1)*y*V1_y",
    "phi0_y - a1*V1 - (omega1*y + a1)*x*V1_x + (omega1*x - b1)*x*V1_y",
    "phi1_x + b0*V1 + (omega0*y + a0)*y*V1_x - (omega0*x - b0)*y*V1_y",
    "phi1_y - a0*V1 - (omega0*y + a0)*x*V1_x + (omega0*x - b0)*x*V1_y",
};

// planar zeroth-order block: the potential equations
inline const char *planar_potential_block[] = {
    "(omega0*y + a0)*V0_x + (-omega0*x + b0)*V0_y - (x*phi1_y - y*phi1_x)*V1",
    "(omega1*y + a1)*V0_x + (-omega1*x + b1)*V0_y - (x*phi0_y - y*phi0_x)*V1",
};

// spatial second-order block: the 18 quasilinear equations for the vector
// coefficients and V1
inline const char *spatial_second_block[] = {
    "2*z*A1*V1 + A3_x",
    "2*y*A1*V1 + A2_x",
    "2*x*B2*V1 + B1_y",
    "2*z*B2*V1 + B3_y",
    "2*x*C3*V1 + C1_z",
    "2*y*C3*V1 + C2_z",
    "2*V1*(y*A2 + z*A3) - A1_x",
    "2*V1*(x*B1 + z*B3) - B2_y",
    "2*V1*(x*C1 + y*C2) - C3_z",
    "2*z*V1*(A2 + B1) + A3_y + B3_x",
    "2*y*V1*(A3 + C1) + A2_z + C2_x",
    "2*x*V1*(B3 + C2) + B1_z + C1_y",
    "2*V1*(x*A1 + y*A2 - z*C1) - A3_z - C3_x",
    "2*V1*(x*B1 + y*B2 - z*C2) - B3_z - C3_y",
    "2*V1*(x*A2 - y*B2 - z*B3) + A1_y + B1_x",
    "2*V1*(x*A1 + z*A3 - y*B1) - A2_y - B2_x",
    "2*V1*(x*A3 - y*C2 - z*C3) + A1_z + C1_x",
    "2*V1*(y*B3 - x*C1 - z*C3) + B2_z + C2_y",
};

// spatial first-order block, sigma part: 9 quasilinear equations for V1 and
// the phis
inline const char *spatial_first_sigma_block[] = {
    "V1*(b1 - a3*y + 2*y*phi3) + x*(A0*V1_x + B0*V1_y + C0*V1_z) + phi2_z",
    "V1*(b1 + a2*z - 2*z*phi2) + x*(A0*V1_x + B0*V1_y + C0*V1_z) - phi3_y",
    "V1*(b2 - a1*z + 2*z*phi1) + y*(A0*V1_x + B0*V1_y + C0*V1_z) + phi3_x",
    "V1*(b2 + a3*x - 2*x*phi3) + y*(A0*V1_x + B0*V1_y + C0*V1_z) - phi1_z",
    "V1*(b3 - a2*x + 2*x*phi2) + z*(A0*V1_x + B0*V1_y + C0*V1_z) + phi1_y",
    "V1*(b3 + a1*y - 2*y*phi1) + z*(A0*V1_x + B0*V1_y + C0*V1_z) - phi2_x",
    "V1*(a2*y + a3*z - 2*y*phi2 - 2*z*phi3) + phi1_x",
    "V1*(a1*x + a3*z - 2*x*phi1 - 2*z*phi3) + phi2_y",
    "V1*(a1*x + a2*y - 2*x*phi1 - 2*y*phi2) + phi3_z",
};

// spatial first-order block, identity part: the 3 phi0 gradient equations
inline const char *spatial_first_phi0_block[] = {
    "phi0_x - V1*((y*A3_x - x*A3_y) + (x*A2_z - z*A2_x) + (z*A1_y - y*A1_z) + (C2 - B3))"
    " - V1_x*(z*A2 - y*A3) - V1_y*(z*B2 - y*B3) - V1_z*(z*C2 - y*C3)",
    "phi0_y - V1*((y*B3_x - x*B3_y) + (x*B2_z - z*B2_x) + (z*B1_y - y*B1_z) + (A3 - C1))"
    " - V1_x*(x*A3 - z*A1) - V1_y*(x*B3 - z*B1) - V1_z*(x*C3 - z*C1)",
    "phi0_z - V1*((y*C3_x - x*C3_y) + (x*C2_z - z*C2_x) + (z*C1_y - y*C1_z) + (B1 - A2))"
    " - V1_x*(y*A1 - x*A2) - V1_y*(y*B1 - x*B2) - V1_z*(y*C1 - x*C2)",
};

}  // namespace reference

// Parses a reference block over the determining context of the given mode,
// applying the same staged substitution the generator uses.
inline std::vector<Expression> reference_block(Mode mode, Stage stage) {
    ContextPtr ctx = determining_context(mode);
    std::vector<const char *> texts;
    if (mode == Mode::planar && stage == Stage::first)
        texts.assign(std::begin(reference::planar_gradient_block),
                     std::end(reference::planar_gradient_block));
    else if (mode == Mode::planar && stage == Stage::zeroth)
        texts.assign(std::begin(reference::planar_potential_block),
                     std::end(reference::planar_potential_block));
    else if (mode == Mode::spatial && stage == Stage::second)
        texts.assign(std::begin(reference::spatial_second_block),
                     std::end(reference::spatial_second_block));
    else if (mode == Mode::spatial && stage == Stage::first) {
        texts.assign(std::begin(reference::spatial_first_sigma_block),
                     std::end(reference::spatial_first_sigma_block));
        texts.insert(texts.end(), std::begin(reference::spatial_first_phi0_block),
                     std::end(reference::spatial_first_phi0_block));
    } else {
        throw Error("no transcribed reference exists for this block");
    }
    Bindings killing = detail::stage_substitution(ctx, mode);
    std::vector<Expression> out;
    for (const char *t : texts) {
        Expression e = parse_expr(t, ctx);
        if (mode == Mode::spatial)
            e = substitute(e, killing);
        out.push_back(std::move(e));
    }
    return out;
}

inline bool has_reference_block(Mode mode, Stage stage) {
    return !(stage == Stage::zeroth && mode == Mode::spatial) &&
           !(stage == Stage::second && mode == Mode::planar);
}

}  // namespace spinorbit
