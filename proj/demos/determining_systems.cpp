// Prints every determining system generated from [H, X] = 0 with the general
// first-order ansatz, in both coordinate modes.

#include <iostream>

#include "spinorbit/spinorbit.hpp"

using namespace spinorbit;

int main() {
    for (Mode mode : {Mode::planar, Mode::spatial}) {
        const char *space = mode == Mode::planar ? "2d" : "3d";
        for (const DeterminingSystem &sys : generate_all(mode)) {
            std::cout << "== " << space << " / " << stage_name(sys.stage) << " stage: "
                      << sys.equations.size() << " equations ==\n";
            for (const auto &e : sys.equations)
                std::cout << "  [" << e.origin() << "]  " << to_string(e.lhs) << " = 0\n";
            if (!sys.consequence_block.empty())
                std::cout << "  (+ " << sys.consequence_block.size()
                          << " vector-coefficient consequence parts)\n";
            std::cout << "\n";
        }
    }
    return 0;
}
