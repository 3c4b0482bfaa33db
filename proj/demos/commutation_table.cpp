// Builds the planar oscillator spin-orbit system and prints its structure
// constants, Casimir identities and the split spatial algebra.

#include <iostream>

#include "spinorbit/spinorbit.hpp"

using namespace spinorbit;

static void print_table(const StructureTable &t) {
    for (size_t i = 0; i < t.names.size(); ++i)
        for (size_t j = i + 1; j < t.names.size(); ++j) {
            std::cout << "  [" << t.names[i] << ", " << t.names[j] << "] = ";
            if (!t.entry[i][j]) {
                std::cout << "<not in span>\n";
                continue;
            }
            if (t.entry[i][j]->empty()) {
                std::cout << "0\n";
                continue;
            }
            bool first = true;
            for (const auto &[k, c] : *t.entry[i][j]) {
                if (!first)
                    std::cout << " + ";
                std::cout << "(" << to_string(c) << ")*" << k;
                first = false;
            }
            std::cout << "\n";
        }
}

int main() {
    SystemSpec s2 = build_superintegrable_2d();
    std::cout << "planar system, 8 generators:\n";
    StructureTable t2 = commutation_table(generators_of(s2));
    print_table(t2);
    std::cout << "closed: " << t2.closed() << ", jacobi: " << jacobi_holds(t2) << "\n\n";

    for (const auto &item : casimir_check(s2))
        std::cout << (item.pass ? "PASS  " : "FAIL  ") << item.name << "\n";

    SystemSpec s3 = build_superintegrable_3d();
    std::cout << "\nspatial system, J-S / Pi / S basis:\n";
    StructureTable t3 = commutation_table(e3_o3_basis(s3));
    print_table(t3);
    std::cout << "closed: " << t3.closed() << ", jacobi: " << jacobi_holds(t3) << "\n";
    return 0;
}
