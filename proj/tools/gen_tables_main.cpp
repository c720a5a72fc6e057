// Emits core/src/baked_tables.cpp: the committed world tables, generated from
// the pinned seed.  Run once and commit the output; the library never
// regenerates tables at runtime.
//
//   ./gen_tables > ../core/src/baked_tables.cpp

#include <cstdio>

#include "affilab/tables.hpp"

using affilab::WorldTables;

namespace {

void print_array(const char* name, const double* v, int n) {
    std::printf("constexpr std::array<double, %d> %s = {\n", n, name);
    for (int i = 0; i < n; ++i) {
        std::printf("    %.17g,\n", v[i]);
    }
    std::printf("};\n\n");
}

void print_matrix(const char* name, const std::array<std::array<double, 20>, 20>& m) {
    std::printf("constexpr std::array<std::array<double, 20>, 20> %s = {{\n", name);
    for (int a = 0; a < 20; ++a) {
        std::printf("    {{");
        for (int b = 0; b < 20; ++b) {
            std::printf("%.17g%s", m[a][b], b + 1 < 20 ? ", " : "");
        }
        std::printf("}},\n");
    }
    std::printf("}};\n\n");
}

} // namespace

int main() {
    const WorldTables t = affilab::generate_tables(affilab::kWorldTableSeed);

    std::printf("// Generated by tools/gen_tables from seed 0x%llX.  Do not edit by hand;\n",
                static_cast<unsigned long long>(affilab::kWorldTableSeed));
    std::printf("// regenerate with `gen_tables > core/src/baked_tables.cpp` if the genesis\n");
    std::printf("// procedure in tables_gen.cpp ever changes.\n\n");
    std::printf("#include \"affilab/tables.hpp\"\n\n");
    std::printf("namespace affilab {\n\n");
    std::printf("namespace {\n\n");

    print_array("kTheta", t.theta.data(), 20);
    print_array("kPhi", t.phi.data(), 20);
    print_matrix("kW", t.w);
    print_matrix("kMarkov", t.markov);
    print_array("kMarkovInit", t.markov_init.data(), 20);

    std::printf("} // namespace\n\n");
    std::printf("const WorldTables& baked_tables() {\n");
    std::printf("    static const WorldTables t{kTheta, kPhi, kW, kMarkov, kMarkovInit};\n");
    std::printf("    return t;\n");
    std::printf("}\n\n");
    std::printf("} // namespace affilab\n");
    return 0;
}
