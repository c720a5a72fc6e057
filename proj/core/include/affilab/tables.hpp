#pragma once

#include <array>
#include <cstdint>

namespace affilab {

// Fixed world tables: per-type turning/dihedral angles for the mean-structure
// walk, the symmetric residue-residue interaction table behind the binding
// energy, and the order-1 Markov chain that generates natural antibodies and
// scores naturalness.  The committed values in baked_tables.cpp were produced
// once by generate_tables(kWorldTableSeed) (see tools/gen_tables) and are not
// regenerated at runtime.
struct WorldTables {
    std::array<double, 20> theta;                 // turning angle per residue type, radians
    std::array<double, 20> phi;                   // dihedral angle per residue type, radians
    std::array<std::array<double, 20>, 20> w;     // symmetric interaction weights
    std::array<std::array<double, 20>, 20> markov;// row-stochastic transitions P(next | prev)
    std::array<double, 20> markov_init;           // initial distribution
};

inline constexpr std::uint64_t kWorldTableSeed = 0xAB5EED01ULL;

// Table genesis.  Uses only arithmetic with pinned IEEE semantics (no libm
// transcendentals), so the same seed reproduces the same values on any
// conforming platform.  Glycine's turning angle is fixed to 0 so poly-G walks
// are straight lines.
WorldTables generate_tables(std::uint64_t seed);

// The committed tables (generated from kWorldTableSeed).
const WorldTables& baked_tables();

} // namespace affilab
