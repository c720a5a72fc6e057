#include "affilab/tables.hpp"

#include <numbers>

#include "affilab/rng.hpp"
#include "affilab/sequence.hpp"

namespace affilab {

WorldTables generate_tables(std::uint64_t seed) {
    WorldTables t{};
    Rng root(seed);

    // Turning angles in [0.6, 2.1] rad keep the walk compactly coiled so that
    // CDR and antigen residues land within contact range of each other.
    // Glycine is pinned straight (theta = 0).
    Rng ang = root.child(0);
    const std::uint8_t gly = residue_index('G');
    for (int a = 0; a < kNumResidueTypes; ++a) {
        t.theta[a] = (a == gly) ? 0.0 : ang.uniform(0.6, 2.1);
        t.phi[a] = ang.uniform(-std::numbers::pi, std::numbers::pi);
    }

    // Symmetric interaction table with an additive per-type component plus
    // symmetric noise: w(a,b) = (u_a + u_b)/2 + eps_ab.  The additive part
    // gives antibodies a binding-quality component that transfers across
    // antigens; the noise keeps pairings antigen-specific.
    Rng wt = root.child(1);
    std::array<double, 20> u{};
    for (auto& v : u) v = wt.gaussian_ih12();
    for (int a = 0; a < kNumResidueTypes; ++a) {
        for (int b = a; b < kNumResidueTypes; ++b) {
            const double eps = 0.5 * wt.gaussian_ih12();
            const double val = 0.5 * (u[a] + u[b]) + eps;
            t.w[a][b] = val;
            t.w[b][a] = val;
        }
    }

    // Markov transitions: squared shifted uniforms, row-normalized.  The
    // squaring sharpens rows away from uniform so naturalness is
    // discriminative.  Initial distribution is uniform.
    Rng mk = root.child(2);
    for (int a = 0; a < kNumResidueTypes; ++a) {
        double sum = 0.0;
        for (int b = 0; b < kNumResidueTypes; ++b) {
            const double r = 0.05 + mk.uniform();
            t.markov[a][b] = r * r;
            sum += t.markov[a][b];
        }
        for (int b = 0; b < kNumResidueTypes; ++b) t.markov[a][b] /= sum;
        t.markov_init[a] = 1.0 / kNumResidueTypes;
    }

    return t;
}

} // namespace affilab
