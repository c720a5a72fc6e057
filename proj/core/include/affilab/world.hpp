#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "affilab/complex.hpp"
#include "affilab/geometry.hpp"
#include "affilab/rng.hpp"
#include "affilab/sequence.hpp"
#include "affilab/tables.hpp"

namespace affilab {

// Geometry/energy parameters of the synthetic world.
struct WorldConfig {
    int antibody_length = 24;
    int antigen_length = 16;
    std::vector<std::uint32_t> cdr_positions = {9, 10, 11, 12, 13, 14};
    int linker_repeats = 4;
    double sigma_contact = 2.0;     // Gaussian contact range in the energy
    double fluctuation_scale = 0.25;// ensemble displacement scale
};

struct NoiseConfig {
    double gaussian_sigma = 0.3;       // additive label noise
    double outlier_rate = 0.15;        // probability a record is an outlier
    double outlier_magnitude = 3.0;    // outliers add U(-m, m); default 10x sigma
};

struct EnergyRecord {
    std::uint32_t antigen_id = 0;
    std::uint32_t antibody_id = 0;
    double delta_g = 0.0;       // exact oracle value
    double delta_g_noisy = 0.0; // measurement with noise/outliers
    bool is_outlier = false;
};

struct LabeledPair {
    std::uint32_t antigen_id = 0;
    std::uint32_t antibody_id = 0;
    double delta_g = 0.0; // exact
};

// Deterministic mean structure: a unit-step torsion walk whose angles at bond
// i >= 1 are the per-type table values averaged over the residue window
// {i-1, i, i+1}.  Bond 0 points along +x from the origin.  Consecutive
// residue distance is exactly 1 (up to rounding).
Structure oracle_mean_structure(const Sequence& seq, const WorldTables& tables = baked_tables());

// Mean structure plus fluctuation_scale times chain-smoothed iid Gaussians
// (5-point moving average per coordinate, window clamped at the ends).
Structure oracle_ensemble_sample(const Sequence& seq, double fluctuation_scale, Rng& rng,
                                 const WorldTables& tables = baked_tables());

// Interaction sum over (CDR residue p, antigen residue q) pairs:
//   sum_pq w(type_p, type_q) * exp(-d_pq^2 / (2 sigma_c^2))
// with distances taken from the given complex structure.  Lower = stronger.
double binding_energy_given_structure(const ComplexLayout& layout, const Structure& x,
                                      double sigma_contact,
                                      const WorldTables& tables = baked_tables());

// Exact oracle: the interaction sum evaluated on the complex mean structure.
double oracle_binding_energy(const ComplexLayout& layout, double sigma_contact = 2.0,
                             const WorldTables& tables = baked_tables());

// Exact oracle plus N(0, sigma) noise; with probability outlier_rate the
// noise is replaced by U(-outlier_magnitude, +outlier_magnitude) and the
// record is flagged.
EnergyRecord noisy_binding_energy(std::uint32_t antigen_id, std::uint32_t antibody_id,
                                  const ComplexLayout& layout, const WorldConfig& world,
                                  const NoiseConfig& noise, Rng& rng,
                                  const WorldTables& tables = baked_tables());

// Natural-antibody generator: order-1 Markov chain over residue types using
// the committed transition table (uniform initial distribution).
Sequence sample_natural_antibody(int length, Rng& rng, const WorldTables& tables = baked_tables());

// Antigens come from an independent generator (iid uniform residues).
Sequence sample_antigen(int length, Rng& rng);

// All sequences of one generated world plus helpers to assemble complexes.
struct SequenceRegistry {
    WorldConfig world;
    std::vector<Sequence> antibodies;
    std::vector<Sequence> antigens;

    ComplexLayout layout_for(std::uint32_t antigen_id, std::uint32_t antibody_id) const;
    // Same layout but with the antibody replaced (used for mutants).
    ComplexLayout layout_for_antibody(std::uint32_t antigen_id, const Sequence& antibody) const;
};

struct DataConfig {
    int num_antibodies = 77;
    int num_antigens = 54;
    int num_labeled = 120;    // exact-label pairs, drawn from training antigens
    int heldout_antigens = 10;// final antigen ids reserved for evaluation
};

struct Dataset {
    SequenceRegistry registry;
    std::vector<EnergyRecord> records; // all A x B pairs, antigen-major order
    std::vector<LabeledPair> labels;   // exact labels on training antigens
    std::vector<std::uint32_t> train_antigens;
    std::vector<std::uint32_t> heldout_antigens;
};

// Samples sequences, measures every (antigen, antibody) pair once with noise,
// and draws the exact-label subset from training antigens.  Fully
// deterministic in (configs, rng seed).
Dataset generate_dataset(const WorldConfig& world, const DataConfig& data,
                         const NoiseConfig& noise, Rng& rng,
                         const WorldTables& tables = baked_tables());

} // namespace affilab
