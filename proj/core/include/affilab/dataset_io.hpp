#pragma once

// Dataset persistence (a directory of CSVs plus the world tables) and the
// derived training corpora for the structure generator and the residue
// classifier.

#include <cstdint>
#include <string>
#include <vector>

#include "affilab/flow.hpp"
#include "affilab/inverse_folding.hpp"
#include "affilab/rng.hpp"
#include "affilab/tables.hpp"
#include "affilab/world.hpp"

namespace affilab {

// Layout under `dir` (see docs/formats.md):
//   registry.csv  id, role (antibody|antigen), sequence
//   energies.csv  antigen_id, antibody_id, delta_g, delta_g_noisy, is_outlier
//   labels.csv    antigen_id, antibody_id, delta_g
//   splits.csv    antigen_id, split (train|heldout)
//   tables/       theta, phi, interaction, markov, markov_init as plain-text
//                 matrices with a one-line "rows cols" header
void save_dataset(const std::string& dir, const Dataset& ds,
                  const WorldTables& tables = baked_tables());

// Inverse of save_dataset; `world` supplies the layout parameters the
// directory does not store.  Throws std::runtime_error on missing files,
// malformed rows, or sequence lengths that contradict the world config.
Dataset load_dataset(const std::string& dir, const WorldConfig& world);

// FNV-1a over a canonical text rendering of sequences, measurements, and the
// split; stamped into checkpoint manifests so consumers can match models to
// their training data.
std::uint64_t dataset_hash(const Dataset& ds);

// Training corpus for the structure generator: `count` ensemble snapshots of
// complexes over uniformly drawn (antigen from the given ids, any antibody)
// pairs.
std::vector<FlowTrainExample> build_flow_corpus(const SequenceRegistry& registry,
                                                const std::vector<std::uint32_t>& antigen_ids,
                                                int count, double fluctuation_scale, Rng& rng);

// Training corpus for the residue classifier, drawn the same way.
std::vector<IfExample> build_if_corpus(const SequenceRegistry& registry,
                                       const std::vector<std::uint32_t>& antigen_ids, int count,
                                       double fluctuation_scale, Rng& rng);

} // namespace affilab
