#pragma once

// The alternating-optimization orchestrator: per antigen, repeat
// relax -> guided structure sampling -> mutation proposal -> post-selection,
// then pool and rank every candidate seen.  Also: metrics aggregation,
// ablation variants, and hyperparameter sweeps.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "affilab/config.hpp"
#include "affilab/csv.hpp"
#include "affilab/flow.hpp"
#include "affilab/guidance.hpp"
#include "affilab/inverse_folding.hpp"
#include "affilab/metrics.hpp"
#include "affilab/predictors.hpp"
#include "affilab/world.hpp"

namespace affilab {

struct PipelineModels {
    FlowModel flow;
    SeqPredictor seq;
    StructPredictor struct_pred;
    InverseFoldModel ifm;
};

// The maturation starting point for an antigen: the antibody with the median
// oracle energy against it (even count: the lower of the middle two scores;
// score ties broken by antibody id).
std::uint32_t wildtype_antibody(const SequenceRegistry& registry, std::uint32_t antigen_id);

struct DesignRecord {
    std::uint32_t antigen_id = 0;
    Sequence antibody;
    double oracle_dg = 0.0;
    double wildtype_dg = 0.0;
    double seq_score = 0.0;        // predictor score used for ranking
    int iteration = 0;             // iteration where the candidate was selected
    std::string mutation_path;     // e.g. "i1:10W+12Q;i2:9A"
    bool wildtype_fallback = false; // emitted because the candidate pool was empty
};

// One scored mutation proposal; when a sink is passed to run_maturation,
// every proposal is logged, not only the post-selected ones.
struct ProposalLogRow {
    std::uint32_t antigen_id = 0;
    int iteration = 0;
    int arity = 0;
    std::string positions;       // '+'-joined antibody positions
    std::string parent_hash;     // FNV-1a of the parent antibody string, hex
    std::string mutant_sequence; // the proposed antibody
    double seq_score = 0.0;
};

// Running per-knot means over every guided trajectory drawn during a
// maturation run (stays empty under the no_flow ablation).
struct TrajectoryStat {
    int step = 0;   // knot index along the schedule, 0 = the prior sample
    double t = 0.0; // flow time at the knot
    double mean_struct_score = 0.0;
    double mean_physics_energy = 0.0;
    std::size_t samples = 0;
};

// Runs the configured number of iterations per antigen (per-antigen child
// seed: mix_seed(seed, antigen_id)) and emits up to cfg.final_designs designs
// per antigen, ranked by sequence-predictor score.  Honors cfg.ablation.
// The optional sinks must start empty; rows/means accumulate in place.
std::vector<DesignRecord> run_maturation(const RunConfig& cfg, const PipelineModels& models,
                                         const SequenceRegistry& registry,
                                         const std::vector<std::uint32_t>& antigen_ids,
                                         std::uint64_t seed,
                                         std::vector<ProposalLogRow>* proposal_log = nullptr,
                                         std::vector<TrajectoryStat>* trajectory_log = nullptr);

struct MetricsReport {
    double imp = 0.0;
    double sim = 0.0;
    double nat = 0.0;
    bool nat_floored = false;
    std::vector<std::pair<std::uint32_t, double>> per_antigen_imp;
};

// IMP always against the exact oracle; Sim over CDR positions across antigen
// groups; Nat under the committed Markov chain.
MetricsReport compute_metrics(const std::vector<DesignRecord>& designs,
                              const SequenceRegistry& registry);

// Predictor checkpoints for the ablation grid: the co-taught pair (full), the
// supervised-only pair (no_energy), and the pair fine-tuned on unfiltered
// labels (no_selection).
struct AblationModelSet {
    PipelineModels full;
    SeqPredictor seq_supervised;
    StructPredictor struct_supervised;
    SeqPredictor seq_unfiltered;
    StructPredictor struct_unfiltered;
};

inline const std::vector<std::string>& ablation_variants() {
    static const std::vector<std::string> names = {"full",    "one_iteration", "no_pc",
                                                   "no_flow", "no_energy",     "no_selection"};
    return names;
}

struct AblationRow {
    std::string variant;
    std::uint64_t seed = 0;
    MetricsReport metrics;
};

// Every variant x every cfg.seeds entry, with shared per-antigen seed
// derivation so variants see identical randomness.
std::vector<AblationRow> run_ablations(const RunConfig& cfg, const AblationModelSet& models,
                                       const SequenceRegistry& registry,
                                       const std::vector<std::uint32_t>& antigen_ids);

struct SweepPoint {
    double value = 0.0; // grid value (gamma, or Euler step count)
    double imp = 0.0, sim = 0.0, nat = 0.0;                // medians over cfg.seeds
    double imp_norm = 0.0, sim_norm = 0.0, nat_norm = 0.0; // divided by the default row
};

// Guidance-strength sweep over cfg.sweep_gamma; the grid must contain the
// configured default gamma (the normalization anchor).
std::vector<SweepPoint> run_gamma_sweep(const RunConfig& cfg, const PipelineModels& models,
                                        const SequenceRegistry& registry,
                                        const std::vector<std::uint32_t>& antigen_ids);

// Euler-step-count sweep over cfg.sweep_steps.  The configured schedule is
// used at its own step count; other counts use evenly spaced levels.
std::vector<SweepPoint> run_steps_sweep(const RunConfig& cfg, const PipelineModels& models,
                                        const SequenceRegistry& registry,
                                        const std::vector<std::uint32_t>& antigen_ids);

// CSV shapes (column layouts documented in docs/formats.md).
CsvTable designs_to_csv(const std::vector<DesignRecord>& designs);
CsvTable metrics_to_csv(const MetricsReport& report);
CsvTable ablation_to_csv(const std::vector<AblationRow>& rows);
CsvTable sweep_to_csv(const std::vector<SweepPoint>& points, const std::string& parameter);
CsvTable proposals_to_csv(const std::vector<ProposalLogRow>& rows);
CsvTable trajectory_to_csv(const std::vector<TrajectoryStat>& stats);

} // namespace affilab
