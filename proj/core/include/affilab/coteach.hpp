#pragma once

// Co-teaching on noisy pairwise comparisons: each predictor filters the label
// set down to the comparisons it agrees with, and the other predictor
// fine-tunes on that filtered set, alternating for a fixed number of rounds.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "affilab/predictors.hpp"
#include "affilab/rng.hpp"
#include "affilab/world.hpp"

namespace affilab {

struct PairwiseLabel {
    std::uint32_t antigen_id = 0;
    std::uint32_t antibody_j = 0;
    std::uint32_t antibody_k = 0;
    double ddg = 0.0; // noisy ΔG(i,j) - ΔG(i,k)
    int y = 0;        // 1 iff ddg > 0, i.e. antibody k binds more strongly
};

// Per antigen: pairs_per_antigen unordered antibody pairs (j < k) drawn
// uniformly without replacement; |ddg| < tie_epsilon pairs dropped.  Requests
// beyond the available pair count are clamped (noted in warnings when given).
// Requires at least two antibodies per antigen.
std::vector<PairwiseLabel> build_pairs(const std::vector<EnergyRecord>& records,
                                       int pairs_per_antigen, double tie_epsilon, Rng& rng,
                                       std::vector<std::string>* warnings = nullptr);

// ΔĜ(antigen, antibody) under some predictor.  Scorers built by the helpers
// below hold references to their predictor, so parameter updates show through
// immediately; the predictor must outlive the scorer.
using PairScorer = std::function<double(std::uint32_t antigen_id, std::uint32_t antibody_id)>;

PairScorer make_seq_scorer(const SeqPredictor& f, const SequenceRegistry& registry);

// Geometry features per (antigen, antibody) complex are parameter-independent,
// so they are computed once and shared across filtering and fine-tuning.
class StructGeoCache {
public:
    StructGeoCache(const SequenceRegistry& registry, std::size_t knn);
    const StructGeoFeatures& get(std::uint32_t antigen_id, std::uint32_t antibody_id);

private:
    const SequenceRegistry* registry_;
    std::size_t knn_;
    std::map<std::uint64_t, StructGeoFeatures> cache_;
};

PairScorer make_struct_scorer(const StructPredictor& f, StructGeoCache& cache);

struct PairPrediction {
    int y_hat = 0;       // 1 iff margin > 0 (a zero margin predicts 0)
    double margin = 0.0; // ΔĜ(i,j) - ΔĜ(i,k)
};

PairPrediction predict_pair_label(const PairScorer& scorer, const PairwiseLabel& label);

struct ConsensusReport {
    std::vector<PairwiseLabel> kept;    // teacher prediction matches the label
    std::vector<PairwiseLabel> dropped; // complement
    double agreement_rate = 0.0;        // |kept| / |input|
};

ConsensusReport consensus_filter(const PairScorer& teacher,
                                 const std::vector<PairwiseLabel>& labels);

struct FinetuneConfig {
    int epochs = 30;
    int batch = 256;
    double lr = 1e-4;
};

// Mean pairwise cross-entropy over `batch` with d(mean loss)/dparams added
// into grad (caller zero-initializes).  The building block of the fine-tune
// loop, exposed so its gradient can be verified directly.  At zero margin the
// per-pair loss is exactly ln 2.
double pairwise_batch_loss_grad(const SeqPredictor& f, const std::vector<PairwiseLabel>& batch,
                                const SequenceRegistry& registry, std::vector<double>& grad);
double pairwise_batch_loss_grad(const StructPredictor& f, const std::vector<PairwiseLabel>& batch,
                                StructGeoCache& cache, std::vector<double>& grad);

// Minimizes binary cross-entropy with p(Y=1) = σ(ΔĜ_ij - ΔĜ_ik) over the kept
// labels; returns the per-epoch mean loss curve.  Throws on empty input or
// non-finite loss.
std::vector<double> pairwise_finetune(SeqPredictor& f, const std::vector<PairwiseLabel>& kept,
                                      const SequenceRegistry& registry, const FinetuneConfig& cfg,
                                      Rng& rng);
std::vector<double> pairwise_finetune(StructPredictor& f, const std::vector<PairwiseLabel>& kept,
                                      StructGeoCache& cache, const FinetuneConfig& cfg, Rng& rng);

struct CoteachRoundReport {
    int round = 0;
    // The sequence model filters first and the structure model tunes on its
    // kept set; then the freshly tuned structure model filters for the
    // sequence model.
    double seq_teacher_agreement = 0.0;
    double struct_teacher_agreement = 0.0;
    std::size_t seq_teacher_kept = 0;
    std::size_t struct_teacher_kept = 0;
};

struct CoteachResult {
    std::vector<CoteachRoundReport> rounds;
    std::vector<std::string> warnings; // e.g. a filter that kept no labels
};

// Called after each filter/fine-tune half-step: the round index (0-based, as
// in CoteachRoundReport), the teacher that filtered ("seq" or "struct"), and
// its filter report.  The dependent predictor's updated parameters are in
// place when the observer runs.
using CoteachObserver =
    std::function<void(int round, const char* teacher, const ConsensusReport& report)>;

// Runs `rounds` alternating filter/fine-tune passes, updating both predictors
// in place.  A filter that keeps zero labels skips the dependent fine-tune and
// records a warning instead of failing.
CoteachResult coteach(SeqPredictor& fa, StructPredictor& fb,
                      const std::vector<PairwiseLabel>& labels, int rounds,
                      const FinetuneConfig& cfg, const SequenceRegistry& registry, Rng& rng,
                      const CoteachObserver& observer = {});

// Spearman rank correlation with average ranks on ties.  A constant input
// vector makes the coefficient undefined; it is reported as 0 and flagged.
double spearman(const std::vector<double>& a, const std::vector<double>& b,
                bool* constant = nullptr);

struct SpearmanReport {
    double mean_r = 0.0;
    std::vector<std::pair<std::uint32_t, double>> per_antigen;
    bool constant_flagged = false;
};

// Per antigen: rank-correlate scorer output against the exact oracle over
// every antibody in the registry; average across the given antigens.
SpearmanReport spearman_eval(const PairScorer& scorer,
                             const std::vector<std::uint32_t>& antigen_ids,
                             const SequenceRegistry& registry);

} // namespace affilab
