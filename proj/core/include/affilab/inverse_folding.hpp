#pragma once

// Structure-conditioned mutation proposal: a small per-position classifier
// P(residue | local geometry) over CDR positions, plus post-selection of
// proposals by the sequence energy predictor.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "affilab/complex.hpp"
#include "affilab/geometry.hpp"
#include "affilab/nn.hpp"
#include "affilab/predictors.hpp"
#include "affilab/rng.hpp"
#include "affilab/sequence.hpp"

namespace affilab {

struct InverseFoldConfig {
    std::size_t hidden = 32;
    std::size_t knn = 8; // antigen neighbors per CDR position
};

// Per-position residue classifier.  Input: bond vectors to the two chain
// neighbors plus sorted distances to the knn nearest antigen residues; output:
// logits over the 20 residue types.  The output layer starts at zero, so the
// untrained distribution is exactly uniform.
struct InverseFoldModel {
    InverseFoldConfig cfg;
    MlpSpec mlp;
    std::vector<double> params;

    static InverseFoldModel init(const InverseFoldConfig& cfg, std::uint64_t seed);
    std::size_t feature_dim() const { return 6 + cfg.knn; }
};

// Local geometry features at one antibody position: [prev bond | next bond |
// distances to the knn nearest antigen residues, (distance, index)-sorted,
// padded with 100.0].  Missing chain neighbors contribute zero vectors.
std::vector<double> if_features(const Structure& x, const ComplexLayout& layout, std::size_t pos,
                                std::size_t knn);

std::vector<double> if_logits(const InverseFoldModel& m, const Structure& x,
                              const ComplexLayout& layout, std::size_t pos);

// softmax(if_logits); strictly positive, sums to 1.
std::vector<double> if_distribution(const InverseFoldModel& m, const Structure& x,
                                    const ComplexLayout& layout, std::size_t pos);

// One training item: a complex structure whose antibody sequence supplies the
// class labels at the CDR positions.
struct IfExample {
    Structure x;
    ComplexLayout layout;
};

struct IfTrainConfig {
    int epochs = 40;
    int batch = 64;
    double lr = 3e-3;
};

// Cross-entropy training of the classifier over all (example, CDR position)
// rows; returns the per-epoch mean loss curve.  Throws on non-finite loss.
std::vector<double> train_if(InverseFoldModel& m, const std::vector<IfExample>& corpus,
                             const IfTrainConfig& cfg, Rng& rng);

// Checkpoint adapters (same container as the energy predictors).
void save_inverse_fold_model(const InverseFoldModel& m, const std::string& path,
                             const std::map<std::string, std::string>& extra_manifest = {});
InverseFoldModel load_inverse_fold_model(const std::string& path);

struct MutationProposal {
    Sequence mutated_antibody;
    int arity = 0;
    std::vector<std::uint32_t> positions; // sorted, subset of the CDR
    double seq_score = 0.0;               // ΔĜ from the sequence predictor
};

// For each arity: per_arity draws of (positions without replacement, weighted
// by classifier entropy unless uniform_positions; residue at each from the
// classifier excluding the current one).  Duplicates (by mutated sequence) are
// dropped.  Every proposal differs from layout.antibody at exactly its listed
// positions.
std::vector<MutationProposal> propose_mutations(const InverseFoldModel& m, const Structure& x,
                                                const ComplexLayout& layout,
                                                const std::vector<int>& arities, int per_arity,
                                                Rng& rng, bool uniform_positions = false);

// Scores each proposal's mutated antibody against the antigen with the
// sequence predictor, writing seq_score in place.
void score_proposals(const SeqPredictor& f, const Sequence& antigen,
                     std::vector<MutationProposal>& proposals);

// The top_m lowest-score proposals, ties broken by (arity ascending,
// lexicographic sequence).  Scores are (re)computed here.
std::vector<MutationProposal> post_select(const SeqPredictor& f, const Sequence& antigen,
                                          std::vector<MutationProposal> proposals,
                                          std::size_t top_m);

} // namespace affilab
