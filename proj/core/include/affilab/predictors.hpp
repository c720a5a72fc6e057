#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "affilab/complex.hpp"
#include "affilab/geometry.hpp"
#include "affilab/nn.hpp"
#include "affilab/rng.hpp"
#include "affilab/sequence.hpp"
#include "affilab/world.hpp"

namespace affilab {

// Sequence-based binding-energy estimator f_alpha: residue embeddings are
// mean-pooled per chain, concatenated, and fed through three fully connected
// layers to a scalar predicted delta-G.
struct SeqPredictorConfig {
    std::size_t embed_dim = 8;
    std::size_t hidden = 64;
};

struct SeqPredictor {
    SeqPredictorConfig cfg;
    EmbedSpec emb;
    MlpSpec mlp;
    std::vector<double> params;

    static SeqPredictor init(const SeqPredictorConfig& cfg, std::uint64_t seed);
};

double predict_seq(const SeqPredictor& f, const Sequence& ab, const Sequence& ag);
// Accumulates d(prediction)/dparams into grad; returns the prediction.
double predict_seq_grad(const SeqPredictor& f, const Sequence& ab, const Sequence& ag,
                        std::vector<double>& grad);

// Structure-based estimator f_beta: per CDR residue the featurizer emits
// (type embedding | distances to the k nearest antigen residues | bond
// vectors to the neighboring CDR residues), each row runs through three
// fully connected layers, and the per-residue scalars are summed.
struct StructPredictorConfig {
    std::size_t embed_dim = 8;
    std::size_t hidden = 64;
    std::size_t knn = 8;
};

struct StructPredictor {
    StructPredictorConfig cfg;
    EmbedSpec emb;
    MlpSpec mlp;
    std::vector<double> params;

    static StructPredictor init(const StructPredictorConfig& cfg, std::uint64_t seed);

    std::size_t feature_dim() const { return cfg.embed_dim + cfg.knn + 6; }
    // Sum of network outputs over explicit feature rows (testing hook for
    // by-hand featurization).
    double score_features(const std::vector<std::vector<double>>& rows) const;
};

// Parameter-independent featurization: geometry only.  The embedding slots
// are filled from the current parameters at prediction time.  Nearest
// neighbors are ordered by (distance, antigen index); a tie within 1e-12
// around the selection is flagged.  Missing neighbors (antigen shorter than
// k) are padded with distance 100.
struct StructGeoFeatures {
    struct Row {
        std::uint32_t pos = 0;                // global index of the CDR residue
        std::uint8_t type = 0;                // residue type at that position
        std::vector<std::uint32_t> neighbors; // selected antigen global indices
        std::vector<double> distances;        // matching distances
        double bonds[6] = {0, 0, 0, 0, 0, 0}; // to previous / next CDR residue
        std::uint32_t prev_pos = 0, next_pos = 0;
        bool has_prev = false, has_next = false;
    };
    std::vector<Row> rows;
    bool knn_tie = false;
};

StructGeoFeatures geo_featurize(const Structure& x, const Sequence& seq,
                                const ComplexLayout& layout, std::size_t k);

double predict_from_geo(const StructPredictor& f, const StructGeoFeatures& geo);
double predict_from_geo_grad(const StructPredictor& f, const StructGeoFeatures& geo,
                             std::vector<double>& grad);

// ΔĜ on a structure; seq is the full complex sequence (CDR residue types are
// read from it, so mutants can share a layout shape).
double predict_struct(const StructPredictor& f, const Structure& x, const Sequence& seq,
                      const ComplexLayout& layout, bool* knn_tie = nullptr);

// Analytic d(ΔĜ)/dx by backpropagation through featurizer and network;
// nonzero only on CDR residues and their selected antigen neighbors.
Structure grad_struct(const StructPredictor& f, const Structure& x, const Sequence& seq,
                      const ComplexLayout& layout, bool* knn_tie = nullptr);

struct PredTrainConfig {
    int epochs = 200;
    int batch = 32;
    double lr = 3e-3;
};

struct SeqTrainExample {
    Sequence ab;
    Sequence ag;
    double y = 0.0;
};

struct StructTrainExample {
    StructGeoFeatures geo; // prebuilt from the complex structure
    double y = 0.0;
};

// Mean-squared-error training; returns the per-epoch loss curve.  Zero
// epochs leaves parameters untouched.  Throws on non-finite loss.
std::vector<double> supervised_train(SeqPredictor& f, const std::vector<SeqTrainExample>& data,
                                     const PredTrainConfig& cfg, Rng& rng);
std::vector<double> supervised_train(StructPredictor& f, const std::vector<StructTrainExample>& data,
                                     const PredTrainConfig& cfg, Rng& rng);

// Builders from the labeled set (structures are complex mean structures).
std::vector<SeqTrainExample> seq_examples_from_labels(const std::vector<LabeledPair>& labels,
                                                      const SequenceRegistry& registry);
std::vector<StructTrainExample> struct_examples_from_labels(const std::vector<LabeledPair>& labels,
                                                            const SequenceRegistry& registry,
                                                            std::size_t knn);

// Checkpoint adapters.
void save_seq_predictor(const SeqPredictor& f, const std::string& path,
                        const std::map<std::string, std::string>& extra_manifest = {});
SeqPredictor load_seq_predictor(const std::string& path);
void save_struct_predictor(const StructPredictor& f, const std::string& path,
                           const std::map<std::string, std::string>& extra_manifest = {});
StructPredictor load_struct_predictor(const std::string& path);

} // namespace affilab
