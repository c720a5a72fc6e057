#include "affilab/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affilab/checkpoint.hpp"

namespace affilab {

namespace {

constexpr double kPadDistance = 100.0;

void mean_embed(const EmbedSpec& emb, const std::vector<double>& params, const Sequence& s,
                double* out) {
    for (std::size_t k = 0; k < emb.dim; ++k) out[k] = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double* row = params.data() + emb.off + s[i] * emb.dim;
        for (std::size_t k = 0; k < emb.dim; ++k) out[k] += row[k];
    }
    for (std::size_t k = 0; k < emb.dim; ++k) out[k] /= static_cast<double>(s.size());
}

} // namespace

SeqPredictor SeqPredictor::init(const SeqPredictorConfig& cfg, std::uint64_t seed) {
    SeqPredictor f;
    f.cfg = cfg;
    std::size_t cursor = 0;
    f.emb = add_embedding(kNumResidueTypes, cfg.embed_dim, cursor);
    f.mlp = add_mlp({2 * cfg.embed_dim, cfg.hidden, cfg.hidden, 1}, cursor);
    f.params.assign(cursor, 0.0);
    Rng rng(seed);
    init_embedding(f.emb, f.params, rng);
    for (const auto& l : f.mlp.layers) init_linear(l, f.params, rng);
    return f;
}

double predict_seq(const SeqPredictor& f, const Sequence& ab, const Sequence& ag) {
    std::vector<double> in(2 * f.cfg.embed_dim);
    mean_embed(f.emb, f.params, ab, in.data());
    mean_embed(f.emb, f.params, ag, in.data() + f.cfg.embed_dim);
    double y = 0.0;
    mlp_forward(f.mlp, f.params.data(), in.data(), &y);
    return y;
}

double predict_seq_grad(const SeqPredictor& f, const Sequence& ab, const Sequence& ag,
                        std::vector<double>& grad) {
    if (grad.size() != f.params.size()) throw std::invalid_argument("predict_seq_grad: grad size mismatch");
    std::vector<double> in(2 * f.cfg.embed_dim);
    mean_embed(f.emb, f.params, ab, in.data());
    mean_embed(f.emb, f.params, ag, in.data() + f.cfg.embed_dim);
    MlpTrace trace;
    double y = 0.0;
    mlp_forward(f.mlp, f.params.data(), in.data(), &y, &trace);
    const double dy = 1.0;
    std::vector<double> din(in.size(), 0.0);
    mlp_backward(f.mlp, f.params.data(), trace, &dy, grad.data(), din.data());
    // Mean pooling routes each input slot back to every residue's embedding
    // row with weight 1/len.
    const double inv_ab = 1.0 / static_cast<double>(ab.size());
    for (std::size_t i = 0; i < ab.size(); ++i) {
        double* g = grad.data() + f.emb.off + ab[i] * f.cfg.embed_dim;
        for (std::size_t k = 0; k < f.cfg.embed_dim; ++k) g[k] += din[k] * inv_ab;
    }
    const double inv_ag = 1.0 / static_cast<double>(ag.size());
    for (std::size_t i = 0; i < ag.size(); ++i) {
        double* g = grad.data() + f.emb.off + ag[i] * f.cfg.embed_dim;
        for (std::size_t k = 0; k < f.cfg.embed_dim; ++k) g[k] += din[f.cfg.embed_dim + k] * inv_ag;
    }
    return y;
}

StructPredictor StructPredictor::init(const StructPredictorConfig& cfg, std::uint64_t seed) {
    StructPredictor f;
    f.cfg = cfg;
    std::size_t cursor = 0;
    f.emb = add_embedding(kNumResidueTypes, cfg.embed_dim, cursor);
    f.mlp = add_mlp({cfg.embed_dim + cfg.knn + 6, cfg.hidden, cfg.hidden, 1}, cursor);
    f.params.assign(cursor, 0.0);
    Rng rng(seed);
    init_embedding(f.emb, f.params, rng);
    for (const auto& l : f.mlp.layers) init_linear(l, f.params, rng);
    return f;
}

double StructPredictor::score_features(const std::vector<std::vector<double>>& rows) const {
    double total = 0.0;
    for (const auto& row : rows) {
        if (row.size() != feature_dim()) {
            throw std::invalid_argument("feature row size " + std::to_string(row.size()) +
                                        " does not match featurizer dim " + std::to_string(feature_dim()));
        }
        double y = 0.0;
        mlp_forward(mlp, params.data(), row.data(), &y);
        total += y;
    }
    return total;
}

StructGeoFeatures geo_featurize(const Structure& x, const Sequence& seq,
                                const ComplexLayout& layout, std::size_t k) {
    if (x.residues() != layout.total_length()) {
        throw std::invalid_argument("featurize: structure has " + std::to_string(x.residues()) +
                                    " residues, layout expects " + std::to_string(layout.total_length()));
    }
    if (seq.size() != layout.total_length()) {
        throw std::invalid_argument("featurize: sequence length does not match layout");
    }
    StructGeoFeatures geo;
    const std::size_t ag_off = layout.antigen_offset();
    const std::size_t ag_len = layout.antigen.size();
    const auto& cdr = layout.cdr_positions;

    for (std::size_t r = 0; r < cdr.size(); ++r) {
        StructGeoFeatures::Row row;
        row.pos = cdr[r];
        row.type = seq[row.pos];

        // All antigen candidates ordered by (distance, index).
        std::vector<std::pair<double, std::uint32_t>> cand;
        cand.reserve(ag_len);
        for (std::size_t q = 0; q < ag_len; ++q) {
            cand.emplace_back(distance(x, row.pos, ag_off + q),
                              static_cast<std::uint32_t>(ag_off + q));
        }
        std::sort(cand.begin(), cand.end());
        const std::size_t take = std::min(k, cand.size());
        for (std::size_t i = 0; i < take; ++i) {
            row.neighbors.push_back(cand[i].second);
            row.distances.push_back(cand[i].first);
        }
        // Tie within the selection or across its boundary.
        const std::size_t scan = std::min(cand.size(), take + 1);
        for (std::size_t i = 1; i < scan; ++i) {
            if (std::abs(cand[i].first - cand[i - 1].first) < 1e-12) geo.knn_tie = true;
        }

        if (r > 0) {
            row.has_prev = true;
            row.prev_pos = cdr[r - 1];
            for (int d = 0; d < 3; ++d) row.bonds[d] = x.row(row.pos)[d] - x.row(row.prev_pos)[d];
        }
        if (r + 1 < cdr.size()) {
            row.has_next = true;
            row.next_pos = cdr[r + 1];
            for (int d = 0; d < 3; ++d) row.bonds[3 + d] = x.row(row.next_pos)[d] - x.row(row.pos)[d];
        }
        geo.rows.push_back(std::move(row));
    }
    return geo;
}

namespace {

void fill_struct_input(const StructPredictor& f, const StructGeoFeatures::Row& row, double* in) {
    const double* emb_row = f.params.data() + f.emb.off + row.type * f.cfg.embed_dim;
    std::size_t o = 0;
    for (std::size_t kk = 0; kk < f.cfg.embed_dim; ++kk) in[o++] = emb_row[kk];
    for (std::size_t kk = 0; kk < f.cfg.knn; ++kk) {
        in[o++] = kk < row.distances.size() ? row.distances[kk] : kPadDistance;
    }
    for (int d = 0; d < 6; ++d) in[o++] = row.bonds[d];
}

} // namespace

double predict_from_geo(const StructPredictor& f, const StructGeoFeatures& geo) {
    std::vector<double> in(f.feature_dim());
    double total = 0.0;
    for (const auto& row : geo.rows) {
        fill_struct_input(f, row, in.data());
        double y = 0.0;
        mlp_forward(f.mlp, f.params.data(), in.data(), &y);
        total += y;
    }
    return total;
}

double predict_from_geo_grad(const StructPredictor& f, const StructGeoFeatures& geo,
                             std::vector<double>& grad) {
    if (grad.size() != f.params.size()) throw std::invalid_argument("predict_from_geo_grad: grad size mismatch");
    std::vector<double> in(f.feature_dim()), din(f.feature_dim());
    MlpTrace trace;
    double total = 0.0;
    for (const auto& row : geo.rows) {
        fill_struct_input(f, row, in.data());
        double y = 0.0;
        mlp_forward(f.mlp, f.params.data(), in.data(), &y, &trace);
        total += y;
        const double dy = 1.0;
        std::fill(din.begin(), din.end(), 0.0);
        mlp_backward(f.mlp, f.params.data(), trace, &dy, grad.data(), din.data());
        double* gemb = grad.data() + f.emb.off + row.type * f.cfg.embed_dim;
        for (std::size_t kk = 0; kk < f.cfg.embed_dim; ++kk) gemb[kk] += din[kk];
    }
    return total;
}

double predict_struct(const StructPredictor& f, const Structure& x, const Sequence& seq,
                      const ComplexLayout& layout, bool* knn_tie) {
    const StructGeoFeatures geo = geo_featurize(x, seq, layout, f.cfg.knn);
    if (knn_tie) *knn_tie = geo.knn_tie;
    return predict_from_geo(f, geo);
}

Structure grad_struct(const StructPredictor& f, const Structure& x, const Sequence& seq,
                      const ComplexLayout& layout, bool* knn_tie) {
    const StructGeoFeatures geo = geo_featurize(x, seq, layout, f.cfg.knn);
    if (knn_tie) *knn_tie = geo.knn_tie;

    Structure g(x.residues());
    std::vector<double> in(f.feature_dim()), din(f.feature_dim());
    std::vector<double> pgrad_sink(f.params.size(), 0.0);
    MlpTrace trace;
    for (const auto& row : geo.rows) {
        fill_struct_input(f, row, in.data());
        double y = 0.0;
        mlp_forward(f.mlp, f.params.data(), in.data(), &y, &trace);
        const double dy = 1.0;
        std::fill(din.begin(), din.end(), 0.0);
        mlp_backward(f.mlp, f.params.data(), trace, &dy, pgrad_sink.data(), din.data());

        // Distance slots: d = |x_p - x_q| pulls on both endpoints.
        for (std::size_t kk = 0; kk < row.neighbors.size(); ++kk) {
            const double d = row.distances[kk];
            if (d < 1e-12) continue; // coincident points: direction undefined
            const double gd = din[f.cfg.embed_dim + kk];
            const std::uint32_t q = row.neighbors[kk];
            for (int c = 0; c < 3; ++c) {
                const double u = (x.row(row.pos)[c] - x.row(q)[c]) / d;
                g.row(row.pos)[c] += gd * u;
                g.row(q)[c] -= gd * u;
            }
        }
        // Bond slots: (x_p - x_prev) and (x_next - x_p).
        const std::size_t boff = f.cfg.embed_dim + f.cfg.knn;
        if (row.has_prev) {
            for (int c = 0; c < 3; ++c) {
                g.row(row.pos)[c] += din[boff + c];
                g.row(row.prev_pos)[c] -= din[boff + c];
            }
        }
        if (row.has_next) {
            for (int c = 0; c < 3; ++c) {
                g.row(row.next_pos)[c] += din[boff + 3 + c];
                g.row(row.pos)[c] -= din[boff + 3 + c];
            }
        }
    }
    return g;
}

namespace {

template <typename Model, typename Example, typename LossGrad>
std::vector<double> mse_train(Model& f, const std::vector<Example>& data, const PredTrainConfig& cfg,
                              Rng& rng, LossGrad&& forward_backward) {
    if (data.empty()) throw std::invalid_argument("supervised_train: labeled set is empty");
    std::vector<double> curve;
    if (cfg.epochs <= 0) return curve;
    AdamOpt opt;
    opt.lr = cfg.lr;
    std::vector<double> grad(f.params.size(), 0.0);
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const int batch = std::max(1, cfg.batch);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        double epoch_loss = 0.0;
        std::size_t done = 0;
        while (done < order.size()) {
            const std::size_t take = std::min<std::size_t>(batch, order.size() - done);
            std::fill(grad.begin(), grad.end(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t b = 0; b < take; ++b) {
                batch_loss += forward_backward(data[order[done + b]], grad, 1.0 / static_cast<double>(take));
            }
            batch_loss /= static_cast<double>(take);
            if (!std::isfinite(batch_loss)) {
                throw std::runtime_error("supervised training diverged (non-finite loss at epoch " +
                                         std::to_string(epoch) + "); reduce lr " + std::to_string(cfg.lr));
            }
            opt.step(f.params, grad);
            epoch_loss += batch_loss * static_cast<double>(take);
            done += take;
        }
        curve.push_back(epoch_loss / static_cast<double>(order.size()));
    }
    return curve;
}

} // namespace

std::vector<double> supervised_train(SeqPredictor& f, const std::vector<SeqTrainExample>& data,
                                     const PredTrainConfig& cfg, Rng& rng) {
    return mse_train(f, data, cfg, rng,
                     [&f](const SeqTrainExample& ex, std::vector<double>& grad, double w) {
                         std::vector<double> g1(f.params.size(), 0.0);
                         const double y = predict_seq_grad(f, ex.ab, ex.ag, g1);
                         const double r = y - ex.y;
                         for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += 2.0 * r * w * g1[i];
                         return r * r;
                     });
}

std::vector<double> supervised_train(StructPredictor& f, const std::vector<StructTrainExample>& data,
                                     const PredTrainConfig& cfg, Rng& rng) {
    return mse_train(f, data, cfg, rng,
                     [&f](const StructTrainExample& ex, std::vector<double>& grad, double w) {
                         std::vector<double> g1(f.params.size(), 0.0);
                         const double y = predict_from_geo_grad(f, ex.geo, g1);
                         const double r = y - ex.y;
                         for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += 2.0 * r * w * g1[i];
                         return r * r;
                     });
}

std::vector<SeqTrainExample> seq_examples_from_labels(const std::vector<LabeledPair>& labels,
                                                      const SequenceRegistry& registry) {
    std::vector<SeqTrainExample> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        out.push_back(SeqTrainExample{registry.antibodies.at(l.antibody_id),
                                      registry.antigens.at(l.antigen_id), l.delta_g});
    }
    return out;
}

std::vector<StructTrainExample> struct_examples_from_labels(const std::vector<LabeledPair>& labels,
                                                            const SequenceRegistry& registry,
                                                            std::size_t knn) {
    std::vector<StructTrainExample> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        const ComplexLayout layout = registry.layout_for(l.antigen_id, l.antibody_id);
        const Structure x = oracle_mean_structure(layout.full);
        out.push_back(StructTrainExample{geo_featurize(x, layout.full, layout, knn), l.delta_g});
    }
    return out;
}

void save_seq_predictor(const SeqPredictor& f, const std::string& path,
                        const std::map<std::string, std::string>& extra_manifest) {
    std::map<std::string, std::string> manifest = extra_manifest;
    manifest["kind"] = "seq_energy";
    manifest["embed_dim"] = std::to_string(f.cfg.embed_dim);
    manifest["hidden"] = std::to_string(f.cfg.hidden);
    manifest["param_count"] = std::to_string(f.params.size());
    save_checkpoint(path, {NamedTensor{"params", {f.params.size()}, f.params}}, manifest);
}

SeqPredictor load_seq_predictor(const std::string& path) {
    const auto manifest = load_manifest(path);
    const auto tensors = load_checkpoint(path);
    SeqPredictorConfig cfg;
    cfg.embed_dim = std::stoul(manifest.at("embed_dim"));
    cfg.hidden = std::stoul(manifest.at("hidden"));
    SeqPredictor f = SeqPredictor::init(cfg, 0);
    if (tensors.size() != 1 || tensors[0].data.size() != f.params.size()) {
        throw std::runtime_error("checkpoint " + path + ": parameter shape does not match manifest");
    }
    f.params = tensors[0].data;
    return f;
}

void save_struct_predictor(const StructPredictor& f, const std::string& path,
                           const std::map<std::string, std::string>& extra_manifest) {
    std::map<std::string, std::string> manifest = extra_manifest;
    manifest["kind"] = "struct_energy";
    manifest["embed_dim"] = std::to_string(f.cfg.embed_dim);
    manifest["hidden"] = std::to_string(f.cfg.hidden);
    manifest["knn"] = std::to_string(f.cfg.knn);
    manifest["param_count"] = std::to_string(f.params.size());
    save_checkpoint(path, {NamedTensor{"params", {f.params.size()}, f.params}}, manifest);
}

StructPredictor load_struct_predictor(const std::string& path) {
    const auto manifest = load_manifest(path);
    const auto tensors = load_checkpoint(path);
    StructPredictorConfig cfg;
    cfg.embed_dim = std::stoul(manifest.at("embed_dim"));
    cfg.hidden = std::stoul(manifest.at("hidden"));
    cfg.knn = std::stoul(manifest.at("knn"));
    StructPredictor f = StructPredictor::init(cfg, 0);
    if (tensors.size() != 1 || tensors[0].data.size() != f.params.size()) {
        throw std::runtime_error("checkpoint " + path + ": parameter shape does not match manifest");
    }
    f.params = tensors[0].data;
    return f;
}

} // namespace affilab
