#include "affilab/inverse_folding.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "affilab/checkpoint.hpp"

namespace affilab {

InverseFoldModel InverseFoldModel::init(const InverseFoldConfig& cfg, std::uint64_t seed) {
    InverseFoldModel m;
    m.cfg = cfg;
    std::size_t cursor = 0;
    m.mlp = add_mlp({m.feature_dim(), cfg.hidden, cfg.hidden, kNumResidueTypes}, cursor);
    m.params.assign(cursor, 0.0);
    Rng rng(seed);
    for (std::size_t k = 0; k + 1 < m.mlp.layers.size(); ++k) init_linear(m.mlp.layers[k], m.params, rng);
    // Zero output layer: the untrained classifier is exactly uniform.
    const auto& last = m.mlp.layers.back();
    zero_block(m.params, last.w_off, last.in * last.out + last.out);
    return m;
}

std::vector<double> if_features(const Structure& x, const ComplexLayout& layout, std::size_t pos,
                                std::size_t knn) {
    if (x.residues() != layout.total_length()) {
        throw std::invalid_argument("if_features: structure does not match layout");
    }
    if (pos >= layout.antibody_length()) {
        throw std::invalid_argument("if_features: position " + std::to_string(pos) +
                                    " is not an antibody position");
    }
    std::vector<double> out(6 + knn, 0.0);
    if (pos > 0) {
        for (int c = 0; c < 3; ++c) out[c] = x.row(pos)[c] - x.row(pos - 1)[c];
    }
    if (pos + 1 < x.residues()) {
        for (int c = 0; c < 3; ++c) out[3 + c] = x.row(pos + 1)[c] - x.row(pos)[c];
    }
    const std::size_t ag_off = layout.antigen_offset();
    std::vector<std::pair<double, std::size_t>> cand;
    cand.reserve(layout.antigen.size());
    for (std::size_t q = 0; q < layout.antigen.size(); ++q) {
        cand.emplace_back(distance(x, pos, ag_off + q), q);
    }
    std::sort(cand.begin(), cand.end());
    for (std::size_t i = 0; i < knn; ++i) {
        out[6 + i] = i < cand.size() ? cand[i].first : 100.0;
    }
    return out;
}

std::vector<double> if_logits(const InverseFoldModel& m, const Structure& x,
                              const ComplexLayout& layout, std::size_t pos) {
    const std::vector<double> in = if_features(x, layout, pos, m.cfg.knn);
    std::vector<double> logits(kNumResidueTypes);
    mlp_forward(m.mlp, m.params.data(), in.data(), logits.data());
    return logits;
}

namespace {

std::vector<double> softmax(const std::vector<double>& z) {
    const double zmax = *std::max_element(z.begin(), z.end());
    std::vector<double> p(z.size());
    double total = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        p[i] = std::exp(z[i] - zmax);
        total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
}

} // namespace

std::vector<double> if_distribution(const InverseFoldModel& m, const Structure& x,
                                    const ComplexLayout& layout, std::size_t pos) {
    return softmax(if_logits(m, x, layout, pos));
}

std::vector<double> train_if(InverseFoldModel& m, const std::vector<IfExample>& corpus,
                             const IfTrainConfig& cfg, Rng& rng) {
    if (corpus.empty()) throw std::invalid_argument("train_if: corpus is empty");
    // One training row per (example, CDR position).
    struct Row {
        std::vector<double> in;
        std::size_t label;
    };
    std::vector<Row> rows;
    for (const auto& ex : corpus) {
        for (std::uint32_t p : ex.layout.cdr_positions) {
            rows.push_back(Row{if_features(ex.x, ex.layout, p, m.cfg.knn), ex.layout.full[p]});
        }
    }
    std::vector<double> curve;
    if (cfg.epochs <= 0) return curve;
    AdamOpt opt;
    opt.lr = cfg.lr;
    std::vector<double> grad(m.params.size(), 0.0);
    std::vector<double> logits(kNumResidueTypes), dlogits(kNumResidueTypes);
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const int batch = std::max(1, cfg.batch);
    MlpTrace trace;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        double epoch_loss = 0.0;
        std::size_t done = 0;
        while (done < order.size()) {
            const std::size_t take = std::min<std::size_t>(batch, order.size() - done);
            std::fill(grad.begin(), grad.end(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t b = 0; b < take; ++b) {
                const Row& row = rows[order[done + b]];
                mlp_forward(m.mlp, m.params.data(), row.in.data(), logits.data(), &trace);
                const std::vector<double> p = softmax(logits);
                batch_loss += -std::log(p[row.label]);
                for (std::size_t i = 0; i < p.size(); ++i) {
                    dlogits[i] = (p[i] - (i == row.label ? 1.0 : 0.0)) / static_cast<double>(take);
                }
                mlp_backward(m.mlp, m.params.data(), trace, dlogits.data(), grad.data(), nullptr);
            }
            batch_loss /= static_cast<double>(take);
            if (!std::isfinite(batch_loss)) {
                throw std::runtime_error("classifier training diverged (non-finite loss at epoch " +
                                         std::to_string(epoch) + "); reduce lr " + std::to_string(cfg.lr));
            }
            opt.step(m.params, grad);
            epoch_loss += batch_loss * static_cast<double>(take);
            done += take;
        }
        curve.push_back(epoch_loss / static_cast<double>(order.size()));
    }
    return curve;
}

namespace {

// Draw `count` indices without replacement, weighted by `weights`.
std::vector<std::size_t> weighted_draw(const std::vector<double>& weights, std::size_t count,
                                       Rng& rng) {
    std::vector<std::size_t> pool(weights.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    std::vector<std::size_t> picked;
    for (std::size_t step = 0; step < count; ++step) {
        double total = 0.0;
        for (std::size_t i : pool) total += weights[i];
        double u = rng.uniform() * total;
        std::size_t chosen = pool.size() - 1;
        for (std::size_t slot = 0; slot < pool.size(); ++slot) {
            u -= weights[pool[slot]];
            if (u <= 0.0) {
                chosen = slot;
                break;
            }
        }
        picked.push_back(pool[chosen]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(chosen));
    }
    return picked;
}

} // namespace

std::vector<MutationProposal> propose_mutations(const InverseFoldModel& m, const Structure& x,
                                                const ComplexLayout& layout,
                                                const std::vector<int>& arities, int per_arity,
                                                Rng& rng, bool uniform_positions) {
    if (per_arity < 1) throw std::invalid_argument("propose_mutations: per_arity must be >= 1");
    const auto& cdr = layout.cdr_positions;
    for (int a : arities) {
        if (a < 1 || static_cast<std::size_t>(a) > cdr.size()) {
            throw std::invalid_argument("propose_mutations: arity " + std::to_string(a) +
                                        " exceeds the " + std::to_string(cdr.size()) +
                                        " CDR positions");
        }
    }

    // Classifier distributions and entropies, once per CDR position.
    std::vector<std::vector<double>> dist(cdr.size());
    std::vector<double> weight(cdr.size());
    for (std::size_t r = 0; r < cdr.size(); ++r) {
        dist[r] = if_distribution(m, x, layout, cdr[r]);
        double h = 0.0;
        for (double p : dist[r]) h -= p * std::log(p);
        weight[r] = uniform_positions ? 1.0 : h + 1e-12; // epsilon keeps hard-peaked rows drawable
    }

    std::vector<MutationProposal> out;
    std::set<std::string> seen;
    for (int a : arities) {
        for (int draw = 0; draw < per_arity; ++draw) {
            std::vector<std::size_t> slots = weighted_draw(weight, static_cast<std::size_t>(a), rng);
            std::sort(slots.begin(), slots.end());
            Sequence mutant = layout.antibody;
            std::vector<std::uint32_t> positions;
            for (std::size_t slot : slots) {
                const std::size_t pos = cdr[slot];
                const std::size_t current = layout.antibody[pos];
                // Resample from the classifier with the current residue removed.
                double total = 0.0;
                for (std::size_t t = 0; t < kNumResidueTypes; ++t) {
                    if (t != current) total += dist[slot][t];
                }
                double u = rng.uniform() * total;
                std::size_t chosen = current == kNumResidueTypes - 1 ? kNumResidueTypes - 2
                                                                     : kNumResidueTypes - 1;
                for (std::size_t t = 0; t < kNumResidueTypes; ++t) {
                    if (t == current) continue;
                    u -= dist[slot][t];
                    if (u <= 0.0) {
                        chosen = t;
                        break;
                    }
                }
                mutant = mutant.with_residue(pos, static_cast<std::uint8_t>(chosen));
                positions.push_back(static_cast<std::uint32_t>(pos));
            }
            if (seen.insert(mutant.str()).second) {
                out.push_back(MutationProposal{std::move(mutant), a, std::move(positions), 0.0});
            }
        }
    }
    return out;
}

void score_proposals(const SeqPredictor& f, const Sequence& antigen,
                     std::vector<MutationProposal>& proposals) {
    for (auto& p : proposals) p.seq_score = predict_seq(f, p.mutated_antibody, antigen);
}

std::vector<MutationProposal> post_select(const SeqPredictor& f, const Sequence& antigen,
                                          std::vector<MutationProposal> proposals,
                                          std::size_t top_m) {
    if (proposals.empty()) throw std::invalid_argument("post_select: empty proposal list");
    if (top_m < 1) throw std::invalid_argument("post_select: top_m must be >= 1");
    score_proposals(f, antigen, proposals);
    std::sort(proposals.begin(), proposals.end(),
              [](const MutationProposal& a, const MutationProposal& b) {
                  if (a.seq_score != b.seq_score) return a.seq_score < b.seq_score;
                  if (a.arity != b.arity) return a.arity < b.arity;
                  return a.mutated_antibody.str() < b.mutated_antibody.str();
              });
    if (proposals.size() > top_m) {
        proposals.erase(proposals.begin() + static_cast<std::ptrdiff_t>(top_m), proposals.end());
    }
    return proposals;
}

void save_inverse_fold_model(const InverseFoldModel& m, const std::string& path,
                             const std::map<std::string, std::string>& extra_manifest) {
    std::map<std::string, std::string> manifest = extra_manifest;
    manifest["kind"] = "residue_classifier";
    manifest["hidden"] = std::to_string(m.cfg.hidden);
    manifest["knn"] = std::to_string(m.cfg.knn);
    manifest["param_count"] = std::to_string(m.params.size());
    save_checkpoint(path, {NamedTensor{"params", {m.params.size()}, m.params}}, manifest);
}

InverseFoldModel load_inverse_fold_model(const std::string& path) {
    const auto manifest = load_manifest(path);
    const auto tensors = load_checkpoint(path);
    InverseFoldConfig cfg;
    cfg.hidden = std::stoul(manifest.at("hidden"));
    cfg.knn = std::stoul(manifest.at("knn"));
    InverseFoldModel m = InverseFoldModel::init(cfg, 0);
    if (tensors.size() != 1 || tensors[0].data.size() != m.params.size()) {
        throw std::runtime_error("checkpoint " + path + ": parameter shape does not match manifest");
    }
    m.params = tensors[0].data;
    return m;
}

} // namespace affilab
