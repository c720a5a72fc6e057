#include "affilab/coteach.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace affilab {

namespace {

double sigmoid(double m) {
    if (m >= 0.0) return 1.0 / (1.0 + std::exp(-m));
    const double e = std::exp(m);
    return e / (1.0 + e);
}

// log(1 + e^m) without overflow.
double softplus(double m) { return std::max(m, 0.0) + std::log1p(std::exp(-std::abs(m))); }

} // namespace

std::vector<PairwiseLabel> build_pairs(const std::vector<EnergyRecord>& records,
                                       int pairs_per_antigen, double tie_epsilon, Rng& rng,
                                       std::vector<std::string>* warnings) {
    if (pairs_per_antigen < 1) throw std::invalid_argument("build_pairs: pairs_per_antigen must be >= 1");
    // Group the noisy measurements by antigen, keeping antibody order.
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, double>>> by_antigen;
    for (const auto& r : records) {
        by_antigen[r.antigen_id].emplace_back(r.antibody_id, r.delta_g_noisy);
    }
    std::vector<PairwiseLabel> out;
    for (auto& [antigen_id, rows] : by_antigen) {
        const std::uint64_t n = rows.size();
        if (n < 2) {
            throw std::invalid_argument("build_pairs: antigen " + std::to_string(antigen_id) +
                                        " has fewer than 2 antibodies");
        }
        const std::uint64_t available = n * (n - 1) / 2;
        std::uint64_t want = static_cast<std::uint64_t>(pairs_per_antigen);
        if (want > available) {
            if (warnings) {
                warnings->push_back("antigen " + std::to_string(antigen_id) + ": requested " +
                                    std::to_string(want) + " pairs, only " +
                                    std::to_string(available) + " exist; clamped");
            }
            want = available;
        }
        for (std::uint64_t flat : rng.sample_without_replacement(available, want)) {
            // Lexicographic pair index -> (j, k) with j < k.
            std::uint64_t j = 0;
            std::uint64_t row_len = n - 1;
            while (flat >= row_len) {
                flat -= row_len;
                --row_len;
                ++j;
            }
            const std::uint64_t k = j + 1 + flat;
            const double ddg = rows[j].second - rows[k].second;
            if (std::abs(ddg) < tie_epsilon) continue;
            PairwiseLabel label;
            label.antigen_id = antigen_id;
            label.antibody_j = rows[j].first;
            label.antibody_k = rows[k].first;
            label.ddg = ddg;
            label.y = ddg > 0.0 ? 1 : 0;
            out.push_back(label);
        }
    }
    return out;
}

PairScorer make_seq_scorer(const SeqPredictor& f, const SequenceRegistry& registry) {
    return [&f, &registry](std::uint32_t antigen_id, std::uint32_t antibody_id) {
        return predict_seq(f, registry.antibodies.at(antibody_id), registry.antigens.at(antigen_id));
    };
}

StructGeoCache::StructGeoCache(const SequenceRegistry& registry, std::size_t knn)
    : registry_(&registry), knn_(knn) {}

const StructGeoFeatures& StructGeoCache::get(std::uint32_t antigen_id, std::uint32_t antibody_id) {
    const std::uint64_t key = (static_cast<std::uint64_t>(antigen_id) << 32) | antibody_id;
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        const ComplexLayout layout = registry_->layout_for(antigen_id, antibody_id);
        const Structure x = oracle_mean_structure(layout.full);
        it = cache_.emplace(key, geo_featurize(x, layout.full, layout, knn_)).first;
    }
    return it->second;
}

PairScorer make_struct_scorer(const StructPredictor& f, StructGeoCache& cache) {
    return [&f, &cache](std::uint32_t antigen_id, std::uint32_t antibody_id) {
        return predict_from_geo(f, cache.get(antigen_id, antibody_id));
    };
}

PairPrediction predict_pair_label(const PairScorer& scorer, const PairwiseLabel& label) {
    PairPrediction pred;
    pred.margin = scorer(label.antigen_id, label.antibody_j) -
                  scorer(label.antigen_id, label.antibody_k);
    pred.y_hat = pred.margin > 0.0 ? 1 : 0;
    return pred;
}

ConsensusReport consensus_filter(const PairScorer& teacher,
                                 const std::vector<PairwiseLabel>& labels) {
    ConsensusReport report;
    for (const auto& label : labels) {
        if (predict_pair_label(teacher, label).y_hat == label.y) {
            report.kept.push_back(label);
        } else {
            report.dropped.push_back(label);
        }
    }
    report.agreement_rate =
        labels.empty() ? 0.0
                       : static_cast<double>(report.kept.size()) / static_cast<double>(labels.size());
    return report;
}

namespace {

// score_grad(antigen, antibody, grad_out, sign) must return ΔĜ and add
// sign * its parameter gradient into grad_out.
auto seq_score_grad(const SeqPredictor& f, const SequenceRegistry& registry,
                    std::vector<double>& scratch) {
    return [&f, &registry, &scratch](std::uint32_t ag, std::uint32_t ab, std::vector<double>& out,
                                     double sign) {
        std::fill(scratch.begin(), scratch.end(), 0.0);
        const double y =
            predict_seq_grad(f, registry.antibodies.at(ab), registry.antigens.at(ag), scratch);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += sign * scratch[i];
        return y;
    };
}

auto struct_score_grad(const StructPredictor& f, StructGeoCache& cache,
                       std::vector<double>& scratch) {
    return [&f, &cache, &scratch](std::uint32_t ag, std::uint32_t ab, std::vector<double>& out,
                                  double sign) {
        std::fill(scratch.begin(), scratch.end(), 0.0);
        const double y = predict_from_geo_grad(f, cache.get(ag, ab), scratch);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += sign * scratch[i];
        return y;
    };
}

// Mean loss over count labels (idx selects them; nullptr = the first count in
// order), with d(mean loss)/dparams added into grad.
template <typename ScoreGrad>
double batch_loss_grad_impl(const std::vector<PairwiseLabel>& labels, const std::size_t* idx,
                            std::size_t count, std::vector<double>& grad,
                            std::vector<double>& pair_grad, ScoreGrad&& score_grad) {
    double batch_loss = 0.0;
    for (std::size_t b = 0; b < count; ++b) {
        const PairwiseLabel& label = labels[idx ? idx[b] : b];
        std::fill(pair_grad.begin(), pair_grad.end(), 0.0);
        const double sj = score_grad(label.antigen_id, label.antibody_j, pair_grad, 1.0);
        const double sk = score_grad(label.antigen_id, label.antibody_k, pair_grad, -1.0);
        const double margin = sj - sk;
        batch_loss += softplus(margin) - label.y * margin;
        const double dmargin = (sigmoid(margin) - label.y) / static_cast<double>(count);
        for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += dmargin * pair_grad[i];
    }
    return batch_loss / static_cast<double>(count);
}

// Shared fine-tune loop over minibatches of the kept labels.
template <typename ScoreGrad>
std::vector<double> finetune_impl(std::vector<double>& params,
                                  const std::vector<PairwiseLabel>& kept,
                                  const FinetuneConfig& cfg, Rng& rng, ScoreGrad&& score_grad) {
    if (kept.empty()) throw std::invalid_argument("pairwise_finetune: no labels to tune on");
    std::vector<double> curve;
    if (cfg.epochs <= 0) return curve;
    AdamOpt opt;
    opt.lr = cfg.lr;
    std::vector<double> grad(params.size(), 0.0);
    std::vector<double> pair_grad(params.size(), 0.0);
    std::vector<std::size_t> order(kept.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const int batch = std::max(1, cfg.batch);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        double epoch_loss = 0.0;
        std::size_t done = 0;
        while (done < order.size()) {
            const std::size_t take = std::min<std::size_t>(batch, order.size() - done);
            std::fill(grad.begin(), grad.end(), 0.0);
            const double batch_loss =
                batch_loss_grad_impl(kept, &order[done], take, grad, pair_grad, score_grad);
            if (!std::isfinite(batch_loss)) {
                throw std::runtime_error("pairwise fine-tune diverged (non-finite loss at epoch " +
                                         std::to_string(epoch) + ")");
            }
            opt.step(params, grad);
            epoch_loss += batch_loss * static_cast<double>(take);
            done += take;
        }
        curve.push_back(epoch_loss / static_cast<double>(order.size()));
    }
    return curve;
}

} // namespace

double pairwise_batch_loss_grad(const SeqPredictor& f, const std::vector<PairwiseLabel>& batch,
                                const SequenceRegistry& registry, std::vector<double>& grad) {
    if (batch.empty()) throw std::invalid_argument("pairwise_batch_loss_grad: empty batch");
    std::vector<double> scratch(f.params.size(), 0.0);
    std::vector<double> pair_grad(f.params.size(), 0.0);
    return batch_loss_grad_impl(batch, nullptr, batch.size(), grad, pair_grad,
                                seq_score_grad(f, registry, scratch));
}

double pairwise_batch_loss_grad(const StructPredictor& f, const std::vector<PairwiseLabel>& batch,
                                StructGeoCache& cache, std::vector<double>& grad) {
    if (batch.empty()) throw std::invalid_argument("pairwise_batch_loss_grad: empty batch");
    std::vector<double> scratch(f.params.size(), 0.0);
    std::vector<double> pair_grad(f.params.size(), 0.0);
    return batch_loss_grad_impl(batch, nullptr, batch.size(), grad, pair_grad,
                                struct_score_grad(f, cache, scratch));
}

std::vector<double> pairwise_finetune(SeqPredictor& f, const std::vector<PairwiseLabel>& kept,
                                      const SequenceRegistry& registry, const FinetuneConfig& cfg,
                                      Rng& rng) {
    std::vector<double> scratch(f.params.size(), 0.0);
    return finetune_impl(f.params, kept, cfg, rng, seq_score_grad(f, registry, scratch));
}

std::vector<double> pairwise_finetune(StructPredictor& f, const std::vector<PairwiseLabel>& kept,
                                      StructGeoCache& cache, const FinetuneConfig& cfg, Rng& rng) {
    std::vector<double> scratch(f.params.size(), 0.0);
    return finetune_impl(f.params, kept, cfg, rng, struct_score_grad(f, cache, scratch));
}

CoteachResult coteach(SeqPredictor& fa, StructPredictor& fb,
                      const std::vector<PairwiseLabel>& labels, int rounds,
                      const FinetuneConfig& cfg, const SequenceRegistry& registry, Rng& rng,
                      const CoteachObserver& observer) {
    if (rounds < 1) throw std::invalid_argument("coteach: rounds must be >= 1");
    CoteachResult result;
    StructGeoCache cache(registry, fb.cfg.knn);
    const PairScorer seq_scorer = make_seq_scorer(fa, registry);
    const PairScorer struct_scorer = make_struct_scorer(fb, cache);
    for (int r = 0; r < rounds; ++r) {
        CoteachRoundReport report;
        report.round = r;

        const ConsensusReport by_seq = consensus_filter(seq_scorer, labels);
        report.seq_teacher_agreement = by_seq.agreement_rate;
        report.seq_teacher_kept = by_seq.kept.size();
        if (by_seq.kept.empty()) {
            result.warnings.push_back("round " + std::to_string(r) +
                                      ": sequence teacher kept no labels; structure fine-tune skipped");
        } else {
            pairwise_finetune(fb, by_seq.kept, cache, cfg, rng);
        }
        if (observer) observer(r, "seq", by_seq);

        const ConsensusReport by_struct = consensus_filter(struct_scorer, labels);
        report.struct_teacher_agreement = by_struct.agreement_rate;
        report.struct_teacher_kept = by_struct.kept.size();
        if (by_struct.kept.empty()) {
            result.warnings.push_back("round " + std::to_string(r) +
                                      ": structure teacher kept no labels; sequence fine-tune skipped");
        } else {
            pairwise_finetune(fa, by_struct.kept, registry, cfg, rng);
        }
        if (observer) observer(r, "struct", by_struct);
        result.rounds.push_back(report);
    }
    return result;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b, bool* constant) {
    if (a.size() != b.size()) throw std::invalid_argument("spearman: size mismatch");
    if (a.size() < 2) throw std::invalid_argument("spearman: need at least 2 points");
    const auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&v](std::size_t x, std::size_t y) { return v[x] < v[y]; });
        std::vector<double> r(v.size());
        std::size_t i = 0;
        while (i < idx.size()) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
            const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
            for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
            i = j + 1;
        }
        return r;
    };
    const std::vector<double> ra = ranks(a), rb = ranks(b);
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= static_cast<double>(ra.size());
    mb /= static_cast<double>(rb.size());
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) {
        if (constant) *constant = true;
        return 0.0;
    }
    if (constant) *constant = false;
    return sab / std::sqrt(saa * sbb);
}

SpearmanReport spearman_eval(const PairScorer& scorer,
                             const std::vector<std::uint32_t>& antigen_ids,
                             const SequenceRegistry& registry) {
    if (antigen_ids.empty()) throw std::invalid_argument("spearman_eval: no antigens given");
    SpearmanReport report;
    for (std::uint32_t ag : antigen_ids) {
        std::vector<double> predicted, oracle;
        predicted.reserve(registry.antibodies.size());
        oracle.reserve(registry.antibodies.size());
        for (std::uint32_t ab = 0; ab < registry.antibodies.size(); ++ab) {
            predicted.push_back(scorer(ag, ab));
            oracle.push_back(
                oracle_binding_energy(registry.layout_for(ag, ab), registry.world.sigma_contact));
        }
        bool constant = false;
        const double r = spearman(predicted, oracle, &constant);
        if (constant) report.constant_flagged = true;
        report.per_antigen.emplace_back(ag, r);
        report.mean_r += r;
    }
    report.mean_r /= static_cast<double>(report.per_antigen.size());
    return report;
}

} // namespace affilab
