#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "affilab/coteach.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace affilab;
using test::central_fd;
using test::rel_err;
using test::small_registry;
using test::tiny_world;

namespace {

EnergyRecord record(std::uint32_t ag, std::uint32_t ab, double noisy) {
    EnergyRecord r;
    r.antigen_id = ag;
    r.antibody_id = ab;
    r.delta_g = noisy;
    r.delta_g_noisy = noisy;
    return r;
}

SeqPredictor small_seq(std::uint64_t seed) {
    SeqPredictorConfig cfg;
    cfg.embed_dim = 4;
    cfg.hidden = 8;
    return SeqPredictor::init(cfg, seed);
}

StructPredictor small_struct(std::uint64_t seed) {
    StructPredictorConfig cfg;
    cfg.embed_dim = 4;
    cfg.hidden = 8;
    cfg.knn = 4;
    return StructPredictor::init(cfg, seed);
}

} // namespace

TEST_CASE("build_pairs_hand_case") {
    // One antigen, four antibodies: all six unordered pairs, values chosen so
    // every label is easy to state.
    const std::vector<EnergyRecord> records = {
        record(0, 0, 5.0), record(0, 1, 3.0), record(0, 2, 4.0), record(0, 3, 1.0)};
    Rng rng(501);
    const auto pairs = build_pairs(records, 6, 1e-9, rng);
    REQUIRE(pairs.size() == 6);

    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    const double noisy[4] = {5.0, 3.0, 4.0, 1.0};
    for (const auto& p : pairs) {
        CHECK(p.antigen_id == 0);
        CHECK(p.antibody_j < p.antibody_k);
        seen.insert({p.antibody_j, p.antibody_k});
        CHECK(p.ddg == noisy[p.antibody_j] - noisy[p.antibody_k]);
        CHECK(p.y == (p.ddg > 0.0 ? 1 : 0));
    }
    CHECK(seen.size() == 6); // every pair exactly once

    // Spot-check one orientation: 0 vs 3 has ddg 4 > 0, so y = 1 (the second
    // antibody binds more strongly, i.e. lower noisy delta-G).
    for (const auto& p : pairs) {
        if (p.antibody_j == 0 && p.antibody_k == 3) {
            CHECK(p.ddg == 4.0);
            CHECK(p.y == 1);
        }
    }
}

TEST_CASE("build_pairs_drops_ties") {
    const std::vector<EnergyRecord> records = {record(0, 0, 2.0), record(0, 1, 2.0)};
    Rng rng(502);
    CHECK(build_pairs(records, 1, 1e-9, rng).empty());

    // A tie among several pairs removes only that pair.
    const std::vector<EnergyRecord> three = {record(0, 0, 2.0), record(0, 1, 2.0),
                                             record(0, 2, 7.0)};
    Rng rng2(503);
    const auto pairs = build_pairs(three, 3, 1e-9, rng2);
    CHECK(pairs.size() == 2);
    for (const auto& p : pairs) CHECK(std::abs(p.ddg) > 1e-9);
}

TEST_CASE("build_pairs_clamps_and_warns") {
    const std::vector<EnergyRecord> records = {record(0, 0, 1.0), record(0, 1, 2.0),
                                               record(0, 2, 3.0)};
    Rng rng(504);
    std::vector<std::string> warnings;
    const auto pairs = build_pairs(records, 10, 1e-9, rng, &warnings);
    CHECK(pairs.size() == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("clamped") != std::string::npos);
}

TEST_CASE("build_pairs_validates") {
    Rng rng(505);
    CHECK_THROWS(build_pairs({record(0, 0, 1.0)}, 1, 1e-9, rng));
    CHECK_THROWS(build_pairs({record(0, 0, 1.0), record(0, 1, 2.0)}, 0, 1e-9, rng));
}

TEST_CASE("build_pairs_deterministic") {
    const WorldConfig w = tiny_world();
    Rng wrng(506);
    const SequenceRegistry reg = small_registry(w, 6, 2, wrng);
    std::vector<EnergyRecord> records;
    Rng vals(507);
    for (std::uint32_t i = 0; i < 2; ++i) {
        for (std::uint32_t j = 0; j < 6; ++j) records.push_back(record(i, j, vals.gaussian()));
    }
    Rng r1(508), r2(508);
    const auto a = build_pairs(records, 5, 1e-9, r1);
    const auto b = build_pairs(records, 5, 1e-9, r2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].antigen_id == b[i].antigen_id);
        CHECK(a[i].antibody_j == b[i].antibody_j);
        CHECK(a[i].antibody_k == b[i].antibody_k);
        CHECK(a[i].ddg == b[i].ddg);
    }
}

TEST_CASE("predict_pair_label_antisymmetric") {
    const PairScorer scorer = [](std::uint32_t, std::uint32_t ab) {
        return ab == 0 ? 1.5 : -0.5;
    };
    PairwiseLabel lab;
    lab.antibody_j = 0;
    lab.antibody_k = 1;
    const PairPrediction fwd = predict_pair_label(scorer, lab);
    CHECK(fwd.margin == 2.0);
    CHECK(fwd.y_hat == 1);

    std::swap(lab.antibody_j, lab.antibody_k);
    const PairPrediction rev = predict_pair_label(scorer, lab);
    CHECK(rev.margin == -2.0);
    CHECK(rev.y_hat == 0);

    // Zero margin predicts class 0.
    const PairScorer flat = [](std::uint32_t, std::uint32_t) { return 3.0; };
    CHECK(predict_pair_label(flat, lab).y_hat == 0);
}

TEST_CASE("consensus_filter_matches_brute_force") {
    const WorldConfig w = tiny_world();
    Rng wrng(509);
    const SequenceRegistry reg = small_registry(w, 8, 2, wrng);
    std::vector<EnergyRecord> records;
    Rng vals(510);
    for (std::uint32_t i = 0; i < 2; ++i) {
        for (std::uint32_t j = 0; j < 8; ++j) records.push_back(record(i, j, vals.gaussian()));
    }
    Rng prng(511);
    const auto labels = build_pairs(records, 25, 1e-9, prng);
    REQUIRE(labels.size() == 50);

    const SeqPredictor f = small_seq(512);
    const PairScorer scorer = make_seq_scorer(f, reg);
    const ConsensusReport report = consensus_filter(scorer, labels);

    CHECK(report.kept.size() + report.dropped.size() == labels.size());
    CHECK(report.agreement_rate ==
          doctest::Approx(static_cast<double>(report.kept.size()) / 50.0).epsilon(1e-15));
    for (const auto& lab : report.kept) {
        CHECK(predict_pair_label(scorer, lab).y_hat == lab.y);
    }
    for (const auto& lab : report.dropped) {
        CHECK(predict_pair_label(scorer, lab).y_hat != lab.y);
    }

    const ConsensusReport empty = consensus_filter(scorer, {});
    CHECK(empty.agreement_rate == 0.0);
    CHECK(empty.kept.empty());
}

TEST_CASE("pairwise_loss_is_ln2_at_zero_margin") {
    const WorldConfig w = tiny_world();
    Rng wrng(513);
    const SequenceRegistry reg = small_registry(w, 2, 1, wrng);

    SeqPredictor f = small_seq(514);
    std::fill(f.params.begin(), f.params.end(), 0.0); // every score is zero

    PairwiseLabel lab;
    lab.antigen_id = 0;
    lab.antibody_j = 0;
    lab.antibody_k = 1;
    for (int y : {0, 1}) {
        lab.y = y;
        std::vector<double> grad(f.params.size(), 0.0);
        const double loss = pairwise_batch_loss_grad(f, {lab}, reg, grad);
        CHECK(std::abs(loss - std::log(2.0)) <= 1e-12);
    }
    std::vector<double> grad(f.params.size(), 0.0);
    CHECK_THROWS(pairwise_batch_loss_grad(f, {}, reg, grad));
}

TEST_CASE("pairwise_batch_loss_grad_matches_fd_seq") {
    const WorldConfig w = tiny_world();
    Rng wrng(515);
    const SequenceRegistry reg = small_registry(w, 5, 2, wrng);
    std::vector<EnergyRecord> records;
    Rng vals(516);
    for (std::uint32_t i = 0; i < 2; ++i) {
        for (std::uint32_t j = 0; j < 5; ++j) records.push_back(record(i, j, vals.gaussian()));
    }
    Rng prng(517);
    const auto labels = build_pairs(records, 4, 1e-9, prng);
    REQUIRE(labels.size() >= 6);

    SeqPredictor f = small_seq(518);
    std::vector<double> grad(f.params.size(), 0.0);
    const double loss = pairwise_batch_loss_grad(f, labels, reg, grad);
    CHECK(std::isfinite(loss));

    auto eval = [&](const std::vector<double>& q) {
        SeqPredictor probe = f;
        probe.params = q;
        std::vector<double> sink(probe.params.size(), 0.0);
        return pairwise_batch_loss_grad(probe, labels, reg, sink);
    };
    Rng pick(519);
    for (int k = 0; k < 15; ++k) {
        const std::size_t i = pick.below(f.params.size());
        const double fd = central_fd(f.params, i, 1e-6, eval);
        CHECK(rel_err(grad[i], fd) < 1e-5);
    }
}

TEST_CASE("pairwise_batch_loss_grad_matches_fd_struct") {
    const WorldConfig w = tiny_world();
    Rng wrng(520);
    const SequenceRegistry reg = small_registry(w, 5, 2, wrng);
    std::vector<EnergyRecord> records;
    Rng vals(521);
    for (std::uint32_t i = 0; i < 2; ++i) {
        for (std::uint32_t j = 0; j < 5; ++j) records.push_back(record(i, j, vals.gaussian()));
    }
    Rng prng(522);
    const auto labels = build_pairs(records, 4, 1e-9, prng);

    StructPredictor f = small_struct(523);
    StructGeoCache cache(reg, f.cfg.knn);
    std::vector<double> grad(f.params.size(), 0.0);
    const double loss = pairwise_batch_loss_grad(f, labels, cache, grad);
    CHECK(std::isfinite(loss));

    auto eval = [&](const std::vector<double>& q) {
        StructPredictor probe = f;
        probe.params = q;
        std::vector<double> sink(probe.params.size(), 0.0);
        return pairwise_batch_loss_grad(probe, labels, cache, sink);
    };
    Rng pick(524);
    for (int k = 0; k < 15; ++k) {
        const std::size_t i = pick.below(f.params.size());
        // The geometric features are O(10), so h = 1e-6 loses digits to
        // cancellation; h = 1e-5 keeps the difference well conditioned.
        const double fd = central_fd(f.params, i, 1e-5, eval);
        CHECK(rel_err(grad[i], fd) < 1e-4);
    }
}

TEST_CASE("pairwise_finetune_reduces_loss") {
    const WorldConfig w = tiny_world();
    Rng wrng(525);
    const SequenceRegistry reg = small_registry(w, 6, 2, wrng);
    // Noise-free comparisons from the exact oracle.
    std::vector<EnergyRecord> records;
    for (std::uint32_t i = 0; i < 2; ++i) {
        for (std::uint32_t j = 0; j < 6; ++j) {
            const double dg = oracle_binding_energy(reg.layout_for(i, j), w.sigma_contact);
            records.push_back(record(i, j, dg));
        }
    }
    Rng prng(526);
    const auto labels = build_pairs(records, 10, 1e-9, prng);
    REQUIRE(!labels.empty());

    SeqPredictor f = small_seq(527);
    FinetuneConfig cfg;
    cfg.epochs = 60;
    cfg.batch = 64;
    cfg.lr = 3e-3;
    Rng trng(528);
    const auto curve = pairwise_finetune(f, labels, reg, cfg, trng);
    REQUIRE(curve.size() == 60);
    CHECK(curve.back() < curve.front());

    StructPredictor fb = small_struct(529);
    StructGeoCache cache(reg, fb.cfg.knn);
    Rng trng2(530);
    const auto curve2 = pairwise_finetune(fb, labels, cache, cfg, trng2);
    CHECK(curve2.back() < curve2.front());

    Rng trng3(531);
    CHECK_THROWS(pairwise_finetune(f, {}, reg, cfg, trng3));
}

TEST_CASE("coteach_alternates_and_reports") {
    const WorldConfig w = tiny_world();
    Rng wrng(532);
    const SequenceRegistry reg = small_registry(w, 6, 2, wrng);
    std::vector<EnergyRecord> records;
    for (std::uint32_t i = 0; i < 2; ++i) {
        for (std::uint32_t j = 0; j < 6; ++j) {
            const double dg = oracle_binding_energy(reg.layout_for(i, j), w.sigma_contact);
            records.push_back(record(i, j, dg));
        }
    }
    Rng prng(533);
    const auto labels = build_pairs(records, 8, 1e-9, prng);

    SeqPredictor fa = small_seq(534);
    StructPredictor fb = small_struct(535);
    const std::vector<double> fa_before = fa.params;
    const std::vector<double> fb_before = fb.params;

    FinetuneConfig cfg;
    cfg.epochs = 5;
    cfg.batch = 64;
    cfg.lr = 1e-3;

    struct Call {
        int round;
        std::string teacher;
        std::size_t kept;
    };
    std::vector<Call> calls;
    const CoteachObserver observer = [&](int round, const char* teacher,
                                         const ConsensusReport& rep) {
        calls.push_back(Call{round, teacher, rep.kept.size()});
    };

    Rng crng(536);
    const CoteachResult res = coteach(fa, fb, labels, 2, cfg, reg, crng, observer);
    REQUIRE(res.rounds.size() == 2);
    CHECK(res.rounds[0].round == 0);
    CHECK(res.rounds[1].round == 1);

    // Observer fires twice per round: sequence teacher first, then structure.
    REQUIRE(calls.size() == 4);
    CHECK(calls[0].round == 0);
    CHECK(calls[0].teacher == "seq");
    CHECK(calls[0].kept == res.rounds[0].seq_teacher_kept);
    CHECK(calls[1].teacher == "struct");
    CHECK(calls[1].kept == res.rounds[0].struct_teacher_kept);
    CHECK(calls[2].round == 1);
    CHECK(calls[2].teacher == "seq");
    CHECK(calls[3].teacher == "struct");

    // Both predictors were actually updated (non-empty kept sets here).
    CHECK(res.rounds[0].seq_teacher_kept > 0);
    CHECK(res.rounds[0].struct_teacher_kept > 0);
    CHECK(fa.params != fa_before);
    CHECK(fb.params != fb_before);

    Rng crng2(537);
    CHECK_THROWS(coteach(fa, fb, labels, 0, cfg, reg, crng2));
}

TEST_CASE("coteach_warns_when_filter_keeps_nothing") {
    const WorldConfig w = tiny_world();
    Rng wrng(538);
    const SequenceRegistry reg = small_registry(w, 2, 1, wrng);

    SeqPredictor fa = small_seq(539);
    StructPredictor fb = small_struct(540);

    // One label whose class is flipped against the sequence teacher's
    // prediction: the filter keeps nothing and the structure fine-tune is
    // skipped with a warning.
    PairwiseLabel lab;
    lab.antigen_id = 0;
    lab.antibody_j = 0;
    lab.antibody_k = 1;
    lab.ddg = 1.0;
    const PairScorer seq_scorer = make_seq_scorer(fa, reg);
    lab.y = 1 - predict_pair_label(seq_scorer, lab).y_hat;
    lab.ddg = lab.y == 1 ? 1.0 : -1.0;

    FinetuneConfig cfg;
    cfg.epochs = 2;
    Rng crng(541);
    const CoteachResult res = coteach(fa, fb, {lab}, 1, cfg, reg, crng);
    REQUIRE(res.rounds.size() == 1);
    CHECK(res.rounds[0].seq_teacher_kept == 0);
    REQUIRE(!res.warnings.empty());
    CHECK(res.warnings[0].find("kept no labels") != std::string::npos);
}

TEST_CASE("spearman_hand_values") {
    CHECK(spearman({1, 2, 3}, {10, 20, 30}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(spearman({1, 2, 3}, {30, 20, 10}) == doctest::Approx(-1.0).epsilon(1e-15));

    // Tied pair: average ranks give 3/sqrt(10).
    CHECK(spearman({1, 2, 2, 3}, {1, 2, 3, 4}) ==
          doctest::Approx(0.9486832980505138).epsilon(1e-15));

    // No ties: rank arithmetic is exact, result is exactly -0.6.
    CHECK(spearman({17, 86, 60, 77, 47}, {70, 29, 85, 61, 80}) == -0.6);

    bool constant = false;
    CHECK(spearman({5, 5, 5, 5}, {1, 2, 3, 4}, &constant) == 0.0);
    CHECK(constant);
    constant = false;
    CHECK(spearman({1, 2, 3, 4}, {2, 2, 2, 2}, &constant) == 0.0);
    CHECK(constant);

    CHECK_THROWS(spearman({1, 2}, {1, 2, 3}));
    CHECK_THROWS(spearman({1}, {2}));
}

TEST_CASE("spearman_eval_oracle_scorer_is_perfect") {
    const WorldConfig w = tiny_world();
    Rng wrng(542);
    const SequenceRegistry reg = small_registry(w, 5, 3, wrng);
    const PairScorer oracle = [&](std::uint32_t ag, std::uint32_t ab) {
        return oracle_binding_energy(reg.layout_for(ag, ab), w.sigma_contact);
    };
    const SpearmanReport rep = spearman_eval(oracle, {0, 1, 2}, reg);
    REQUIRE(rep.per_antigen.size() == 3);
    for (const auto& [ag, r] : rep.per_antigen) CHECK(r == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.mean_r == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(rep.constant_flagged);
    CHECK_THROWS(spearman_eval(oracle, {}, reg));
}

TEST_CASE("struct_geo_cache_matches_direct_featurization") {
    const WorldConfig w = tiny_world();
    Rng wrng(543);
    const SequenceRegistry reg = small_registry(w, 3, 2, wrng);
    StructGeoCache cache(reg, 4);

    const StructGeoFeatures& cached = cache.get(1, 2);
    const ComplexLayout layout = reg.layout_for(1, 2);
    const Structure x = oracle_mean_structure(layout.full);
    const StructGeoFeatures direct = geo_featurize(x, layout.full, layout, 4);

    REQUIRE(cached.rows.size() == direct.rows.size());
    for (std::size_t r = 0; r < direct.rows.size(); ++r) {
        CHECK(cached.rows[r].pos == direct.rows[r].pos);
        CHECK(cached.rows[r].type == direct.rows[r].type);
        CHECK(cached.rows[r].neighbors == direct.rows[r].neighbors);
        CHECK(cached.rows[r].distances == direct.rows[r].distances);
        for (int c = 0; c < 6; ++c) CHECK(cached.rows[r].bonds[c] == direct.rows[r].bonds[c]);
    }
    // Second lookup returns the same cached object.
    CHECK(&cache.get(1, 2) == &cached);
}
