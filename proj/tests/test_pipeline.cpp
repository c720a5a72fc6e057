#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "affilab/pipeline.hpp"
#include "affilab/tables.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace affilab;
using test::scratch_dir;
using test::small_registry;
using test::tiny_world;

namespace {

std::size_t hamming(const Sequence& a, const Sequence& b) {
    REQUIRE(a.size() == b.size());
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) ++d;
    }
    return d;
}

PipelineModels untrained_models(std::uint64_t seed) {
    FlowModelConfig fcfg;
    fcfg.hidden = 16;
    fcfg.time_dim = 4;
    fcfg.embed_dim = 4;
    SeqPredictorConfig scfg;
    scfg.embed_dim = 4;
    scfg.hidden = 8;
    StructPredictorConfig gcfg;
    gcfg.embed_dim = 4;
    gcfg.hidden = 8;
    gcfg.knn = 4;
    InverseFoldConfig icfg;
    icfg.hidden = 8;
    icfg.knn = 4;
    return PipelineModels{FlowModel::init(fcfg, mix_seed(seed, 1)),
                          SeqPredictor::init(scfg, mix_seed(seed, 2)),
                          StructPredictor::init(gcfg, mix_seed(seed, 3)),
                          InverseFoldModel::init(icfg, mix_seed(seed, 4))};
}

// Two iterations, arities {1, 2}: designs stay within Hamming distance 4 of
// the wildtype, and every run finishes in well under a second.
RunConfig tiny_cfg(const WorldConfig& w) {
    RunConfig cfg;
    cfg.world = w;
    cfg.relax.max_iters = 15;
    cfg.iterations = 2;
    cfg.arities = {1, 2};
    cfg.per_arity = 2;
    cfg.top_m = 2;
    cfg.final_designs = 2;
    cfg.seeds = {1};
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("metric_imp_counts_strict_improvements") {
    CHECK(metric_imp({-3.0, -1.0}, {-2.0, -2.0}) == 0.5);
    CHECK(metric_imp({-2.0}, {-2.0}) == 0.0); // equality is not an improvement
    CHECK(metric_imp({-5.0, -4.0, -3.0}, {-1.0, -1.0, -1.0}) == 1.0);
    CHECK_THROWS(metric_imp({}, {}));
    CHECK_THROWS(metric_imp({1.0}, {1.0, 2.0}));
}

TEST_CASE("metric_sim_hand_values") {
    const std::vector<std::uint32_t> cdr = {4, 5, 6};
    const Sequence base("AAAAAAAAAAAA");
    Sequence two_off("AAAACCAAAAAA"); // differs at CDR positions 4 and 5
    CHECK(metric_sim({{base}, {base}}, cdr) == 1.0);
    CHECK(metric_sim({{base}, {two_off}}, cdr) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    Sequence all_off("AAAACCCAAAAA");
    CHECK(metric_sim({{base}, {all_off}}, cdr) == 0.0);

    // Brute-force average over the four cross-antigen pairs.
    const std::vector<std::vector<Sequence>> groups = {{base, two_off}, {base, all_off}};
    double total = 0.0;
    int pairs = 0;
    for (const Sequence& sa : groups[0]) {
        for (const Sequence& sb : groups[1]) {
            int same = 0;
            for (std::uint32_t p : cdr) same += sa[p] == sb[p];
            total += same / 3.0;
            ++pairs;
        }
    }
    CHECK(metric_sim(groups, cdr) == doctest::Approx(total / pairs).epsilon(1e-15));

    CHECK_THROWS(metric_sim({{base}}, cdr));              // one antigen
    CHECK_THROWS(metric_sim({{base}, {base}}, {}));       // empty CDR
    CHECK_THROWS(metric_sim({{base}, {}}, cdr));          // no cross pairs
}

TEST_CASE("metric_nat_two_residue_closed_form") {
    // For a single two-residue design the score reduces to
    // sqrt(P(second | first)) under the transition table.
    const WorldTables& tables = baked_tables();
    const Sequence s("AC");
    const double p = tables.markov[residue_index('A')][residue_index('C')];
    REQUIRE(p >= 1e-6);
    const NatReport rep = metric_nat({s});
    CHECK(rep.nat == doctest::Approx(std::sqrt(p)).epsilon(1e-12));
    CHECK_FALSE(rep.floored);

    // A floored transition is flagged and scored at the floor.
    WorldTables tiny = tables;
    tiny.markov[residue_index('A')][residue_index('C')] = 1e-12;
    const NatReport floored = metric_nat({s}, tiny);
    CHECK(floored.floored);
    CHECK(floored.nat == doctest::Approx(1e-3).epsilon(1e-12));

    CHECK_THROWS(metric_nat({}));
    CHECK_THROWS(metric_nat({Sequence("A")}));
}

TEST_CASE("metric_nat_stays_in_unit_interval") {
    const WorldConfig w = tiny_world();
    Rng rng(601);
    const SequenceRegistry reg = small_registry(w, 12, 1, rng);
    const NatReport rep = metric_nat(reg.antibodies);
    CHECK(rep.nat > 0.0);
    CHECK(rep.nat <= 1.0);
}

TEST_CASE("median_conventions") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK(median({7.0}) == 7.0);
    CHECK_THROWS(median({}));
}

TEST_CASE("wildtype_is_median_binder") {
    const WorldConfig w = tiny_world();
    Rng rng(602);
    SequenceRegistry reg = small_registry(w, 5, 1, rng);

    const auto scored_ids = [&]() {
        std::vector<std::pair<double, std::uint32_t>> scored;
        for (std::uint32_t ab = 0; ab < reg.antibodies.size(); ++ab) {
            scored.emplace_back(oracle_binding_energy(reg.layout_for(0, ab), w.sigma_contact), ab);
        }
        std::sort(scored.begin(), scored.end());
        return scored;
    };
    CHECK(wildtype_antibody(reg, 0) == scored_ids()[2].second); // odd count: the middle

    reg.antibodies.pop_back();
    CHECK(wildtype_antibody(reg, 0) == scored_ids()[1].second); // even count: lower middle

    // Identical scores fall back to the smaller antibody id.
    SequenceRegistry twins;
    twins.world = w;
    twins.antibodies = {reg.antibodies[0], reg.antibodies[0]};
    twins.antigens = {reg.antigens[0]};
    CHECK(wildtype_antibody(twins, 0) == 0);

    SequenceRegistry empty;
    empty.world = w;
    empty.antigens = {reg.antigens[0]};
    CHECK_THROWS(wildtype_antibody(empty, 0));
}

TEST_CASE("config_round_trips_through_text") {
    RunConfig cfg;
    cfg.world.cdr_positions = {2, 3};
    cfg.schedule_levels = {1.0, 0.25, 0.0};
    cfg.schedule_mode = ScheduleMode::FlowTimes;
    cfg.guidance.cdr_only = false;
    cfg.noise.outlier_rate = 0.125;
    cfg.flow_train.lr = 7e-4;
    cfg.seeds = {7, 8};
    cfg.arities = {2};
    cfg.ablation.no_pc = true;
    cfg.paths.data_dir = "dd";

    const std::string text = config_to_text(cfg);
    const std::string dir = scratch_dir("config_roundtrip");
    const std::string path = dir + "/roundtrip.config";
    std::ofstream(path) << text;

    const RunConfig loaded = load_config(path);
    CHECK(config_to_text(loaded) == text);
    CHECK(loaded.world.cdr_positions == cfg.world.cdr_positions);
    CHECK(loaded.schedule_mode == ScheduleMode::FlowTimes);
    CHECK(loaded.guidance.cdr_only == false);
    CHECK(loaded.noise.outlier_rate == 0.125);
    CHECK(loaded.flow_train.lr == 7e-4);
    CHECK(loaded.seeds == cfg.seeds);
    CHECK(loaded.ablation.no_pc == true);
    CHECK(loaded.paths.data_dir == "dd");
}

TEST_CASE("config_errors_name_key_and_line") {
    RunConfig cfg;
    CHECK_THROWS_WITH_AS(apply_config_kv(cfg, "world.bogus", "1"),
                         doctest::Contains("unknown config key"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(apply_config_kv(cfg, "world.antibody_length", "abc"),
                         doctest::Contains("cannot parse"), std::invalid_argument);
    CHECK_THROWS(apply_config_kv(cfg, "world.antibody_length", "12x"));
    CHECK_THROWS(apply_config_kv(cfg, "pipeline.carry_best_only", "1"));
    CHECK_THROWS(apply_config_kv(cfg, "flow.schedule_mode", "bogus"));
    CHECK_THROWS(apply_config_kv(cfg, "pipeline.arities", ""));

    const std::string dir = scratch_dir("config_errors");
    const std::string path = dir + "/bad.config";
    std::ofstream(path) << "world.antibody_length = 24\n# fine\n\nnot a key value line\n";
    try {
        load_config(path);
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find(":4:") != std::string::npos);
    }

    std::ofstream(path) << "world.antibody_length = 24\nworld.bogus = 1\n";
    try {
        load_config(path);
        FAIL("expected an unknown-key error");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find(":2:") != std::string::npos);
        CHECK(msg.find("unknown config key") != std::string::npos);
    }

    CHECK_THROWS_AS(load_config(dir + "/absent.config"), std::runtime_error);

    // Comments and blank lines parse cleanly.
    std::ofstream(path) << "# header\n\nworld.antibody_length = 20 # trailing comment\n";
    CHECK(load_config(path).world.antibody_length == 20);
}

TEST_CASE("shipped_default_config_matches_defaults") {
    const std::string path = std::string(AFFILAB_SOURCE_DIR) + "/default.config";
    CHECK(slurp(path) == config_to_text(RunConfig{}));
}

TEST_CASE("run_maturation_design_contract") {
    const WorldConfig w = tiny_world();
    Rng rng(603);
    const SequenceRegistry reg = small_registry(w, 6, 2, rng);
    const RunConfig cfg = tiny_cfg(w);
    const PipelineModels models = untrained_models(604);
    const std::vector<std::uint32_t> ags = {0, 1};

    const auto designs = run_maturation(cfg, models, reg, ags, 77);
    REQUIRE(!designs.empty());

    std::map<std::uint32_t, int> per_antigen;
    for (const DesignRecord& d : designs) {
        ++per_antigen[d.antigen_id];
        CHECK_FALSE(d.wildtype_fallback);

        const std::uint32_t wt_id = wildtype_antibody(reg, d.antigen_id);
        const Sequence& wt = reg.antibodies[wt_id];
        CHECK(d.wildtype_dg ==
              oracle_binding_energy(reg.layout_for(d.antigen_id, wt_id), w.sigma_contact));
        CHECK(d.oracle_dg == oracle_binding_energy(reg.layout_for_antibody(d.antigen_id, d.antibody),
                                                   w.sigma_contact));
        CHECK(d.seq_score ==
              predict_seq(models.seq, d.antibody, reg.antigens.at(d.antigen_id)));

        const std::size_t dist = hamming(d.antibody, wt);
        CHECK(dist >= 1);
        CHECK(dist <= 4); // iterations x max arity
        for (std::size_t i = 0; i < d.antibody.size(); ++i) {
            if (d.antibody[i] != wt[i]) {
                CHECK(std::count(w.cdr_positions.begin(), w.cdr_positions.end(), i) == 1);
            }
        }
        CHECK(d.iteration >= 1);
        CHECK(d.iteration <= cfg.iterations);
        CHECK(!d.mutation_path.empty());
        CHECK(d.mutation_path[0] == 'i');
    }
    for (const auto& [ag, n] : per_antigen) {
        CHECK(n >= 1);
        CHECK(n <= cfg.final_designs);
    }

    // Per antigen, designs come out ranked by predictor score.
    for (std::size_t i = 1; i < designs.size(); ++i) {
        if (designs[i].antigen_id == designs[i - 1].antigen_id) {
            CHECK(designs[i - 1].seq_score <= designs[i].seq_score);
        }
    }

    // Identical (config, seed) reproduces the output byte for byte.
    const auto rerun = run_maturation(cfg, models, reg, ags, 77);
    const CsvTable a = designs_to_csv(designs);
    const CsvTable b = designs_to_csv(rerun);
    CHECK(a.header == b.header);
    CHECK(a.rows == b.rows);

    RunConfig bad = cfg;
    bad.iterations = 0;
    CHECK_THROWS(run_maturation(bad, models, reg, ags, 77));
    CHECK_THROWS(run_maturation(cfg, models, reg, {}, 77));
}

TEST_CASE("run_maturation_logs_proposals_and_trajectories") {
    const WorldConfig w = tiny_world();
    Rng rng(605);
    const SequenceRegistry reg = small_registry(w, 6, 2, rng);
    const RunConfig cfg = tiny_cfg(w);
    const PipelineModels models = untrained_models(606);
    const std::vector<std::uint32_t> ags = {0, 1};

    std::vector<ProposalLogRow> proposals;
    std::vector<TrajectoryStat> trajectory;
    const auto designs = run_maturation(cfg, models, reg, ags, 78, &proposals, &trajectory);

    REQUIRE(!proposals.empty());
    const std::set<std::uint32_t> cdr(w.cdr_positions.begin(), w.cdr_positions.end());
    std::set<std::string> proposed;
    for (const ProposalLogRow& row : proposals) {
        CHECK((row.antigen_id == 0 || row.antigen_id == 1));
        CHECK(row.iteration >= 1);
        CHECK(row.iteration <= cfg.iterations);
        CHECK((row.arity == 1 || row.arity == 2));

        int n_positions = 0;
        std::stringstream ss(row.positions);
        std::string tok;
        while (std::getline(ss, tok, '+')) {
            ++n_positions;
            CHECK(cdr.count(static_cast<std::uint32_t>(std::stoul(tok))) == 1);
        }
        CHECK(n_positions == row.arity);

        CHECK(row.parent_hash.size() == 16);
        for (char c : row.parent_hash) CHECK(std::string("0123456789abcdef").find(c) != std::string::npos);
        CHECK(row.mutant_sequence.size() == static_cast<std::size_t>(w.antibody_length));
        CHECK(std::isfinite(row.seq_score));
        proposed.insert(std::to_string(row.antigen_id) + ":" + row.mutant_sequence);
    }
    // Every emitted design was first logged as a proposal.
    for (const DesignRecord& d : designs) {
        CHECK(proposed.count(std::to_string(d.antigen_id) + ":" + d.antibody.str()) == 1);
    }

    // One trajectory row per schedule knot; every draw lands in each knot's mean.
    const std::vector<double> times = schedule_flow_times(cfg.make_schedule(), cfg.schedule_mode);
    REQUIRE(trajectory.size() == times.size());
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        CHECK(trajectory[k].step == static_cast<int>(k));
        CHECK(trajectory[k].t == times[k]);
        CHECK(trajectory[k].samples == 4); // 2 antigens x 2 iterations
        CHECK(std::isfinite(trajectory[k].mean_struct_score));
        CHECK(trajectory[k].mean_physics_energy >= 0.0);
    }

    // Ablations: a single iteration caps the logs, and bypassing the
    // generator leaves the trajectory sink untouched.
    RunConfig one = cfg;
    one.ablation.one_iteration = true;
    std::vector<ProposalLogRow> one_props;
    std::vector<TrajectoryStat> one_traj;
    for (const DesignRecord& d : run_maturation(one, models, reg, ags, 78, &one_props, &one_traj)) {
        CHECK(d.iteration == 1);
    }
    for (const ProposalLogRow& row : one_props) CHECK(row.iteration == 1);
    for (const TrajectoryStat& s : one_traj) CHECK(s.samples == 2);

    RunConfig noflow = cfg;
    noflow.ablation.no_flow = true;
    noflow.no_flow_iters = 5;
    std::vector<TrajectoryStat> empty_traj;
    run_maturation(noflow, models, reg, ags, 78, nullptr, &empty_traj);
    CHECK(empty_traj.empty());
}

TEST_CASE("compute_metrics_matches_direct_metric_calls") {
    const WorldConfig w = tiny_world();
    Rng rng(607);
    const SequenceRegistry reg = small_registry(w, 6, 2, rng);
    const RunConfig cfg = tiny_cfg(w);
    const PipelineModels models = untrained_models(608);
    const auto designs = run_maturation(cfg, models, reg, {0, 1}, 79);

    const MetricsReport report = compute_metrics(designs, reg);

    std::vector<double> dg, wt;
    std::map<std::uint32_t, std::vector<Sequence>> by_antigen;
    std::vector<Sequence> all;
    for (const DesignRecord& d : designs) {
        dg.push_back(d.oracle_dg);
        wt.push_back(d.wildtype_dg);
        by_antigen[d.antigen_id].push_back(d.antibody);
        all.push_back(d.antibody);
    }
    CHECK(report.imp == metric_imp(dg, wt));

    std::vector<std::vector<Sequence>> groups;
    for (auto& [ag, seqs] : by_antigen) groups.push_back(seqs);
    CHECK(report.sim == metric_sim(groups, w.cdr_positions));

    const NatReport nat = metric_nat(all);
    CHECK(report.nat == nat.nat);
    CHECK(report.nat_floored == nat.floored);

    REQUIRE(report.per_antigen_imp.size() == by_antigen.size());
    for (const auto& [ag, imp] : report.per_antigen_imp) {
        std::vector<double> adg, awt;
        for (const DesignRecord& d : designs) {
            if (d.antigen_id == ag) {
                adg.push_back(d.oracle_dg);
                awt.push_back(d.wildtype_dg);
            }
        }
        CHECK(imp == metric_imp(adg, awt));
    }

    CHECK_THROWS(compute_metrics({}, reg));
}

TEST_CASE("run_ablations_covers_grid_and_swaps_models") {
    const WorldConfig w = tiny_world();
    Rng rng(609);
    const SequenceRegistry reg = small_registry(w, 6, 2, rng);
    RunConfig cfg = tiny_cfg(w);
    cfg.ablation.no_pc = true; // must be ignored: each variant sets its own flags

    AblationModelSet models;
    models.full = untrained_models(610);
    SeqPredictorConfig scfg;
    scfg.embed_dim = 4;
    scfg.hidden = 8;
    StructPredictorConfig gcfg;
    gcfg.embed_dim = 4;
    gcfg.hidden = 8;
    gcfg.knn = 4;
    models.seq_supervised = SeqPredictor::init(scfg, 611);
    models.struct_supervised = StructPredictor::init(gcfg, 612);
    models.seq_unfiltered = SeqPredictor::init(scfg, 613);
    models.struct_unfiltered = StructPredictor::init(gcfg, 614);

    const std::vector<std::uint32_t> ags = {0, 1};
    const auto rows = run_ablations(cfg, models, reg, ags);
    const auto& variants = ablation_variants();
    REQUIRE(rows.size() == variants.size() * cfg.seeds.size());
    for (std::size_t v = 0; v < variants.size(); ++v) {
        for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
            const AblationRow& row = rows[v * cfg.seeds.size() + s];
            CHECK(row.variant == variants[v]);
            CHECK(row.seed == cfg.seeds[s]);
        }
    }

    // The full variant runs with every flag cleared.
    RunConfig clean = cfg;
    clean.ablation = AblationFlags{};
    const MetricsReport full_direct =
        compute_metrics(run_maturation(clean, models.full, reg, ags, cfg.seeds[0]), reg);
    CHECK(rows[0].metrics.imp == full_direct.imp);
    CHECK(rows[0].metrics.sim == full_direct.sim);
    CHECK(rows[0].metrics.nat == full_direct.nat);

    // no_energy swaps in the supervised-only predictors.
    PipelineModels supervised = models.full;
    supervised.seq = models.seq_supervised;
    supervised.struct_pred = models.struct_supervised;
    const MetricsReport no_energy_direct =
        compute_metrics(run_maturation(clean, supervised, reg, ags, cfg.seeds[0]), reg);
    const std::size_t ne = 4 * cfg.seeds.size(); // index of the no_energy block
    CHECK(rows[ne].variant == "no_energy");
    CHECK(rows[ne].metrics.imp == no_energy_direct.imp);
    CHECK(rows[ne].metrics.sim == no_energy_direct.sim);
    CHECK(rows[ne].metrics.nat == no_energy_direct.nat);
}

TEST_CASE("gamma_sweep_normalizes_at_configured_default") {
    const WorldConfig w = tiny_world();
    Rng rng(615);
    const SequenceRegistry reg = small_registry(w, 6, 2, rng);
    RunConfig cfg = tiny_cfg(w);
    cfg.sweep_gamma = {0.0, 5.0};
    REQUIRE(cfg.guidance.gamma == 5.0);
    const PipelineModels models = untrained_models(616);

    const auto points = run_gamma_sweep(cfg, models, reg, {0, 1});
    REQUIRE(points.size() == 2);
    CHECK(points[0].value == 0.0);
    CHECK(points[1].value == 5.0);

    const SweepPoint& anchor = points[1];
    CHECK(anchor.imp_norm == (anchor.imp != 0.0 ? 1.0 : 0.0));
    CHECK(anchor.sim_norm == (anchor.sim != 0.0 ? 1.0 : 0.0));
    CHECK(anchor.nat_norm == 1.0); // nat is always positive
    for (const SweepPoint& p : points) {
        CHECK(p.imp_norm == (anchor.imp == 0.0 ? 0.0 : p.imp / anchor.imp));
        CHECK(p.sim_norm == (anchor.sim == 0.0 ? 0.0 : p.sim / anchor.sim));
        CHECK(p.nat_norm == p.nat / anchor.nat);
    }

    RunConfig missing = cfg;
    missing.sweep_gamma = {0.0, 2.5};
    CHECK_THROWS_WITH_AS(run_gamma_sweep(missing, models, reg, {0, 1}),
                         doctest::Contains("must contain the configured default"),
                         std::invalid_argument);
}

TEST_CASE("steps_sweep_uses_configured_schedule_at_its_own_count") {
    const WorldConfig w = tiny_world();
    Rng rng(617);
    const SequenceRegistry reg = small_registry(w, 6, 2, rng);
    RunConfig cfg = tiny_cfg(w);
    // An uneven schedule so the anchor is distinguishable from the evenly
    // spaced grid used at other step counts.
    cfg.schedule_levels = {1.0, 0.7, 0.0};
    cfg.sweep_steps = {1, 2};
    const PipelineModels models = untrained_models(618);
    const std::vector<std::uint32_t> ags = {0, 1};

    const auto points = run_steps_sweep(cfg, models, reg, ags);
    REQUIRE(points.size() == 2);
    CHECK(points[0].value == 1.0);
    CHECK(points[1].value == 2.0);

    RunConfig one_step = cfg;
    one_step.schedule_levels = {1.0, 0.0};
    const MetricsReport direct1 =
        compute_metrics(run_maturation(one_step, models, reg, ags, cfg.seeds[0]), reg);
    CHECK(points[0].imp == direct1.imp);
    CHECK(points[0].sim == direct1.sim);
    CHECK(points[0].nat == direct1.nat);

    const MetricsReport direct2 =
        compute_metrics(run_maturation(cfg, models, reg, ags, cfg.seeds[0]), reg);
    CHECK(points[1].imp == direct2.imp);
    CHECK(points[1].sim == direct2.sim);
    CHECK(points[1].nat == direct2.nat);
    CHECK(points[1].nat_norm == 1.0);

    RunConfig bad = cfg;
    bad.sweep_steps = {0};
    CHECK_THROWS(run_steps_sweep(bad, models, reg, ags));
    RunConfig missing = cfg;
    missing.sweep_steps = {1, 3}; // default count 2 absent
    CHECK_THROWS(run_steps_sweep(missing, models, reg, ags));
}

TEST_CASE("csv_layouts_are_stable") {
    CHECK(designs_to_csv({}).header ==
          std::vector<std::string>{"antigen_id", "antibody", "oracle_dg", "wildtype_dg",
                                   "seq_score", "iteration", "mutation_path",
                                   "wildtype_fallback"});
    DesignRecord d{3, Sequence("AAAAAAAAAAAA"), -1.5, -1.0, -0.25, 2, "i1:4C", false};
    const CsvTable t = designs_to_csv({d});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0] == std::vector<std::string>{"3", "AAAAAAAAAAAA", fmt17(-1.5), fmt17(-1.0),
                                                fmt17(-0.25), "2", "i1:4C", "0"});

    MetricsReport m;
    m.imp = 0.5;
    m.sim = 0.25;
    m.nat = 0.125;
    m.nat_floored = true;
    m.per_antigen_imp = {{7, 1.0}};
    const CsvTable mt = metrics_to_csv(m);
    CHECK(mt.header == std::vector<std::string>{"metric", "value"});
    REQUIRE(mt.rows.size() == 5);
    CHECK(mt.rows[0] == std::vector<std::string>{"imp", fmt17(0.5)});
    CHECK(mt.rows[1] == std::vector<std::string>{"sim", fmt17(0.25)});
    CHECK(mt.rows[2] == std::vector<std::string>{"nat", fmt17(0.125)});
    CHECK(mt.rows[3] == std::vector<std::string>{"nat_floored", "1"});
    CHECK(mt.rows[4] == std::vector<std::string>{"imp_antigen_7", fmt17(1.0)});

    CHECK(ablation_to_csv({}).header ==
          std::vector<std::string>{"variant", "seed", "imp", "sim", "nat"});
    CHECK(sweep_to_csv({}, "gamma").header ==
          std::vector<std::string>{"parameter", "value", "imp", "sim", "nat", "imp_norm",
                                   "sim_norm", "nat_norm"});
    SweepPoint p;
    p.value = 2.5;
    const CsvTable st = sweep_to_csv({p}, "gamma");
    CHECK(st.rows[0][0] == "gamma");
    CHECK(st.rows[0][1] == fmt17(2.5));

    CHECK(proposals_to_csv({}).header ==
          std::vector<std::string>{"antigen_id", "iteration", "arity", "positions", "parent_hash",
                                   "mutant_sequence", "seq_score"});
    CHECK(trajectory_to_csv({}).header ==
          std::vector<std::string>{"step", "t", "mean_struct_score", "mean_physics_energy",
                                   "samples"});
}
