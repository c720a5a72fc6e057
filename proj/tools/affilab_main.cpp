// Command-line driver for the maturation toolchain.  Every subcommand reads
// and writes artifacts under --out; see docs/formats.md for the file layout
// and docs/config.md for the configuration schema.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "affilab/checkpoint.hpp"
#include "affilab/config.hpp"
#include "affilab/coteach.hpp"
#include "affilab/csv.hpp"
#include "affilab/dataset_io.hpp"
#include "affilab/pipeline.hpp"

namespace fs = std::filesystem;
using namespace affilab;

namespace {

struct CommonOpts {
    std::uint64_t seed = 1;
    std::string config_path;
    std::string out = ".";
    std::vector<std::string> overrides;
    CLI::Option* seed_option = nullptr; // to tell an explicit --seed from the default
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    o.seed_option = cmd->add_option("--seed", o.seed, "Seed for every random draw this command makes");
    cmd->add_option("--config", o.config_path, "Configuration file (defaults apply when omitted)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "Artifact directory (read and written)");
    cmd->add_option("--set", o.overrides, "Override one config key, e.g. --set guidance.gamma=2.5")
        ->type_name("KEY=VALUE");
}

RunConfig make_config(const CommonOpts& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    for (const std::string& kv : o.overrides) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--set expects KEY=VALUE, got '" + kv + "'");
        }
        const auto trim = [](std::string s) {
            const std::size_t a = s.find_first_not_of(" \t");
            const std::size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_config_kv(cfg, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
    }
    return cfg;
}

// A --seed given explicitly narrows the multi-seed commands to that one seed.
void narrow_seeds(const CommonOpts& o, RunConfig& cfg) {
    if (o.seed_option->count() > 0) cfg.seeds = {o.seed};
}

std::string data_dir(const CommonOpts& o, const RunConfig& cfg) {
    return (fs::path(o.out) / cfg.paths.data_dir).string();
}

std::string model_path(const CommonOpts& o, const RunConfig& cfg, const std::string& name) {
    return (fs::path(o.out) / cfg.paths.model_dir / name).string();
}

std::string out_path(const CommonOpts& o, const std::string& name) {
    return (fs::path(o.out) / name).string();
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
    if (!os) throw std::runtime_error(path + ": cannot write");
}

void write_loss_curve(const std::string& path, const std::vector<double>& curve) {
    CsvTable t;
    t.header = {"epoch", "mean_loss"};
    for (std::size_t i = 0; i < curve.size(); ++i) {
        t.rows.push_back({std::to_string(i), fmt17(curve[i])});
    }
    write_csv(path, t);
}

// Manifest entries shared by every trained checkpoint.
std::map<std::string, std::string> provenance(std::uint64_t seed, const Dataset& ds) {
    return {{"training_seed", std::to_string(seed)}, {"data_hash", hex16(dataset_hash(ds))}};
}

Dataset load_data(const CommonOpts& o, const RunConfig& cfg) {
    return load_dataset(data_dir(o, cfg), cfg.world);
}

// The predictor pair a maturation run scores with, honoring the ablation
// switches that swap in differently trained checkpoints.
std::pair<SeqPredictor, StructPredictor> load_run_predictors(const CommonOpts& o,
                                                             const RunConfig& cfg) {
    const char* variant = cfg.ablation.no_energy      ? "supervised"
                          : cfg.ablation.no_selection ? "unfiltered"
                                                      : "coteach";
    return {load_seq_predictor(model_path(o, cfg, std::string("seq_") + variant + ".ckpt")),
            load_struct_predictor(model_path(o, cfg, std::string("struct_") + variant + ".ckpt"))};
}

PipelineModels load_pipeline_models(const CommonOpts& o, const RunConfig& cfg) {
    auto [seq, struct_pred] = load_run_predictors(o, cfg);
    return PipelineModels{load_flow_model(model_path(o, cfg, "flow.ckpt")), std::move(seq),
                          std::move(struct_pred),
                          load_inverse_fold_model(model_path(o, cfg, "if.ckpt"))};
}

void cmd_gen_data(const CommonOpts& o) {
    const RunConfig cfg = make_config(o);
    Rng rng(o.seed);
    const Dataset ds = generate_dataset(cfg.world, cfg.data, cfg.noise, rng);
    const std::string dir = data_dir(o, cfg);
    save_dataset(dir, ds);
    // Record the resolved configuration next to the data it produced.
    write_text_file((fs::path(dir) / "config.txt").string(), config_to_text(cfg));
    std::cout << "dataset: " << ds.registry.antibodies.size() << " antibodies, "
              << ds.registry.antigens.size() << " antigens, " << ds.records.size()
              << " measurements, " << ds.labels.size() << " exact labels, hash "
              << hex16(dataset_hash(ds)) << "\n";
}

void cmd_train_flow(const CommonOpts& o) {
    const RunConfig cfg = make_config(o);
    const Dataset ds = load_data(o, cfg);
    fs::create_directories(fs::path(o.out) / cfg.paths.model_dir);

    Rng rng(o.seed);
    const auto corpus = build_flow_corpus(ds.registry, ds.train_antigens, cfg.flow_corpus,
                                          cfg.world.fluctuation_scale, rng);
    FlowModel model = FlowModel::init(cfg.flow_model, mix_seed(o.seed, 1));
    const std::vector<double> curve = train_flow(model, corpus, cfg.flow_train, rng);

    save_flow_model(model, model_path(o, cfg, "flow.ckpt"), provenance(o.seed, ds));
    write_loss_curve(model_path(o, cfg, "flow_loss.csv"), curve);
    std::cout << "flow: " << corpus.size() << " examples, " << curve.size()
              << " epochs, final loss " << fmt17(curve.back()) << "\n";
}

void cmd_train_predictors(const CommonOpts& o) {
    const RunConfig cfg = make_config(o);
    const Dataset ds = load_data(o, cfg);
    fs::create_directories(fs::path(o.out) / cfg.paths.model_dir);
    const auto extras = provenance(o.seed, ds);

    Rng rng(o.seed);
    SeqPredictor seq = SeqPredictor::init(cfg.seq_model, mix_seed(o.seed, 2));
    const auto seq_curve =
        supervised_train(seq, seq_examples_from_labels(ds.labels, ds.registry), cfg.pred_train, rng);
    save_seq_predictor(seq, model_path(o, cfg, "seq_supervised.ckpt"), extras);
    write_loss_curve(model_path(o, cfg, "seq_supervised_loss.csv"), seq_curve);

    StructPredictor struct_pred = StructPredictor::init(cfg.struct_model, mix_seed(o.seed, 3));
    const auto struct_curve = supervised_train(
        struct_pred, struct_examples_from_labels(ds.labels, ds.registry, cfg.struct_model.knn),
        cfg.pred_train, rng);
    save_struct_predictor(struct_pred, model_path(o, cfg, "struct_supervised.ckpt"), extras);
    write_loss_curve(model_path(o, cfg, "struct_supervised_loss.csv"), struct_curve);

    const auto corpus = build_if_corpus(ds.registry, ds.train_antigens, cfg.if_corpus,
                                        cfg.world.fluctuation_scale, rng);
    InverseFoldModel ifm = InverseFoldModel::init(cfg.if_model, mix_seed(o.seed, 4));
    const auto if_curve = train_if(ifm, corpus, cfg.if_train, rng);
    save_inverse_fold_model(ifm, model_path(o, cfg, "if.ckpt"), extras);
    write_loss_curve(model_path(o, cfg, "if_loss.csv"), if_curve);

    std::cout << "predictors: seq loss " << fmt17(seq_curve.back()) << ", struct loss "
              << fmt17(struct_curve.back()) << ", classifier loss " << fmt17(if_curve.back())
              << "\n";
}

void cmd_coteach(const CommonOpts& o) {
    const RunConfig cfg = make_config(o);
    const Dataset ds = load_data(o, cfg);
    const auto extras = provenance(o.seed, ds);

    // Pairwise labels come from the noisy measurements on training antigens
    // only; held-out antigens stay unseen until evaluation.
    std::vector<EnergyRecord> train_records;
    for (const auto& r : ds.records) {
        for (std::uint32_t ag : ds.train_antigens) {
            if (r.antigen_id == ag) {
                train_records.push_back(r);
                break;
            }
        }
    }

    Rng rng(o.seed);
    std::vector<std::string> warnings;
    const std::vector<PairwiseLabel> pairs =
        build_pairs(train_records, cfg.pairs_per_antigen, cfg.tie_epsilon, rng, &warnings);
    {
        CsvTable t;
        t.header = {"antigen_id", "antibody_j", "antibody_k", "ddg", "y"};
        for (const auto& p : pairs) {
            t.rows.push_back({std::to_string(p.antigen_id), std::to_string(p.antibody_j),
                              std::to_string(p.antibody_k), fmt17(p.ddg), std::to_string(p.y)});
        }
        write_csv(out_path(o, "pairs.csv"), t);
    }

    // Baseline for the no_selection ablation: fine-tune on every pair, no
    // consensus filtering.
    {
        SeqPredictor seq = load_seq_predictor(model_path(o, cfg, "seq_supervised.ckpt"));
        StructPredictor struct_pred =
            load_struct_predictor(model_path(o, cfg, "struct_supervised.ckpt"));
        StructGeoCache cache(ds.registry, struct_pred.cfg.knn);
        Rng tune_rng(mix_seed(o.seed, 5));
        pairwise_finetune(seq, pairs, ds.registry, cfg.finetune, tune_rng);
        pairwise_finetune(struct_pred, pairs, cache, cfg.finetune, tune_rng);
        save_seq_predictor(seq, model_path(o, cfg, "seq_unfiltered.ckpt"), extras);
        save_struct_predictor(struct_pred, model_path(o, cfg, "struct_unfiltered.ckpt"), extras);
    }

    SeqPredictor seq = load_seq_predictor(model_path(o, cfg, "seq_supervised.ckpt"));
    StructPredictor struct_pred =
        load_struct_predictor(model_path(o, cfg, "struct_supervised.ckpt"));

    // Held-out rank quality after every filter/fine-tune half-step.
    CsvTable report;
    report.header = {"round",     "teacher",   "kept",
                     "dropped",   "agreement", "post_spearman_seq",
                     "post_spearman_struct"};
    StructGeoCache eval_cache(ds.registry, struct_pred.cfg.knn);
    const PairScorer seq_scorer = make_seq_scorer(seq, ds.registry);
    const PairScorer struct_scorer = make_struct_scorer(struct_pred, eval_cache);
    const auto observe = [&](int round, const char* teacher, const ConsensusReport& cr) {
        const double r_seq = spearman_eval(seq_scorer, ds.heldout_antigens, ds.registry).mean_r;
        const double r_struct =
            spearman_eval(struct_scorer, ds.heldout_antigens, ds.registry).mean_r;
        report.rows.push_back({std::to_string(round), teacher, std::to_string(cr.kept.size()),
                               std::to_string(cr.dropped.size()), fmt17(cr.agreement_rate),
                               fmt17(r_seq), fmt17(r_struct)});
    };

    Rng ct_rng(mix_seed(o.seed, 6));
    const CoteachResult result = coteach(seq, struct_pred, pairs, cfg.coteach_rounds, cfg.finetune,
                                         ds.registry, ct_rng, observe);
    for (const auto& w : result.warnings) warnings.push_back(w);

    save_seq_predictor(seq, model_path(o, cfg, "seq_coteach.ckpt"), extras);
    save_struct_predictor(struct_pred, model_path(o, cfg, "struct_coteach.ckpt"), extras);
    write_csv(out_path(o, "coteach_report.csv"), report);

    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "coteach: " << pairs.size() << " pairs, " << result.rounds.size()
              << " rounds, final agreement seq=" << fmt17(result.rounds.back().seq_teacher_agreement)
              << " struct=" << fmt17(result.rounds.back().struct_teacher_agreement) << "\n";
}

void cmd_run(const CommonOpts& o, bool trajectories) {
    const RunConfig cfg = make_config(o);
    const Dataset ds = load_data(o, cfg);
    const PipelineModels models = load_pipeline_models(o, cfg);

    std::vector<ProposalLogRow> proposal_log;
    std::vector<TrajectoryStat> trajectory_log;
    const std::vector<DesignRecord> designs =
        run_maturation(cfg, models, ds.registry, ds.heldout_antigens, o.seed, &proposal_log,
                       trajectories ? &trajectory_log : nullptr);
    const MetricsReport metrics = compute_metrics(designs, ds.registry);

    write_csv(out_path(o, "designs.csv"), designs_to_csv(designs));
    write_csv(out_path(o, "metrics.csv"), metrics_to_csv(metrics));
    write_csv(out_path(o, "proposals.csv"), proposals_to_csv(proposal_log));
    if (trajectories) {
        write_csv(out_path(o, "trajectories.csv"), trajectory_to_csv(trajectory_log));
    }
    std::cout << "run: " << designs.size() << " designs, imp=" << fmt17(metrics.imp)
              << " sim=" << fmt17(metrics.sim) << " nat=" << fmt17(metrics.nat) << "\n";
}

void cmd_ablate(const CommonOpts& o) {
    RunConfig cfg = make_config(o);
    narrow_seeds(o, cfg);
    const Dataset ds = load_data(o, cfg);

    AblationModelSet set{
        PipelineModels{load_flow_model(model_path(o, cfg, "flow.ckpt")),
                       load_seq_predictor(model_path(o, cfg, "seq_coteach.ckpt")),
                       load_struct_predictor(model_path(o, cfg, "struct_coteach.ckpt")),
                       load_inverse_fold_model(model_path(o, cfg, "if.ckpt"))},
        load_seq_predictor(model_path(o, cfg, "seq_supervised.ckpt")),
        load_struct_predictor(model_path(o, cfg, "struct_supervised.ckpt")),
        load_seq_predictor(model_path(o, cfg, "seq_unfiltered.ckpt")),
        load_struct_predictor(model_path(o, cfg, "struct_unfiltered.ckpt"))};

    const std::vector<AblationRow> rows =
        run_ablations(cfg, set, ds.registry, ds.heldout_antigens);
    write_csv(out_path(o, "ablation.csv"), ablation_to_csv(rows));
    std::cout << "ablate: " << ablation_variants().size() << " variants x " << cfg.seeds.size()
              << " seeds\n";
}

void cmd_sweep(const CommonOpts& o, const std::string& parameter) {
    RunConfig cfg = make_config(o);
    narrow_seeds(o, cfg);
    const Dataset ds = load_data(o, cfg);
    const PipelineModels models = load_pipeline_models(o, cfg);

    if (parameter == "gamma" || parameter == "both") {
        const auto points = run_gamma_sweep(cfg, models, ds.registry, ds.heldout_antigens);
        write_csv(out_path(o, "sweep_gamma.csv"), sweep_to_csv(points, "gamma"));
        std::cout << "sweep: gamma over " << points.size() << " values\n";
    }
    if (parameter == "steps" || parameter == "both") {
        const auto points = run_steps_sweep(cfg, models, ds.registry, ds.heldout_antigens);
        write_csv(out_path(o, "sweep_steps.csv"), sweep_to_csv(points, "steps"));
        std::cout << "sweep: steps over " << points.size() << " values\n";
    }
}

void cmd_evaluate(const CommonOpts& o, const std::string& designs_arg) {
    const RunConfig cfg = make_config(o);
    const Dataset ds = load_data(o, cfg);
    const std::string designs_path =
        designs_arg.empty() ? out_path(o, "designs.csv") : designs_arg;

    const CsvTable t = read_csv(designs_path);
    const std::size_t ag_col = t.col("antigen_id");
    const std::size_t ab_col = t.col("antibody");
    const std::size_t it_col = t.col("iteration");
    const std::size_t score_col = t.col("seq_score");
    const std::size_t fb_col = t.col("wildtype_fallback");

    // Oracle values are recomputed from the sequences; the file's own energy
    // claims are never trusted.
    std::vector<DesignRecord> designs;
    std::map<std::uint32_t, double> wildtype_dg;
    for (const auto& row : t.rows) {
        DesignRecord d{0, Sequence(row.at(ab_col)), 0.0, 0.0, 0.0, 0, "", false};
        d.antigen_id = static_cast<std::uint32_t>(std::stoul(row.at(ag_col)));
        d.seq_score = std::stod(row.at(score_col));
        d.iteration = std::stoi(row.at(it_col));
        d.wildtype_fallback = row.at(fb_col) == "1";
        auto [wt, inserted] = wildtype_dg.try_emplace(d.antigen_id, 0.0);
        if (inserted) {
            wt->second = oracle_binding_energy(
                ds.registry.layout_for(d.antigen_id, wildtype_antibody(ds.registry, d.antigen_id)),
                cfg.world.sigma_contact);
        }
        d.wildtype_dg = wt->second;
        d.oracle_dg =
            oracle_binding_energy(ds.registry.layout_for_antibody(d.antigen_id, d.antibody),
                                  cfg.world.sigma_contact);
        designs.push_back(std::move(d));
    }

    const MetricsReport metrics = compute_metrics(designs, ds.registry);
    write_csv(out_path(o, "metrics.csv"), metrics_to_csv(metrics));
    std::cout << "evaluate: " << designs.size() << " designs, imp=" << fmt17(metrics.imp)
              << " sim=" << fmt17(metrics.sim) << " nat=" << fmt17(metrics.nat) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic antibody maturation toolchain"};
    app.require_subcommand(1);

    CommonOpts gen_o, flow_o, pred_o, ct_o, run_o, abl_o, sweep_o, eval_o;
    bool trajectories = false;
    std::string sweep_parameter = "both";
    std::string designs_arg;

    add_common(app.add_subcommand("gen-data", "Sample a world and persist the dataset directory"),
               gen_o);
    add_common(app.add_subcommand("train-flow", "Train the structure generator"), flow_o);
    add_common(app.add_subcommand("train-predictors",
                                  "Train the energy predictors and the residue classifier"),
               pred_o);
    add_common(app.add_subcommand("coteach",
                                  "Build pairwise labels and fine-tune with consensus filtering"),
               ct_o);
    CLI::App* run_cmd =
        app.add_subcommand("run", "Run maturation on the held-out antigens");
    add_common(run_cmd, run_o);
    run_cmd->add_flag("--trajectories", trajectories,
                      "Also write per-step statistics of the guided trajectories");
    add_common(app.add_subcommand("ablate", "Run every ablation variant over the configured seeds"),
               abl_o);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep guidance strength and step count");
    add_common(sweep_cmd, sweep_o);
    sweep_cmd->add_option("--parameter", sweep_parameter, "Which grid to sweep")
        ->check(CLI::IsMember({"gamma", "steps", "both"}));
    CLI::App* eval_cmd =
        app.add_subcommand("evaluate", "Recompute metrics for a designs file via the oracle");
    add_common(eval_cmd, eval_o);
    eval_cmd->add_option("--designs", designs_arg, "Designs file (default: <out>/designs.csv)");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("gen-data")) cmd_gen_data(gen_o);
        if (app.got_subcommand("train-flow")) cmd_train_flow(flow_o);
        if (app.got_subcommand("train-predictors")) cmd_train_predictors(pred_o);
        if (app.got_subcommand("coteach")) cmd_coteach(ct_o);
        if (app.got_subcommand("run")) cmd_run(run_o, trajectories);
        if (app.got_subcommand("ablate")) cmd_ablate(abl_o);
        if (app.got_subcommand("sweep")) cmd_sweep(sweep_o, sweep_parameter);
        if (app.got_subcommand("evaluate")) cmd_evaluate(eval_o, designs_arg);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
