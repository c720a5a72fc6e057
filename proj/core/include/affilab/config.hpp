#pragma once

// One aggregate configuration for the whole toolchain, with a strict
// "section.key = value" text format (see docs/config.md).

#include <cstdint>
#include <string>
#include <vector>

#include "affilab/coteach.hpp"
#include "affilab/flow.hpp"
#include "affilab/guidance.hpp"
#include "affilab/inverse_folding.hpp"
#include "affilab/predictors.hpp"
#include "affilab/world.hpp"

namespace affilab {

struct AblationFlags {
    bool one_iteration = false; // force a single optimization iteration
    bool no_pc = false;         // skip every corrector relaxation
    bool no_flow = false;       // replace sampling with direct descent on f̂
    bool no_energy = false;     // predictors without pairwise fine-tuning
    bool no_selection = false;  // predictors fine-tuned without consensus filtering
};

struct ArtifactPaths {
    std::string data_dir = "data";
    std::string model_dir = "models";
};

struct RunConfig {
    WorldConfig world;
    NoiseConfig noise;
    DataConfig data;

    FlowModelConfig flow_model;
    FlowTrainConfig flow_train;
    int flow_corpus = 256; // ensemble snapshots for generator training
    std::vector<double> schedule_levels = {1.0, 0.6, 0.3, 0.0};
    ScheduleMode schedule_mode = ScheduleMode::NoiseLevels;

    SeqPredictorConfig seq_model;
    StructPredictorConfig struct_model;
    PredTrainConfig pred_train;

    InverseFoldConfig if_model;
    IfTrainConfig if_train;
    int if_corpus = 200; // (structure, sequence) pairs for classifier training

    GuidanceConfig guidance;
    RelaxConfig relax;

    int pairs_per_antigen = 64;
    double tie_epsilon = 1e-9;
    int coteach_rounds = 2;
    FinetuneConfig finetune;

    int iterations = 3;
    std::vector<int> arities = {1, 2, 3};
    int per_arity = 8;
    int top_m = 4;
    int final_designs = 3;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    bool carry_best_only = true;    // next iteration starts from this iteration's best
    bool uniform_positions = false; // mutate positions uniformly instead of by entropy
    double no_flow_step = 0.01;
    int no_flow_iters = 50;
    AblationFlags ablation;

    std::vector<double> sweep_gamma = {0.0, 2.5, 5.0, 7.5, 10.0};
    std::vector<int> sweep_steps = {1, 2, 3, 4};

    ArtifactPaths paths;

    Schedule make_schedule() const { return Schedule(schedule_levels); }
};

// Applies one key/value; unknown keys and malformed values throw
// std::invalid_argument naming the key.
void apply_config_kv(RunConfig& cfg, const std::string& key, const std::string& value);

// Parses a config file ('#' comments, blank lines ignored) on top of the
// defaults.  Errors name the offending line.
RunConfig load_config(const std::string& path);

// Full round-trippable listing of every key; parsing the output reproduces
// the config.  The shipped default.config is exactly this text for the
// default-constructed RunConfig.
std::string config_to_text(const RunConfig& cfg);

} // namespace affilab
