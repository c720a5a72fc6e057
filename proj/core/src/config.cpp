#include "affilab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace affilab {

namespace {

// Shortest representation that parses back to the same double, so the
// emitted file stays human-readable ("0.3", not "0.29999999999999999").
std::string fmt_value(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want) {
    throw std::invalid_argument("config key '" + key + "': cannot parse '" + value + "' as " + want);
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) bad_value(key, value, "an integer");
        return v;
    } catch (const std::invalid_argument&) {
        bad_value(key, value, "an integer");
    } catch (const std::out_of_range&) {
        bad_value(key, value, "an integer");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) bad_value(key, value, "an unsigned integer");
        return v;
    } catch (const std::invalid_argument&) {
        bad_value(key, value, "an unsigned integer");
    } catch (const std::out_of_range&) {
        bad_value(key, value, "an unsigned integer");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) bad_value(key, value, "a number");
        return v;
    } catch (const std::invalid_argument&) {
        bad_value(key, value, "a number");
    } catch (const std::out_of_range&) {
        bad_value(key, value, "a number");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    bad_value(key, value, "true or false");
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::stringstream ss(value);
    while (std::getline(ss, item, ',')) items.push_back(trim(item));
    return items;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value, Parse&& one) {
    std::vector<T> out;
    for (const std::string& item : split_list(value)) out.push_back(one(key, item));
    if (out.empty()) bad_value(key, value, "a non-empty comma-separated list");
    return out;
}

template <typename T>
std::string join_list(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        if constexpr (std::is_same_v<T, double>) {
            out += fmt_value(v[i]);
        } else {
            out += std::to_string(v[i]);
        }
    }
    return out;
}

} // namespace

void apply_config_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
    // clang-format off
    if      (key == "world.antibody_length")   cfg.world.antibody_length = parse_int(key, value);
    else if (key == "world.antigen_length")    cfg.world.antigen_length = parse_int(key, value);
    else if (key == "world.cdr_positions")     cfg.world.cdr_positions = parse_list<std::uint32_t>(key, value, [](const std::string& k, const std::string& v) { return static_cast<std::uint32_t>(parse_u64(k, v)); });
    else if (key == "world.linker_repeats")    cfg.world.linker_repeats = parse_int(key, value);
    else if (key == "world.sigma_contact")     cfg.world.sigma_contact = parse_double(key, value);
    else if (key == "world.fluctuation_scale") cfg.world.fluctuation_scale = parse_double(key, value);
    else if (key == "noise.gaussian_sigma")    cfg.noise.gaussian_sigma = parse_double(key, value);
    else if (key == "noise.outlier_rate")      cfg.noise.outlier_rate = parse_double(key, value);
    else if (key == "noise.outlier_magnitude") cfg.noise.outlier_magnitude = parse_double(key, value);
    else if (key == "data.num_antibodies")     cfg.data.num_antibodies = parse_int(key, value);
    else if (key == "data.num_antigens")       cfg.data.num_antigens = parse_int(key, value);
    else if (key == "data.num_labeled")        cfg.data.num_labeled = parse_int(key, value);
    else if (key == "data.heldout_antigens")   cfg.data.heldout_antigens = parse_int(key, value);
    else if (key == "flow.hidden")             cfg.flow_model.hidden = parse_u64(key, value);
    else if (key == "flow.time_dim")           cfg.flow_model.time_dim = parse_u64(key, value);
    else if (key == "flow.embed_dim")          cfg.flow_model.embed_dim = parse_u64(key, value);
    else if (key == "flow.epochs")             cfg.flow_train.epochs = parse_int(key, value);
    else if (key == "flow.batch")              cfg.flow_train.batch = parse_int(key, value);
    else if (key == "flow.lr")                 cfg.flow_train.lr = parse_double(key, value);
    else if (key == "flow.kappa")              cfg.flow_train.kappa = parse_double(key, value);
    else if (key == "flow.corpus")             cfg.flow_corpus = parse_int(key, value);
    else if (key == "flow.schedule")           cfg.schedule_levels = parse_list<double>(key, value, parse_double);
    else if (key == "flow.schedule_mode") {
        if (value == "noise_levels")      cfg.schedule_mode = ScheduleMode::NoiseLevels;
        else if (value == "flow_times")   cfg.schedule_mode = ScheduleMode::FlowTimes;
        else bad_value(key, value, "noise_levels or flow_times");
    }
    else if (key == "seq.embed_dim")           cfg.seq_model.embed_dim = parse_u64(key, value);
    else if (key == "seq.hidden")              cfg.seq_model.hidden = parse_u64(key, value);
    else if (key == "struct.embed_dim")        cfg.struct_model.embed_dim = parse_u64(key, value);
    else if (key == "struct.hidden")           cfg.struct_model.hidden = parse_u64(key, value);
    else if (key == "struct.knn")              cfg.struct_model.knn = parse_u64(key, value);
    else if (key == "pred.epochs")             cfg.pred_train.epochs = parse_int(key, value);
    else if (key == "pred.batch")              cfg.pred_train.batch = parse_int(key, value);
    else if (key == "pred.lr")                 cfg.pred_train.lr = parse_double(key, value);
    else if (key == "if.hidden")               cfg.if_model.hidden = parse_u64(key, value);
    else if (key == "if.knn")                  cfg.if_model.knn = parse_u64(key, value);
    else if (key == "if.epochs")               cfg.if_train.epochs = parse_int(key, value);
    else if (key == "if.batch")                cfg.if_train.batch = parse_int(key, value);
    else if (key == "if.lr")                   cfg.if_train.lr = parse_double(key, value);
    else if (key == "if.corpus_size")          cfg.if_corpus = parse_int(key, value);
    else if (key == "guidance.gamma")          cfg.guidance.gamma = parse_double(key, value);
    else if (key == "guidance.t_min")          cfg.guidance.t_min_guidance = parse_double(key, value);
    else if (key == "guidance.cdr_only")       cfg.guidance.cdr_only = parse_bool(key, value);
    else if (key == "relax.max_iters")         cfg.relax.max_iters = parse_int(key, value);
    else if (key == "relax.step")              cfg.relax.step = parse_double(key, value);
    else if (key == "relax.bond_weight")       cfg.relax.bond_weight = parse_double(key, value);
    else if (key == "relax.clash_weight")      cfg.relax.clash_weight = parse_double(key, value);
    else if (key == "relax.clash_radius")      cfg.relax.clash_radius = parse_double(key, value);
    else if (key == "coteach.pairs_per_antigen") cfg.pairs_per_antigen = parse_int(key, value);
    else if (key == "coteach.tie_epsilon")     cfg.tie_epsilon = parse_double(key, value);
    else if (key == "coteach.rounds")          cfg.coteach_rounds = parse_int(key, value);
    else if (key == "coteach.epochs")          cfg.finetune.epochs = parse_int(key, value);
    else if (key == "coteach.batch")           cfg.finetune.batch = parse_int(key, value);
    else if (key == "coteach.lr")              cfg.finetune.lr = parse_double(key, value);
    else if (key == "pipeline.iterations")     cfg.iterations = parse_int(key, value);
    else if (key == "pipeline.arities")        cfg.arities = parse_list<int>(key, value, parse_int);
    else if (key == "pipeline.per_arity")      cfg.per_arity = parse_int(key, value);
    else if (key == "pipeline.top_m")          cfg.top_m = parse_int(key, value);
    else if (key == "pipeline.final_designs")  cfg.final_designs = parse_int(key, value);
    else if (key == "pipeline.seeds")          cfg.seeds = parse_list<std::uint64_t>(key, value, parse_u64);
    else if (key == "pipeline.carry_best_only") cfg.carry_best_only = parse_bool(key, value);
    else if (key == "pipeline.uniform_positions") cfg.uniform_positions = parse_bool(key, value);
    else if (key == "pipeline.no_flow_step")   cfg.no_flow_step = parse_double(key, value);
    else if (key == "pipeline.no_flow_iters")  cfg.no_flow_iters = parse_int(key, value);
    else if (key == "ablation.one_iteration")  cfg.ablation.one_iteration = parse_bool(key, value);
    else if (key == "ablation.no_pc")          cfg.ablation.no_pc = parse_bool(key, value);
    else if (key == "ablation.no_flow")        cfg.ablation.no_flow = parse_bool(key, value);
    else if (key == "ablation.no_energy")      cfg.ablation.no_energy = parse_bool(key, value);
    else if (key == "ablation.no_selection")   cfg.ablation.no_selection = parse_bool(key, value);
    else if (key == "sweep.gamma")             cfg.sweep_gamma = parse_list<double>(key, value, parse_double);
    else if (key == "sweep.steps")             cfg.sweep_steps = parse_list<int>(key, value, parse_int);
    else if (key == "paths.data_dir")          cfg.paths.data_dir = value;
    else if (key == "paths.model_dir")         cfg.paths.model_dir = value;
    else throw std::invalid_argument("unknown config key '" + key + "'");
    // clang-format on
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_config_kv(cfg, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

std::string config_to_text(const RunConfig& cfg) {
    std::ostringstream out;
    const auto emit = [&out](const char* key, const std::string& value) {
        out << key << " = " << value << "\n";
    };
    out << "# Synthetic world\n";
    emit("world.antibody_length", std::to_string(cfg.world.antibody_length));
    emit("world.antigen_length", std::to_string(cfg.world.antigen_length));
    emit("world.cdr_positions", join_list(cfg.world.cdr_positions));
    emit("world.linker_repeats", std::to_string(cfg.world.linker_repeats));
    emit("world.sigma_contact", fmt_value(cfg.world.sigma_contact));
    emit("world.fluctuation_scale", fmt_value(cfg.world.fluctuation_scale));
    out << "\n# Measurement noise\n";
    emit("noise.gaussian_sigma", fmt_value(cfg.noise.gaussian_sigma));
    emit("noise.outlier_rate", fmt_value(cfg.noise.outlier_rate));
    emit("noise.outlier_magnitude", fmt_value(cfg.noise.outlier_magnitude));
    out << "\n# Dataset\n";
    emit("data.num_antibodies", std::to_string(cfg.data.num_antibodies));
    emit("data.num_antigens", std::to_string(cfg.data.num_antigens));
    emit("data.num_labeled", std::to_string(cfg.data.num_labeled));
    emit("data.heldout_antigens", std::to_string(cfg.data.heldout_antigens));
    out << "\n# Structure generator\n";
    emit("flow.hidden", std::to_string(cfg.flow_model.hidden));
    emit("flow.time_dim", std::to_string(cfg.flow_model.time_dim));
    emit("flow.embed_dim", std::to_string(cfg.flow_model.embed_dim));
    emit("flow.epochs", std::to_string(cfg.flow_train.epochs));
    emit("flow.batch", std::to_string(cfg.flow_train.batch));
    emit("flow.lr", fmt_value(cfg.flow_train.lr));
    emit("flow.kappa", fmt_value(cfg.flow_train.kappa));
    emit("flow.corpus", std::to_string(cfg.flow_corpus));
    emit("flow.schedule", join_list(cfg.schedule_levels));
    emit("flow.schedule_mode",
         cfg.schedule_mode == ScheduleMode::NoiseLevels ? "noise_levels" : "flow_times");
    out << "\n# Energy predictors\n";
    emit("seq.embed_dim", std::to_string(cfg.seq_model.embed_dim));
    emit("seq.hidden", std::to_string(cfg.seq_model.hidden));
    emit("struct.embed_dim", std::to_string(cfg.struct_model.embed_dim));
    emit("struct.hidden", std::to_string(cfg.struct_model.hidden));
    emit("struct.knn", std::to_string(cfg.struct_model.knn));
    emit("pred.epochs", std::to_string(cfg.pred_train.epochs));
    emit("pred.batch", std::to_string(cfg.pred_train.batch));
    emit("pred.lr", fmt_value(cfg.pred_train.lr));
    out << "\n# Mutation classifier\n";
    emit("if.hidden", std::to_string(cfg.if_model.hidden));
    emit("if.knn", std::to_string(cfg.if_model.knn));
    emit("if.epochs", std::to_string(cfg.if_train.epochs));
    emit("if.batch", std::to_string(cfg.if_train.batch));
    emit("if.lr", fmt_value(cfg.if_train.lr));
    emit("if.corpus_size", std::to_string(cfg.if_corpus));
    out << "\n# Guided sampling\n";
    emit("guidance.gamma", fmt_value(cfg.guidance.gamma));
    emit("guidance.t_min", fmt_value(cfg.guidance.t_min_guidance));
    emit("guidance.cdr_only", cfg.guidance.cdr_only ? "true" : "false");
    emit("relax.max_iters", std::to_string(cfg.relax.max_iters));
    emit("relax.step", fmt_value(cfg.relax.step));
    emit("relax.bond_weight", fmt_value(cfg.relax.bond_weight));
    emit("relax.clash_weight", fmt_value(cfg.relax.clash_weight));
    emit("relax.clash_radius", fmt_value(cfg.relax.clash_radius));
    out << "\n# Pairwise co-teaching\n";
    emit("coteach.pairs_per_antigen", std::to_string(cfg.pairs_per_antigen));
    emit("coteach.tie_epsilon", fmt_value(cfg.tie_epsilon));
    emit("coteach.rounds", std::to_string(cfg.coteach_rounds));
    emit("coteach.epochs", std::to_string(cfg.finetune.epochs));
    emit("coteach.batch", std::to_string(cfg.finetune.batch));
    emit("coteach.lr", fmt_value(cfg.finetune.lr));
    out << "\n# Maturation pipeline\n";
    emit("pipeline.iterations", std::to_string(cfg.iterations));
    emit("pipeline.arities", join_list(cfg.arities));
    emit("pipeline.per_arity", std::to_string(cfg.per_arity));
    emit("pipeline.top_m", std::to_string(cfg.top_m));
    emit("pipeline.final_designs", std::to_string(cfg.final_designs));
    emit("pipeline.seeds", join_list(cfg.seeds));
    emit("pipeline.carry_best_only", cfg.carry_best_only ? "true" : "false");
    emit("pipeline.uniform_positions", cfg.uniform_positions ? "true" : "false");
    emit("pipeline.no_flow_step", fmt_value(cfg.no_flow_step));
    emit("pipeline.no_flow_iters", std::to_string(cfg.no_flow_iters));
    out << "\n# Ablation switches (run subcommand only; ablate runs all variants)\n";
    emit("ablation.one_iteration", cfg.ablation.one_iteration ? "true" : "false");
    emit("ablation.no_pc", cfg.ablation.no_pc ? "true" : "false");
    emit("ablation.no_flow", cfg.ablation.no_flow ? "true" : "false");
    emit("ablation.no_energy", cfg.ablation.no_energy ? "true" : "false");
    emit("ablation.no_selection", cfg.ablation.no_selection ? "true" : "false");
    out << "\n# Sweeps\n";
    emit("sweep.gamma", join_list(cfg.sweep_gamma));
    emit("sweep.steps", join_list(cfg.sweep_steps));
    out << "\n# Artifact locations (relative to --out)\n";
    emit("paths.data_dir", cfg.paths.data_dir);
    emit("paths.model_dir", cfg.paths.model_dir);
    return out.str();
}

} // namespace affilab
