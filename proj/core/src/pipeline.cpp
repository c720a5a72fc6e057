#include "affilab/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "affilab/checkpoint.hpp"

namespace affilab {

std::uint32_t wildtype_antibody(const SequenceRegistry& registry, std::uint32_t antigen_id) {
    if (registry.antibodies.empty()) throw std::invalid_argument("wildtype_antibody: no antibodies");
    std::vector<std::pair<double, std::uint32_t>> scored;
    scored.reserve(registry.antibodies.size());
    for (std::uint32_t ab = 0; ab < registry.antibodies.size(); ++ab) {
        scored.emplace_back(
            oracle_binding_energy(registry.layout_for(antigen_id, ab), registry.world.sigma_contact),
            ab);
    }
    std::sort(scored.begin(), scored.end());
    return scored[(scored.size() - 1) / 2].second;
}

namespace {

// "i<N>:<pos><letter>+<pos><letter>" for one accepted proposal.
std::string describe_step(int iteration, const MutationProposal& p) {
    std::string out = "i" + std::to_string(iteration) + ":";
    for (std::size_t i = 0; i < p.positions.size(); ++i) {
        if (i) out += "+";
        out += std::to_string(p.positions[i]);
        out += residue_letter(p.mutated_antibody[p.positions[i]]);
    }
    return out;
}

void mask_to_cdr(Structure& g, const ComplexLayout& layout) {
    std::vector<bool> keep(g.residues(), false);
    for (std::uint32_t p : layout.cdr_positions) keep[p] = true;
    for (std::size_t i = 0; i < g.residues(); ++i) {
        if (!keep[i]) {
            for (int c = 0; c < 3; ++c) g.row(i)[c] = 0.0;
        }
    }
}

struct Candidate {
    Sequence antibody;
    double seq_score = 0.0;
    int iteration = 0;
    std::string path;
};

std::string hash_hex(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(s.data(), s.size())));
    return buf;
}

} // namespace

std::vector<DesignRecord> run_maturation(const RunConfig& cfg, const PipelineModels& models,
                                         const SequenceRegistry& registry,
                                         const std::vector<std::uint32_t>& antigen_ids,
                                         std::uint64_t seed,
                                         std::vector<ProposalLogRow>* proposal_log,
                                         std::vector<TrajectoryStat>* trajectory_log) {
    if (cfg.iterations < 1) throw std::invalid_argument("run_maturation: iterations must be >= 1");
    if (antigen_ids.empty()) throw std::invalid_argument("run_maturation: no antigens given");
    const Schedule schedule = cfg.make_schedule();
    const int iterations = cfg.ablation.one_iteration ? 1 : cfg.iterations;

    std::vector<DesignRecord> designs;
    for (std::uint32_t ag : antigen_ids) {
        Rng rng(mix_seed(seed, ag));
        const Sequence& antigen = registry.antigens.at(ag);
        const std::uint32_t wt_id = wildtype_antibody(registry, ag);
        const Sequence wildtype = registry.antibodies[wt_id];
        const double wt_dg =
            oracle_binding_energy(registry.layout_for(ag, wt_id), registry.world.sigma_contact);

        Sequence current = wildtype;
        std::string current_path;
        std::map<std::string, Candidate> pool; // keyed by antibody string

        for (int it = 1; it <= iterations; ++it) {
            const ComplexLayout layout = registry.layout_for_antibody(ag, current);

            // Reference structure for this iteration, relaxed unless the
            // corrector is ablated.
            Structure reference = oracle_mean_structure(layout.full);
            if (!cfg.ablation.no_pc) reference = corrector_relax(reference, cfg.relax).x;

            Structure sampled;
            if (cfg.ablation.no_flow) {
                // Descend the structure predictor directly from the reference
                // instead of sampling the flow.
                sampled = reference;
                for (int s = 0; s < cfg.no_flow_iters; ++s) {
                    Structure g = grad_struct(models.struct_pred, sampled, layout.full, layout);
                    if (cfg.guidance.cdr_only) mask_to_cdr(g, layout);
                    axpy(sampled, -cfg.no_flow_step, g);
                }
                if (!cfg.ablation.no_pc) sampled = corrector_relax(sampled, cfg.relax).x;
            } else {
                const GuidedSampleResult draw = guided_sample(
                    models.flow, models.struct_pred, layout.full, layout, schedule, cfg.guidance,
                    cfg.relax, rng, /*relax_final=*/!cfg.ablation.no_pc, cfg.flow_train.kappa,
                    cfg.schedule_mode);
                sampled = draw.final;
                if (trajectory_log) {
                    if (trajectory_log->size() < draw.ode.trajectory.size()) {
                        trajectory_log->resize(draw.ode.trajectory.size());
                    }
                    for (std::size_t k = 0; k < draw.ode.trajectory.size(); ++k) {
                        const auto& [t, state] = draw.ode.trajectory[k];
                        TrajectoryStat& stat = (*trajectory_log)[k];
                        stat.step = static_cast<int>(k);
                        stat.t = t;
                        stat.samples += 1;
                        const double n = static_cast<double>(stat.samples);
                        stat.mean_struct_score +=
                            (predict_struct(models.struct_pred, state, layout.full, layout) -
                             stat.mean_struct_score) / n;
                        stat.mean_physics_energy +=
                            (physics_energy(state, cfg.relax) - stat.mean_physics_energy) / n;
                    }
                }
            }

            std::vector<MutationProposal> proposals = propose_mutations(
                models.ifm, sampled, layout, cfg.arities, cfg.per_arity, rng, cfg.uniform_positions);
            if (proposal_log) {
                score_proposals(models.seq, antigen, proposals);
                const std::string parent = hash_hex(current.str());
                for (const MutationProposal& p : proposals) {
                    std::string pos;
                    for (std::size_t i = 0; i < p.positions.size(); ++i) {
                        if (i) pos += "+";
                        pos += std::to_string(p.positions[i]);
                    }
                    proposal_log->push_back(ProposalLogRow{ag, it, p.arity, std::move(pos), parent,
                                                           p.mutated_antibody.str(), p.seq_score});
                }
            }
            const std::vector<MutationProposal> selected =
                post_select(models.seq, antigen, std::move(proposals),
                            static_cast<std::size_t>(cfg.top_m));

            for (const MutationProposal& p : selected) {
                std::string path = current_path.empty()
                                       ? describe_step(it, p)
                                       : current_path + ";" + describe_step(it, p);
                // First path to reach a sequence wins.
                pool.emplace(p.mutated_antibody.str(),
                             Candidate{p.mutated_antibody, p.seq_score, it, std::move(path)});
            }

            // Advance: either this iteration's best or the global pool best.
            const Candidate* next = nullptr;
            if (cfg.carry_best_only) {
                next = &pool.at(selected.front().mutated_antibody.str());
            } else {
                for (const auto& [key, cand] : pool) {
                    if (!next || cand.seq_score < next->seq_score ||
                        (cand.seq_score == next->seq_score && key < next->antibody.str())) {
                        next = &cand;
                    }
                }
            }
            current = next->antibody;
            current_path = next->path;
        }

        // Mutations can revert; a candidate equal to the wildtype is not a design.
        pool.erase(wildtype.str());

        std::vector<const Candidate*> ranked;
        ranked.reserve(pool.size());
        for (const auto& [key, cand] : pool) ranked.push_back(&cand);
        std::sort(ranked.begin(), ranked.end(), [](const Candidate* a, const Candidate* b) {
            if (a->seq_score != b->seq_score) return a->seq_score < b->seq_score;
            return a->antibody.str() < b->antibody.str();
        });

        if (ranked.empty()) {
            designs.push_back(DesignRecord{ag, wildtype, wt_dg, wt_dg,
                                           predict_seq(models.seq, wildtype, antigen), 0, "",
                                           true});
            continue;
        }
        const std::size_t take =
            std::min<std::size_t>(static_cast<std::size_t>(cfg.final_designs), ranked.size());
        for (std::size_t i = 0; i < take; ++i) {
            const Candidate& cand = *ranked[i];
            designs.push_back(DesignRecord{
                ag, cand.antibody,
                oracle_binding_energy(registry.layout_for_antibody(ag, cand.antibody),
                                      registry.world.sigma_contact),
                wt_dg, cand.seq_score, cand.iteration, cand.path, false});
        }
    }
    return designs;
}

MetricsReport compute_metrics(const std::vector<DesignRecord>& designs,
                              const SequenceRegistry& registry) {
    if (designs.empty()) throw std::invalid_argument("compute_metrics: no designs");
    MetricsReport report;

    std::vector<double> design_dg, wildtype_dg;
    std::map<std::uint32_t, std::vector<Sequence>> by_antigen;
    std::vector<Sequence> all_designs;
    for (const auto& d : designs) {
        design_dg.push_back(d.oracle_dg);
        wildtype_dg.push_back(d.wildtype_dg);
        by_antigen[d.antigen_id].push_back(d.antibody);
        all_designs.push_back(d.antibody);
    }
    report.imp = metric_imp(design_dg, wildtype_dg);

    std::vector<std::vector<Sequence>> groups;
    groups.reserve(by_antigen.size());
    for (auto& [ag, seqs] : by_antigen) {
        groups.push_back(std::move(seqs));
        std::vector<double> dd, wd;
        for (const auto& d : designs) {
            if (d.antigen_id == ag) {
                dd.push_back(d.oracle_dg);
                wd.push_back(d.wildtype_dg);
            }
        }
        report.per_antigen_imp.emplace_back(ag, metric_imp(dd, wd));
    }
    report.sim = metric_sim(groups, registry.world.cdr_positions);

    const NatReport nat = metric_nat(all_designs);
    report.nat = nat.nat;
    report.nat_floored = nat.floored;
    return report;
}

std::vector<AblationRow> run_ablations(const RunConfig& cfg, const AblationModelSet& models,
                                       const SequenceRegistry& registry,
                                       const std::vector<std::uint32_t>& antigen_ids) {
    std::vector<AblationRow> rows;
    for (const std::string& variant : ablation_variants()) {
        RunConfig vcfg = cfg;
        vcfg.ablation = AblationFlags{};
        PipelineModels use = models.full;
        if (variant == "one_iteration") {
            vcfg.ablation.one_iteration = true;
        } else if (variant == "no_pc") {
            vcfg.ablation.no_pc = true;
        } else if (variant == "no_flow") {
            vcfg.ablation.no_flow = true;
        } else if (variant == "no_energy") {
            vcfg.ablation.no_energy = true;
            use.seq = models.seq_supervised;
            use.struct_pred = models.struct_supervised;
        } else if (variant == "no_selection") {
            vcfg.ablation.no_selection = true;
            use.seq = models.seq_unfiltered;
            use.struct_pred = models.struct_unfiltered;
        }
        for (std::uint64_t seed : cfg.seeds) {
            AblationRow row;
            row.variant = variant;
            row.seed = seed;
            row.metrics =
                compute_metrics(run_maturation(vcfg, use, registry, antigen_ids, seed), registry);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

SweepPoint sweep_point(const RunConfig& cfg, const PipelineModels& models,
                       const SequenceRegistry& registry,
                       const std::vector<std::uint32_t>& antigen_ids, double value) {
    std::vector<double> imps, sims, nats;
    for (std::uint64_t seed : cfg.seeds) {
        const MetricsReport m =
            compute_metrics(run_maturation(cfg, models, registry, antigen_ids, seed), registry);
        imps.push_back(m.imp);
        sims.push_back(m.sim);
        nats.push_back(m.nat);
    }
    SweepPoint p;
    p.value = value;
    p.imp = median(imps);
    p.sim = median(sims);
    p.nat = median(nats);
    return p;
}

void normalize_sweep(std::vector<SweepPoint>& points, double default_value,
                     const char* parameter) {
    const SweepPoint* anchor = nullptr;
    for (const SweepPoint& p : points) {
        if (p.value == default_value) anchor = &p;
    }
    if (!anchor) {
        throw std::invalid_argument(std::string("sweep grid for ") + parameter +
                                    " must contain the configured default " +
                                    fmt17(default_value));
    }
    const auto norm = [](double v, double denom) { return denom == 0.0 ? 0.0 : v / denom; };
    for (SweepPoint& p : points) {
        p.imp_norm = norm(p.imp, anchor->imp);
        p.sim_norm = norm(p.sim, anchor->sim);
        p.nat_norm = norm(p.nat, anchor->nat);
    }
}

} // namespace

std::vector<SweepPoint> run_gamma_sweep(const RunConfig& cfg, const PipelineModels& models,
                                        const SequenceRegistry& registry,
                                        const std::vector<std::uint32_t>& antigen_ids) {
    std::vector<SweepPoint> points;
    for (double gamma : cfg.sweep_gamma) {
        RunConfig vcfg = cfg;
        vcfg.guidance.gamma = gamma;
        points.push_back(sweep_point(vcfg, models, registry, antigen_ids, gamma));
    }
    normalize_sweep(points, cfg.guidance.gamma, "gamma");
    return points;
}

std::vector<SweepPoint> run_steps_sweep(const RunConfig& cfg, const PipelineModels& models,
                                        const SequenceRegistry& registry,
                                        const std::vector<std::uint32_t>& antigen_ids) {
    const int default_steps = static_cast<int>(cfg.schedule_levels.size()) - 1;
    std::vector<SweepPoint> points;
    for (int steps : cfg.sweep_steps) {
        if (steps < 1) throw std::invalid_argument("run_steps_sweep: step counts must be >= 1");
        RunConfig vcfg = cfg;
        if (steps == default_steps) {
            vcfg.schedule_levels = cfg.schedule_levels;
        } else {
            // Evenly spaced levels 1 -> 0; valid under either schedule mode.
            vcfg.schedule_levels.clear();
            for (int k = 0; k <= steps; ++k) {
                vcfg.schedule_levels.push_back(1.0 - static_cast<double>(k) / steps);
            }
            vcfg.schedule_levels.back() = 0.0;
        }
        points.push_back(sweep_point(vcfg, models, registry, antigen_ids, steps));
    }
    normalize_sweep(points, default_steps, "steps");
    return points;
}

CsvTable designs_to_csv(const std::vector<DesignRecord>& designs) {
    CsvTable t;
    t.header = {"antigen_id", "antibody",      "oracle_dg",     "wildtype_dg",
                "seq_score",  "iteration",     "mutation_path", "wildtype_fallback"};
    for (const auto& d : designs) {
        t.rows.push_back({std::to_string(d.antigen_id), d.antibody.str(), fmt17(d.oracle_dg),
                          fmt17(d.wildtype_dg), fmt17(d.seq_score), std::to_string(d.iteration),
                          d.mutation_path, d.wildtype_fallback ? "1" : "0"});
    }
    return t;
}

CsvTable metrics_to_csv(const MetricsReport& report) {
    CsvTable t;
    t.header = {"metric", "value"};
    t.rows.push_back({"imp", fmt17(report.imp)});
    t.rows.push_back({"sim", fmt17(report.sim)});
    t.rows.push_back({"nat", fmt17(report.nat)});
    t.rows.push_back({"nat_floored", report.nat_floored ? "1" : "0"});
    for (const auto& [ag, imp] : report.per_antigen_imp) {
        t.rows.push_back({"imp_antigen_" + std::to_string(ag), fmt17(imp)});
    }
    return t;
}

CsvTable ablation_to_csv(const std::vector<AblationRow>& rows) {
    CsvTable t;
    t.header = {"variant", "seed", "imp", "sim", "nat"};
    for (const auto& r : rows) {
        t.rows.push_back({r.variant, std::to_string(r.seed), fmt17(r.metrics.imp),
                          fmt17(r.metrics.sim), fmt17(r.metrics.nat)});
    }
    return t;
}

CsvTable sweep_to_csv(const std::vector<SweepPoint>& points, const std::string& parameter) {
    CsvTable t;
    t.header = {"parameter", "value",    "imp",      "sim",
                "nat",       "imp_norm", "sim_norm", "nat_norm"};
    for (const auto& p : points) {
        t.rows.push_back({parameter, fmt17(p.value), fmt17(p.imp), fmt17(p.sim), fmt17(p.nat),
                          fmt17(p.imp_norm), fmt17(p.sim_norm), fmt17(p.nat_norm)});
    }
    return t;
}

CsvTable proposals_to_csv(const std::vector<ProposalLogRow>& rows) {
    CsvTable t;
    t.header = {"antigen_id",  "iteration",       "arity",    "positions",
                "parent_hash", "mutant_sequence", "seq_score"};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.antigen_id), std::to_string(r.iteration),
                          std::to_string(r.arity), r.positions, r.parent_hash, r.mutant_sequence,
                          fmt17(r.seq_score)});
    }
    return t;
}

CsvTable trajectory_to_csv(const std::vector<TrajectoryStat>& stats) {
    CsvTable t;
    t.header = {"step", "t", "mean_struct_score", "mean_physics_energy", "samples"};
    for (const auto& s : stats) {
        t.rows.push_back({std::to_string(s.step), fmt17(s.t), fmt17(s.mean_struct_score),
                          fmt17(s.mean_physics_energy), std::to_string(s.samples)});
    }
    return t;
}

} // namespace affilab
