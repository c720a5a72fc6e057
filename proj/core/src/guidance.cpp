#include "affilab/guidance.hpp"

#include <cmath>
#include <stdexcept>

namespace affilab {

Structure guided_vector_field(const FlowModel& model, const StructPredictor& pred,
                              const Structure& x, TimePoint t, const Sequence& seq,
                              const ComplexLayout& layout, const GuidanceConfig& cfg) {
    const double tv = t;
    if (tv <= 0.0 || tv >= 1.0) {
        throw std::invalid_argument("guided_vector_field: t must lie strictly inside (0, 1)");
    }
    Structure v = model_vector_field(model, x, t, seq);
    if (cfg.gamma == 0.0) return v;

    const Structure x1 = model.denoise(x, tv, seq);
    Structure g = grad_struct(pred, x1, seq, layout);
    if (cfg.cdr_only) {
        std::vector<bool> keep(g.residues(), false);
        for (std::size_t p : layout.cdr_positions) keep[p] = true;
        for (std::size_t i = 0; i < g.residues(); ++i) {
            if (!keep[i]) {
                for (int c = 0; c < 3; ++c) g.row(i)[c] = 0.0;
            }
        }
    }
    const double w = cfg.gamma * (1.0 - tv) / tv;
    axpy(v, -w, g);
    return v;
}

double physics_energy(const Structure& x, const RelaxConfig& cfg) {
    const std::size_t n = x.residues();
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = distance(x, i, i + 1);
        const double r = d - 1.0;
        e += cfg.bond_weight * r * r;
    }
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            const double d = distance(x, i, j);
            if (d < cfg.clash_radius) {
                const double r = cfg.clash_radius - d;
                e += cfg.clash_weight * r * r;
            }
        }
    }
    return e;
}

Structure physics_energy_grad(const Structure& x, const RelaxConfig& cfg) {
    const std::size_t n = x.residues();
    Structure g(n);
    // ∂d/∂x_i = (x_i - x_j)/d; coincident points use the unit x-axis instead.
    const auto unit = [&x](std::size_t i, std::size_t j, double d, double* out) {
        if (d < 1e-9) {
            out[0] = 1.0;
            out[1] = 0.0;
            out[2] = 0.0;
            return;
        }
        for (int c = 0; c < 3; ++c) out[c] = (x.row(i)[c] - x.row(j)[c]) / d;
    };
    double u[3];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = distance(x, i, i + 1);
        const double coef = 2.0 * cfg.bond_weight * (d - 1.0);
        unit(i + 1, i, d, u);
        for (int c = 0; c < 3; ++c) {
            g.row(i + 1)[c] += coef * u[c];
            g.row(i)[c] -= coef * u[c];
        }
    }
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            const double d = distance(x, i, j);
            if (d >= cfg.clash_radius) continue;
            const double coef = -2.0 * cfg.clash_weight * (cfg.clash_radius - d);
            unit(i, j, d, u);
            for (int c = 0; c < 3; ++c) {
                g.row(i)[c] += coef * u[c];
                g.row(j)[c] -= coef * u[c];
            }
        }
    }
    return g;
}

RelaxResult corrector_relax(const Structure& x0, const RelaxConfig& cfg) {
    RelaxResult res;
    res.x = x0;
    double e = physics_energy(res.x, cfg);
    res.energy_trace.push_back(e);
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const Structure g = physics_energy_grad(res.x, cfg);
        double step = cfg.step;
        Structure cand = res.x;
        double cand_e = e;
        bool accepted = false;
        for (int back = 0; back < 40; ++back) {
            cand = add_scaled(res.x, -step, g);
            cand_e = physics_energy(cand, cfg);
            if (cand_e < e) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // stationary up to machine scale
        const double gain = e - cand_e;
        res.x = cand;
        e = cand_e;
        res.energy_trace.push_back(e);
        if (gain < 1e-9) break;
    }
    return res;
}

GuidedSampleResult guided_sample(const FlowModel& model, const StructPredictor& pred,
                                 const Sequence& seq, const ComplexLayout& layout,
                                 const Schedule& schedule, const GuidanceConfig& gcfg,
                                 const RelaxConfig& rcfg, Rng& rng, bool relax_final,
                                 double kappa, ScheduleMode mode) {
    GuidedSampleResult out;
    if (gcfg.gamma == 0.0) {
        out.ode = sample_ode(model, seq, schedule, rng, nullptr, kappa, mode);
    } else {
        const VectorField field = [&](const Structure& x, double t) {
            if (t <= 0.0 || t < gcfg.t_min_guidance) {
                return model_vector_field(model, x, TimePoint(t), seq);
            }
            return guided_vector_field(model, pred, x, TimePoint(t), seq, layout, gcfg);
        };
        out.ode = sample_ode(model, seq, schedule, rng, &field, kappa, mode);
    }
    if (relax_final) {
        RelaxResult relaxed = corrector_relax(out.ode.final, rcfg);
        out.final = std::move(relaxed.x);
        out.relax_trace = std::move(relaxed.energy_trace);
    } else {
        out.final = out.ode.final;
    }
    return out;
}

} // namespace affilab
