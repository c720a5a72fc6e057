#include "affilab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affilab/checkpoint.hpp"

namespace affilab {

TimePoint::TimePoint(double v) : t_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("time point " + std::to_string(v) + " outside [0,1]");
    }
}

Schedule::Schedule(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2) throw std::invalid_argument("schedule needs at least 2 levels");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!(levels_[i] >= 0.0 && levels_[i] <= 1.0)) {
            throw std::invalid_argument("schedule level " + std::to_string(levels_[i]) +
                                        " outside [0,1]");
        }
        if (i > 0 && !(levels_[i] < levels_[i - 1])) {
            throw std::invalid_argument("schedule levels must be strictly decreasing");
        }
    }
    if (levels_.back() != 0.0) throw std::invalid_argument("schedule must end at 0.0");
}

std::vector<double> schedule_flow_times(const Schedule& schedule, ScheduleMode mode) {
    std::vector<double> t;
    t.reserve(schedule.levels().size());
    if (mode == ScheduleMode::NoiseLevels) {
        for (double s : schedule.levels()) t.push_back(1.0 - s);
    } else {
        // Levels read directly as flow times, traversed noisy -> clean.
        t.assign(schedule.levels().rbegin(), schedule.levels().rend());
    }
    return t;
}

Structure harmonic_prior_sample(const HarmonicPriorSpec& spec, Rng& rng) {
    if (spec.chain_length < 2) throw std::invalid_argument("prior chain length must be >= 2");
    if (!(spec.kappa > 0.0)) throw std::invalid_argument("prior stiffness kappa must be > 0");
    const double bond_sd = 1.0 / std::sqrt(spec.kappa);
    Structure x(spec.chain_length);
    for (std::size_t i = 1; i < spec.chain_length; ++i) {
        for (int k = 0; k < 3; ++k) {
            x.row(i)[k] = x.row(i - 1)[k] + bond_sd * rng.gaussian();
        }
    }
    double c[3] = {0, 0, 0};
    for (std::size_t i = 0; i < spec.chain_length; ++i) {
        for (int k = 0; k < 3; ++k) c[k] += x.row(i)[k];
    }
    for (int k = 0; k < 3; ++k) c[k] /= static_cast<double>(spec.chain_length);
    for (std::size_t i = 0; i < spec.chain_length; ++i) {
        for (int k = 0; k < 3; ++k) x.row(i)[k] -= c[k];
    }
    return x;
}

Structure interpolate(const Structure& x0, const Structure& x1, TimePoint t) {
    if (x0.xyz.size() != x1.xyz.size()) throw std::invalid_argument("interpolate: shape mismatch");
    Structure xt(x0.residues());
    const double ti = t;
    for (std::size_t i = 0; i < xt.xyz.size(); ++i) {
        xt.xyz[i] = (1.0 - ti) * x0.xyz[i] + ti * x1.xyz[i];
    }
    return xt;
}

Structure conditional_vector_field(const Structure& x, const Structure& x1, TimePoint t) {
    if (x.xyz.size() != x1.xyz.size()) throw std::invalid_argument("vector field: shape mismatch");
    const double ti = t;
    if (ti >= 1.0) throw std::invalid_argument("vector field undefined at t = 1");
    Structure u(x.residues());
    const double inv = 1.0 / (1.0 - ti);
    for (std::size_t i = 0; i < u.xyz.size(); ++i) {
        u.xyz[i] = (x1.xyz[i] - x.xyz[i]) * inv;
    }
    return u;
}

FlowModel FlowModel::init(const FlowModelConfig& cfg, std::uint64_t seed) {
    FlowModel m;
    m.cfg = cfg;
    if (cfg.time_dim % 2 != 0) throw std::invalid_argument("flow time_dim must be even");
    std::size_t cursor = 0;
    m.emb = add_embedding(kNumResidueTypes, cfg.embed_dim, cursor);
    const std::size_t in = 3 + cfg.time_dim + 2 * cfg.embed_dim;
    m.mlp = add_mlp({in, cfg.hidden, cfg.hidden, 3}, cursor);
    m.params.assign(cursor, 0.0);
    Rng rng(seed);
    init_embedding(m.emb, m.params, rng);
    for (std::size_t k = 0; k + 1 < m.mlp.layers.size(); ++k) init_linear(m.mlp.layers[k], m.params, rng);
    // Output layer starts at zero: the untrained denoiser predicts the
    // origin for every residue.
    const auto& last = m.mlp.layers.back();
    zero_block(m.params, last.w_off, last.in * last.out + last.out);
    return m;
}

namespace {

// Shared input assembly: [x_i | time_emb(t) | emb(a_i) | mean_j emb(a_j)].
struct FlowInputs {
    std::size_t in_dim = 0;
    std::vector<double> context;  // embed_dim
    std::vector<double> time_emb; // time_dim
};

FlowInputs flow_inputs(const FlowModel& m, double t, const Sequence& seq) {
    FlowInputs f;
    f.in_dim = 3 + m.cfg.time_dim + 2 * m.cfg.embed_dim;
    f.time_emb.resize(m.cfg.time_dim);
    time_embedding(t, m.cfg.time_dim, f.time_emb.data());
    f.context.assign(m.cfg.embed_dim, 0.0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const double* row = m.params.data() + m.emb.off + seq[i] * m.cfg.embed_dim;
        for (std::size_t k = 0; k < m.cfg.embed_dim; ++k) f.context[k] += row[k];
    }
    for (auto& v : f.context) v /= static_cast<double>(seq.size());
    return f;
}

void fill_residue_input(const FlowModel& m, const FlowInputs& f, const Structure& x,
                        const Sequence& seq, std::size_t i, double* in) {
    const double* xi = x.row(i);
    in[0] = xi[0];
    in[1] = xi[1];
    in[2] = xi[2];
    std::size_t o = 3;
    for (std::size_t k = 0; k < m.cfg.time_dim; ++k) in[o++] = f.time_emb[k];
    const double* row = m.params.data() + m.emb.off + seq[i] * m.cfg.embed_dim;
    for (std::size_t k = 0; k < m.cfg.embed_dim; ++k) in[o++] = row[k];
    for (std::size_t k = 0; k < m.cfg.embed_dim; ++k) in[o++] = f.context[k];
}

} // namespace

Structure FlowModel::denoise(const Structure& x, double t, const Sequence& seq) const {
    if (x.residues() != seq.size()) {
        throw std::invalid_argument("denoise: structure has " + std::to_string(x.residues()) +
                                    " residues, sequence " + std::to_string(seq.size()));
    }
    const FlowInputs f = flow_inputs(*this, t, seq);
    std::vector<double> in(f.in_dim);
    Structure out(x.residues());
    for (std::size_t i = 0; i < x.residues(); ++i) {
        fill_residue_input(*this, f, x, seq, i, in.data());
        mlp_forward(mlp, params.data(), in.data(), out.row(i));
    }
    return out;
}

void FlowModel::denoise_backward(const Structure& x, double t, const Sequence& seq,
                                 const Structure& dout, std::vector<double>& grad) const {
    if (grad.size() != params.size()) throw std::invalid_argument("denoise_backward: grad size mismatch");
    const FlowInputs f = flow_inputs(*this, t, seq);
    std::vector<double> in(f.in_dim), din(f.in_dim), y(3);
    std::vector<double> dcontext(cfg.embed_dim, 0.0);
    MlpTrace trace;
    for (std::size_t i = 0; i < x.residues(); ++i) {
        fill_residue_input(*this, f, x, seq, i, in.data());
        mlp_forward(mlp, params.data(), in.data(), y.data(), &trace);
        std::fill(din.begin(), din.end(), 0.0);
        mlp_backward(mlp, params.data(), trace, dout.row(i), grad.data(), din.data());
        // Route input gradients into the embedding table: the per-residue
        // slot feeds row a_i directly, the context slot feeds every row
        // through the mean.
        double* gemb_i = grad.data() + emb.off + seq[i] * cfg.embed_dim;
        for (std::size_t k = 0; k < cfg.embed_dim; ++k) {
            gemb_i[k] += din[3 + cfg.time_dim + k];
            dcontext[k] += din[3 + cfg.time_dim + cfg.embed_dim + k];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) {
        double* gemb_j = grad.data() + emb.off + seq[j] * cfg.embed_dim;
        for (std::size_t k = 0; k < cfg.embed_dim; ++k) gemb_j[k] += dcontext[k] * inv_n;
    }
}

Structure model_vector_field(const FlowModel& model, const Structure& x, TimePoint t,
                             const Sequence& seq) {
    const double ti = t;
    if (ti >= 1.0) throw std::invalid_argument("vector field undefined at t = 1");
    const Structure xhat = model.denoise(x, ti, seq);
    Structure v(x.residues());
    const double inv = 1.0 / (1.0 - ti);
    for (std::size_t i = 0; i < v.xyz.size(); ++i) v.xyz[i] = (xhat.xyz[i] - x.xyz[i]) * inv;
    return v;
}

std::vector<double> train_flow(FlowModel& model, const std::vector<FlowTrainExample>& data,
                               const FlowTrainConfig& cfg, Rng& rng) {
    if (data.empty()) throw std::invalid_argument("train_flow: dataset is empty");
    std::vector<double> curve;
    if (cfg.epochs <= 0) return curve;

    AdamOpt opt;
    opt.lr = cfg.lr;
    std::vector<double> grad(model.params.size(), 0.0);
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    const int batch = std::max(1, cfg.batch);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        // Fisher-Yates shuffle from the run rng.
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng.below(i)]);
        }
        double epoch_loss = 0.0;
        std::size_t done = 0;
        while (done < order.size()) {
            const std::size_t take = std::min<std::size_t>(batch, order.size() - done);
            std::fill(grad.begin(), grad.end(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t b = 0; b < take; ++b) {
                const auto& ex = data[order[done + b]];
                const double t = rng.uniform();
                Structure x0 = harmonic_prior_sample({ex.x1.residues(), cfg.kappa}, rng);
                Structure xt = interpolate(x0, ex.x1, TimePoint(t));
                Structure xhat = model.denoise(xt, t, ex.seq);

                const double inv_dim = 1.0 / static_cast<double>(xhat.xyz.size());
                Structure dout(xhat.residues());
                double loss = 0.0;
                for (std::size_t i = 0; i < xhat.xyz.size(); ++i) {
                    const double r = xhat.xyz[i] - ex.x1.xyz[i];
                    loss += r * r * inv_dim;
                    dout.xyz[i] = 2.0 * r * inv_dim / static_cast<double>(take);
                }
                batch_loss += loss;
                model.denoise_backward(xt, t, ex.seq, dout, grad);
            }
            batch_loss /= static_cast<double>(take);
            if (!std::isfinite(batch_loss)) {
                throw std::runtime_error("flow training diverged (non-finite loss at epoch " +
                                         std::to_string(epoch) + "); reduce train lr " +
                                         std::to_string(cfg.lr));
            }
            opt.step(model.params, grad);
            epoch_loss += batch_loss * static_cast<double>(take);
            done += take;
        }
        curve.push_back(epoch_loss / static_cast<double>(order.size()));
    }
    return curve;
}

OdeResult sample_ode(const FlowModel& model, const Sequence& seq, const Schedule& schedule,
                     Rng& rng, const VectorField* field_override, double kappa,
                     ScheduleMode mode) {
    const std::vector<double> times = schedule_flow_times(schedule, mode);
    OdeResult res;
    Structure x = harmonic_prior_sample({seq.size(), kappa}, rng);
    res.trajectory.emplace_back(times.front(), x);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double t = times[k];
        const double dt = times[k + 1] - times[k];
        Structure v = field_override ? (*field_override)(x, t)
                                     : model_vector_field(model, x, TimePoint(t), seq);
        axpy(x, dt, v);
        try {
            check_finite(x, "sample_ode");
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string(e.what()) + " at Euler step " + std::to_string(k));
        }
        res.trajectory.emplace_back(times[k + 1], x);
    }
    res.final = std::move(x);
    return res;
}

void save_flow_model(const FlowModel& model, const std::string& path,
                     const std::map<std::string, std::string>& extra_manifest) {
    std::map<std::string, std::string> manifest = extra_manifest;
    manifest["kind"] = "flow_denoiser";
    manifest["hidden"] = std::to_string(model.cfg.hidden);
    manifest["time_dim"] = std::to_string(model.cfg.time_dim);
    manifest["embed_dim"] = std::to_string(model.cfg.embed_dim);
    manifest["param_count"] = std::to_string(model.params.size());
    save_checkpoint(path,
                    {NamedTensor{"params", {model.params.size()}, model.params}},
                    manifest);
}

FlowModel load_flow_model(const std::string& path) {
    const auto manifest = load_manifest(path);
    const auto tensors = load_checkpoint(path);
    FlowModelConfig cfg;
    cfg.hidden = std::stoul(manifest.at("hidden"));
    cfg.time_dim = std::stoul(manifest.at("time_dim"));
    cfg.embed_dim = std::stoul(manifest.at("embed_dim"));
    FlowModel m = FlowModel::init(cfg, 0);
    if (tensors.size() != 1 || tensors[0].data.size() != m.params.size()) {
        throw std::runtime_error("checkpoint " + path + ": parameter shape does not match manifest");
    }
    m.params = tensors[0].data;
    return m;
}

} // namespace affilab
