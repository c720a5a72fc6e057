#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "affilab/geometry.hpp"
#include "affilab/nn.hpp"
#include "affilab/rng.hpp"
#include "affilab/sequence.hpp"

namespace affilab {

// Flow time in [0, 1]: 0 = prior, 1 = data.
struct TimePoint {
    explicit TimePoint(double v);
    operator double() const { return t_; }

private:
    double t_;
};

// Noise-level schedule: strictly decreasing, ends at 0.0.  The number of
// Euler steps is levels.size() - 1.
struct Schedule {
    explicit Schedule(std::vector<double> levels);
    const std::vector<double>& levels() const { return levels_; }
    std::size_t steps() const { return levels_.size() - 1; }

private:
    std::vector<double> levels_;
};

// How schedule entries map to flow time: by default they are descending
// noise levels s with t = 1 - s; the alternative reads them directly as
// descending flow times (run in reverse order).
enum class ScheduleMode { NoiseLevels, FlowTimes };

std::vector<double> schedule_flow_times(const Schedule& schedule, ScheduleMode mode);

struct HarmonicPriorSpec {
    std::size_t chain_length = 2;
    double kappa = 1.0;
};

// Zero-centroid Gaussian chain: bond vectors iid Normal(0, (1/kappa) I3),
// cumulative sum, then centering.  E[|x_{i+1} - x_i|^2] = 3/kappa.
Structure harmonic_prior_sample(const HarmonicPriorSpec& spec, Rng& rng);

// xt = (1-t) x0 + t x1
Structure interpolate(const Structure& x0, const Structure& x1, TimePoint t);

// u = (x1 - x) / (1 - t); t = 1 rejected.
Structure conditional_vector_field(const Structure& x, const Structure& x1, TimePoint t);

// Sequence-conditioned denoiser.  Per residue the network sees the noisy
// coordinate, a sinusoidal embedding of t, the residue-type embedding, and
// the mean-pooled embedding of the whole sequence; two tanh hidden layers;
// the output is the predicted clean coordinate.
struct FlowModelConfig {
    std::size_t hidden = 64;
    std::size_t time_dim = 8;
    std::size_t embed_dim = 8;
};

struct FlowModel {
    FlowModelConfig cfg;
    EmbedSpec emb;
    MlpSpec mlp;
    std::vector<double> params;

    // Seeded init; the output layer starts at zero.
    static FlowModel init(const FlowModelConfig& cfg, std::uint64_t seed);

    // x̂1(x, t; θ)
    Structure denoise(const Structure& x, double t, const Sequence& seq) const;

    // Accumulates d(sum_i dout_i · x̂1_i)/dθ into grad (size params.size()).
    void denoise_backward(const Structure& x, double t, const Sequence& seq,
                          const Structure& dout, std::vector<double>& grad) const;
};

// v̂ = (x̂1(x,t) - x)/(1-t); t = 1 rejected.
Structure model_vector_field(const FlowModel& model, const Structure& x, TimePoint t,
                             const Sequence& seq);

struct FlowTrainExample {
    Sequence seq;
    Structure x1;
};

struct FlowTrainConfig {
    int epochs = 40;
    int batch = 16;
    double lr = 3e-3;
    double kappa = 1.0; // prior stiffness used for x0 draws
};

// Minimizes E ||x̂1(xt, t) - x1||^2 (mean over coordinates) with t ~ U(0,1)
// and x0 from the harmonic prior; Adam, shuffled minibatches.  Returns the
// per-epoch mean loss curve.  Throws on non-finite loss.
std::vector<double> train_flow(FlowModel& model, const std::vector<FlowTrainExample>& data,
                               const FlowTrainConfig& cfg, Rng& rng);

using VectorField = std::function<Structure(const Structure& x, double t)>;

struct OdeResult {
    Structure final;
    std::vector<std::pair<double, Structure>> trajectory; // (flow time, state), includes t=0
};

// Euler integration across the schedule's flow times, starting from a prior
// sample.  field_override (if given) replaces the model field.
OdeResult sample_ode(const FlowModel& model, const Sequence& seq, const Schedule& schedule,
                     Rng& rng, const VectorField* field_override = nullptr, double kappa = 1.0,
                     ScheduleMode mode = ScheduleMode::NoiseLevels);

// Checkpoint adapters (binary container + manifest; see docs/formats.md).
void save_flow_model(const FlowModel& model, const std::string& path,
                     const std::map<std::string, std::string>& extra_manifest = {});
FlowModel load_flow_model(const std::string& path);

} // namespace affilab
