#pragma once

// Energy-guided sampling: tilt the learned vector field toward low predicted
// binding energy, then clean up local geometry with a physics relaxation.

#include "affilab/complex.hpp"
#include "affilab/flow.hpp"
#include "affilab/geometry.hpp"
#include "affilab/predictors.hpp"

namespace affilab {

struct GuidanceConfig {
    double gamma = 5.0;          // guidance strength
    double t_min_guidance = 0.5; // below this flow time the plain field is used
    bool cdr_only = true;        // restrict the energy pull to CDR residues
};

// ṽ(x, t) = v̂(x, t) - γ · (1-t)/t · ∇f̂(x̂1(x, t)), with the gradient taken at
// the denoised structure and treated as a gradient in x (the denoiser Jacobian
// is approximated by the identity).  Requires 0 < t < 1.
Structure guided_vector_field(const FlowModel& model, const StructPredictor& pred,
                              const Structure& x, TimePoint t, const Sequence& seq,
                              const ComplexLayout& layout, const GuidanceConfig& cfg);

struct RelaxConfig {
    int max_iters = 100;
    double step = 0.1;         // initial descent step, halved on backtracking
    double bond_weight = 1.0;
    double clash_weight = 1.0;
    double clash_radius = 0.8; // non-bonded pairs closer than this are penalized
};

// Σ_bonds w_b (|x_{i+1}-x_i| - 1)^2 + Σ_{|i-j|>1} w_c max(0, r_c - d_ij)^2
double physics_energy(const Structure& x, const RelaxConfig& cfg);

// Analytic gradient of physics_energy.  Coincident points (distance < 1e-9)
// have no defined direction; they separate along the unit x-axis.
Structure physics_energy_grad(const Structure& x, const RelaxConfig& cfg);

struct RelaxResult {
    Structure x;
    // Energy before the first step and after each accepted step; never
    // increasing.
    std::vector<double> energy_trace;
};

// Backtracking gradient descent on physics_energy.  Stops after max_iters,
// when an accepted step improves by less than 1e-9, or when no step length
// down to machine scale improves the energy.
RelaxResult corrector_relax(const Structure& x0, const RelaxConfig& cfg);

struct GuidedSampleResult {
    Structure final; // relaxed when relax_final is set, else the raw ODE output
    OdeResult ode;
    std::vector<double> relax_trace; // empty when relax_final is false
};

// ODE sampling under the guided field.  Knots with t == 0, t < t_min_guidance,
// or γ == 0 fall back to the plain model field, so γ == 0 reproduces the
// unguided trajectory exactly.
GuidedSampleResult guided_sample(const FlowModel& model, const StructPredictor& pred,
                                 const Sequence& seq, const ComplexLayout& layout,
                                 const Schedule& schedule, const GuidanceConfig& gcfg,
                                 const RelaxConfig& rcfg, Rng& rng, bool relax_final = true,
                                 double kappa = 1.0, ScheduleMode mode = ScheduleMode::NoiseLevels);

} // namespace affilab
