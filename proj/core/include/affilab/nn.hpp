#pragma once

#include <cstddef>
#include <vector>

#include "affilab/rng.hpp"

namespace affilab {

// Minimal dense-network machinery.  A model owns a single flat parameter
// vector; layer specs record offsets into it.  Gradients accumulate into a
// same-sized flat vector, which keeps the optimizer, finite-difference
// checks, and checkpointing trivial.

struct LinearSpec {
    std::size_t in = 0, out = 0;
    std::size_t w_off = 0; // W row-major [out][in]
    std::size_t b_off = 0;
};

struct EmbedSpec {
    std::size_t count = 0, dim = 0;
    std::size_t off = 0;
};

LinearSpec add_linear(std::size_t in, std::size_t out, std::size_t& cursor);
EmbedSpec add_embedding(std::size_t count, std::size_t dim, std::size_t& cursor);

// y = W x + b
void linear_forward(const LinearSpec& l, const double* p, const double* x, double* y);
// Given dL/dy, accumulate dL/dW and dL/db into gp, and dL/dx into dx (if
// non-null; also accumulated).
void linear_backward(const LinearSpec& l, const double* p, const double* x, const double* dy,
                     double* gp, double* dx);

// Fully connected stack with tanh between layers (no activation after the
// last layer).
struct MlpSpec {
    std::vector<LinearSpec> layers;
    std::size_t in() const { return layers.front().in; }
    std::size_t out() const { return layers.back().out; }
};

MlpSpec add_mlp(const std::vector<std::size_t>& dims, std::size_t& cursor);

// Activations captured by forward for use in backward: act[0] is the input,
// act[k+1] the post-tanh output of layer k (raw output for the final layer).
struct MlpTrace {
    std::vector<std::vector<double>> act;
};

void mlp_forward(const MlpSpec& m, const double* p, const double* x, double* y,
                 MlpTrace* trace = nullptr);
// Requires the trace captured by forward.  Accumulates into gp and dx.
void mlp_backward(const MlpSpec& m, const double* p, const MlpTrace& trace, const double* dy,
                  double* gp, double* dx);

// Xavier-uniform init; embeddings get uniform(-scale, scale).
void init_linear(const LinearSpec& l, std::vector<double>& params, Rng& rng);
void init_embedding(const EmbedSpec& e, std::vector<double>& params, Rng& rng, double scale = 0.5);
void zero_block(std::vector<double>& params, std::size_t off, std::size_t len);

// Sinusoidal embedding of a scalar into `dim` slots (dim must be even):
// pairs (sin, cos) at geometrically spaced frequencies pi * 2^k.
void time_embedding(double t, std::size_t dim, double* out);

struct AdamOpt {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    void step(std::vector<double>& params, const std::vector<double>& grad);

private:
    std::vector<double> m_, v_;
    long t_ = 0;
};

} // namespace affilab
