#include "affilab/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace affilab {

LinearSpec add_linear(std::size_t in, std::size_t out, std::size_t& cursor) {
    LinearSpec l;
    l.in = in;
    l.out = out;
    l.w_off = cursor;
    cursor += in * out;
    l.b_off = cursor;
    cursor += out;
    return l;
}

EmbedSpec add_embedding(std::size_t count, std::size_t dim, std::size_t& cursor) {
    EmbedSpec e;
    e.count = count;
    e.dim = dim;
    e.off = cursor;
    cursor += count * dim;
    return e;
}

void linear_forward(const LinearSpec& l, const double* p, const double* x, double* y) {
    const double* w = p + l.w_off;
    const double* b = p + l.b_off;
    for (std::size_t o = 0; o < l.out; ++o) {
        double acc = b[o];
        const double* wrow = w + o * l.in;
        for (std::size_t i = 0; i < l.in; ++i) acc += wrow[i] * x[i];
        y[o] = acc;
    }
}

void linear_backward(const LinearSpec& l, const double* p, const double* x, const double* dy,
                     double* gp, double* dx) {
    const double* w = p + l.w_off;
    double* gw = gp + l.w_off;
    double* gb = gp + l.b_off;
    for (std::size_t o = 0; o < l.out; ++o) {
        const double d = dy[o];
        gb[o] += d;
        double* gwrow = gw + o * l.in;
        const double* wrow = w + o * l.in;
        for (std::size_t i = 0; i < l.in; ++i) {
            gwrow[i] += d * x[i];
            if (dx) dx[i] += d * wrow[i];
        }
    }
}

MlpSpec add_mlp(const std::vector<std::size_t>& dims, std::size_t& cursor) {
    if (dims.size() < 2) throw std::invalid_argument("mlp needs at least input and output dims");
    MlpSpec m;
    for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
        m.layers.push_back(add_linear(dims[k], dims[k + 1], cursor));
    }
    return m;
}

void mlp_forward(const MlpSpec& m, const double* p, const double* x, double* y, MlpTrace* trace) {
    std::vector<double> cur(x, x + m.in());
    if (trace) {
        trace->act.clear();
        trace->act.push_back(cur);
    }
    for (std::size_t k = 0; k < m.layers.size(); ++k) {
        std::vector<double> nxt(m.layers[k].out);
        linear_forward(m.layers[k], p, cur.data(), nxt.data());
        if (k + 1 < m.layers.size()) {
            for (auto& v : nxt) v = std::tanh(v);
        }
        if (trace) trace->act.push_back(nxt);
        cur = std::move(nxt);
    }
    for (std::size_t i = 0; i < m.out(); ++i) y[i] = cur[i];
}

void mlp_backward(const MlpSpec& m, const double* p, const MlpTrace& trace, const double* dy,
                  double* gp, double* dx) {
    if (trace.act.size() != m.layers.size() + 1) {
        throw std::invalid_argument("mlp_backward: trace does not match network");
    }
    const std::size_t last = m.layers.size() - 1;
    std::vector<double> d(dy, dy + m.out());
    for (std::size_t k = last + 1; k-- > 0;) {
        if (k != last) {
            // d arrived at the post-tanh output of layer k; pull it back
            // through tanh using the stored activation.
            const auto& a = trace.act[k + 1];
            for (std::size_t i = 0; i < d.size(); ++i) d[i] *= 1.0 - a[i] * a[i];
        }
        std::vector<double> dprev(m.layers[k].in, 0.0);
        const bool want_dx = (k > 0) || (dx != nullptr);
        linear_backward(m.layers[k], p, trace.act[k].data(), d.data(), gp,
                        want_dx ? dprev.data() : nullptr);
        if (k == 0 && dx) {
            for (std::size_t i = 0; i < dprev.size(); ++i) dx[i] += dprev[i];
        }
        d = std::move(dprev);
    }
}

void init_linear(const LinearSpec& l, std::vector<double>& params, Rng& rng) {
    const double a = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
    for (std::size_t i = 0; i < l.in * l.out; ++i) params[l.w_off + i] = rng.uniform(-a, a);
    for (std::size_t i = 0; i < l.out; ++i) params[l.b_off + i] = 0.0;
}

void init_embedding(const EmbedSpec& e, std::vector<double>& params, Rng& rng, double scale) {
    for (std::size_t i = 0; i < e.count * e.dim; ++i) params[e.off + i] = rng.uniform(-scale, scale);
}

void zero_block(std::vector<double>& params, std::size_t off, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) params[off + i] = 0.0;
}

void time_embedding(double t, std::size_t dim, double* out) {
    if (dim % 2 != 0) throw std::invalid_argument("time embedding dim must be even");
    double freq = 3.14159265358979323846;
    for (std::size_t k = 0; k < dim / 2; ++k) {
        out[2 * k] = std::sin(freq * t);
        out[2 * k + 1] = std::cos(freq * t);
        freq *= 2.0;
    }
}

void AdamOpt::step(std::vector<double>& params, const std::vector<double>& grad) {
    if (params.size() != grad.size()) throw std::invalid_argument("adam: size mismatch");
    if (m_.size() != params.size()) {
        m_.assign(params.size(), 0.0);
        v_.assign(params.size(), 0.0);
        t_ = 0;
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1 * m_[i] + (1.0 - beta1) * grad[i];
        v_[i] = beta2 * v_[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double mhat = m_[i] / bc1;
        const double vhat = v_[i] / bc2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

} // namespace affilab
