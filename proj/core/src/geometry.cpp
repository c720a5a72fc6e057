#include "affilab/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace affilab {

double distance(const Structure& s, std::size_t i, std::size_t j) {
    const double* a = s.row(i);
    const double* b = s.row(j);
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Structure add_scaled(const Structure& a, double t, const Structure& b) {
    if (a.xyz.size() != b.xyz.size()) throw std::invalid_argument("add_scaled: shape mismatch");
    Structure c = a;
    for (std::size_t i = 0; i < c.xyz.size(); ++i) c.xyz[i] += t * b.xyz[i];
    return c;
}

void axpy(Structure& a, double t, const Structure& b) {
    if (a.xyz.size() != b.xyz.size()) throw std::invalid_argument("axpy: shape mismatch");
    for (std::size_t i = 0; i < a.xyz.size(); ++i) a.xyz[i] += t * b.xyz[i];
}

void scale(Structure& a, double t) {
    for (auto& v : a.xyz) v *= t;
}

double max_abs_diff(const Structure& a, const Structure& b) {
    if (a.xyz.size() != b.xyz.size()) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.xyz.size(); ++i) {
        m = std::max(m, std::abs(a.xyz[i] - b.xyz[i]));
    }
    return m;
}

void check_finite(const Structure& s, const char* what) {
    for (std::size_t i = 0; i < s.xyz.size(); ++i) {
        if (!std::isfinite(s.xyz[i])) {
            throw std::runtime_error(std::string(what) + ": non-finite coordinate at flat index " +
                                     std::to_string(i));
        }
    }
}

} // namespace affilab
