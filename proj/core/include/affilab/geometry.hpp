#pragma once

#include <cstddef>
#include <vector>

namespace affilab {

// Cα-like trace: one 3D point per residue, row-major [x0 y0 z0 x1 y1 z1 ...].
// The same container is used for vector fields and coordinate gradients.
struct Structure {
    std::vector<double> xyz;

    Structure() = default;
    explicit Structure(std::size_t n_residues) : xyz(3 * n_residues, 0.0) {}

    std::size_t residues() const { return xyz.size() / 3; }
    double* row(std::size_t i) { return xyz.data() + 3 * i; }
    const double* row(std::size_t i) const { return xyz.data() + 3 * i; }

    friend bool operator==(const Structure& a, const Structure& b) = default;
};

double distance(const Structure& s, std::size_t i, std::size_t j);

// c = a + t*b  (shapes must match)
Structure add_scaled(const Structure& a, double t, const Structure& b);
// in-place a += t*b
void axpy(Structure& a, double t, const Structure& b);
void scale(Structure& a, double t);

double max_abs_diff(const Structure& a, const Structure& b);

// Throws std::runtime_error naming the first non-finite coordinate.
void check_finite(const Structure& s, const char* what);

} // namespace affilab
