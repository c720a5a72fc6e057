#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "affilab/geometry.hpp"
#include "affilab/rng.hpp"
#include "affilab/world.hpp"

namespace affilab::test {

// Relative error with an absolute floor so near-zero pairs don't blow up.
inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

// Central finite difference of f along coordinate i of v.
template <typename F>
double central_fd(std::vector<double>& v, std::size_t i, double h, F&& f) {
    const double saved = v[i];
    v[i] = saved + h;
    const double up = f(static_cast<const std::vector<double>&>(v));
    v[i] = saved - h;
    const double down = f(static_cast<const std::vector<double>&>(v));
    v[i] = saved;
    return (up - down) / (2.0 * h);
}

inline Structure random_structure(std::size_t n, Rng& rng, double scale = 1.0) {
    Structure s(n);
    for (double& c : s.xyz) c = scale * rng.gaussian();
    return s;
}

// Small world for fast tests: 12-residue antibody, 8-residue antigen,
// 3-position CDR, single linker repeat.
inline WorldConfig tiny_world() {
    WorldConfig w;
    w.antibody_length = 12;
    w.antigen_length = 8;
    w.cdr_positions = {4, 5, 6};
    w.linker_repeats = 1;
    return w;
}

// Fresh empty directory under the system temp root; wiped if it already
// exists so reruns start clean.
inline std::string scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("affilab_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

inline SequenceRegistry small_registry(const WorldConfig& world, int n_antibodies,
                                       int n_antigens, Rng& rng) {
    SequenceRegistry reg;
    reg.world = world;
    for (int i = 0; i < n_antibodies; ++i)
        reg.antibodies.push_back(sample_natural_antibody(world.antibody_length, rng));
    for (int i = 0; i < n_antigens; ++i)
        reg.antigens.push_back(sample_antigen(world.antigen_length, rng));
    return reg;
}

} // namespace affilab::test
