#pragma once

#include <cstdint>
#include <vector>

namespace affilab {

// Hash-combine used everywhere a child seed is derived from a parent seed
// plus an index (per-antigen streams, per-seed runs, table genesis).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic xoshiro256++ generator seeded via splitmix64.
// All sampling used by the project goes through this class so that a
// (config, seed) pair reproduces every output byte-for-byte; the standard
// library distributions are avoided because their streams are not pinned
// by the standard.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform on [lo, hi).
    double uniform(double lo, double hi);
    // Uniform on (0, 1]; never returns 0 (safe under log()).
    double uniform_pos();
    // Standard normal via Box-Muller; second value is cached.
    double gaussian();
    // Sum of 12 uniforms minus 6: mean 0, variance 1.  Uses only +/- so the
    // stream is reproducible across libm implementations; used for the
    // committed world tables.
    double gaussian_ih12();
    // Unbiased integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n);

    // Independent child stream; derivation depends only on the construction
    // seed and the stream index, not on how much of this stream was consumed.
    Rng child(std::uint64_t stream) const;

    std::uint64_t seed() const { return seed_; }

    // k distinct indices drawn from [0, n) without replacement, in draw order.
    std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k);

private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
    double cached_gauss_ = 0.0;
    bool has_cached_gauss_ = false;
};

} // namespace affilab
