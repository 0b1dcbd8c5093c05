#pragma once

#include <cstdint>
#include <random>

namespace moswacp {

/// Deterministic RNG used by every stochastic component.
///
/// All draws go through the helpers below (never through std::*_distribution,
/// whose output is implementation-defined), so a given seed reproduces the
/// same stream on every platform and the documented draw orders in the
/// importer/solvers stay meaningful.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    int uniform_int(int lo, int hi) {
        if (lo >= hi) return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        return lo + static_cast<int>(eng_() % span);
    }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * (1.0 / 9007199254740992.0);
    }

    /// Pick an index in [0, n). Requires n >= 1.
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

    /// Derive an independent child seed (splitmix64 finalizer over a tag).
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Stable 64-bit hash of a string, for seed derivation from names.
    static std::uint64_t hash_name(const std::string& s) {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace moswacp
