#pragma once

#include <cstdint>
#include <string_view>

namespace pinctl {

// Counter-based generator (splitmix64 over a strong mix of seed and counter).
// Fully specified here so that streams are reproducible across platforms and
// standard-library versions; std::uniform_* distributions are deliberately
// avoided for the same reason.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 bits of entropy.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    bool bernoulli(double p) { return u01() < p; }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % n;
    }

private:
    std::uint64_t state_;
};

/// Derives the seed of a named sub-stream from a root seed. All randomness in
/// the workbench flows through this, so any experiment cell can be re-run in
/// isolation given (root seed, stream name, indices).
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (char c : stream) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    RandomStream mix(root ^ h);
    mix.next_u64();
    std::uint64_t s = mix.next_u64() ^ (a * 0xd6e8feb86659fd93ULL);
    RandomStream mix2(s + b);
    mix2.next_u64();
    return mix2.next_u64();
}

} // namespace pinctl
