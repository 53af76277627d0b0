#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace mgtd::detail {

// Deterministic PRNG with a fixed algorithm so that seeded runs produce the
// same stream on every platform and standard library. std::shuffle and the
// std distributions are implementation-defined, which would break the
// byte-identical rerun guarantees, so sampling primitives live here instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix(seed)) {
        if (state_ == 0) state_ = 0x9e3779b97f4a7c15ULL;
    }

    std::uint64_t next_u64() {
        // xorshift64* — small, fast, good enough for data shuffling and init.
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dULL;
    }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        // Rejection sampling keeps the draw exactly uniform.
        const std::uint64_t limit = ~0ULL - (~0ULL % bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bool(double p) { return next_double() < p; }

    // Standard normal via Box-Muller (plain formula, no cached spare, so the
    // stream position is a pure function of the call count).
    double next_normal() {
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        // Fisher-Yates with our own draws.
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derives an independent seed for a sub-task (per-document, per-epoch, ...).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return splitmix(seed ^ (0x9e3779b97f4a7c15ULL + splitmix(stream)));
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t state_;
};

}  // namespace mgtd::detail
