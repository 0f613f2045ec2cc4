#pragma once

#include <cstdint>
#include <random>

namespace mcsim {

/// SplitMix64 finalizer; used to derive independent per-realization seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Random stream owned by one realization.
///
/// The engine is a 64-bit Mersenne Twister whose state is seeded from a
/// SplitMix64 chain keyed by (master seed, realization index), so any
/// realization can be reproduced on its own and in any order.
class Rng {
public:
    static constexpr const char* kScheme = "mt19937_64 seeded via seed_seq of splitmix64(master_seed, index) words";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_realization(std::uint64_t master_seed, std::uint64_t index)
    {
        std::uint64_t state = splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL);
        std::uint32_t words[8];
        for (auto& w : words) {
            state = splitmix64(state);
            w = static_cast<std::uint32_t>(state >> 32);
        }
        std::seed_seq seq(std::begin(words), std::end(words));
        return Rng(std::mt19937_64(seq));
    }

    /// Uniform on the open interval (0, 1).
    double uniform_open()
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on (0, 1]; a raw zero draw maps to 1 so that log(u) is finite.
    double uniform_half_open()
    {
        return 1.0 - static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
    }

    double normal() { return normal_(engine_); }

    std::mt19937_64& engine() { return engine_; }

private:
    explicit Rng(std::mt19937_64 engine) : engine_(std::move(engine)) {}

    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace mcsim
