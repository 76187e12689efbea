#pragma once

#include <cstdint>
#include <random>

namespace homdom {

// Random stream contract "homdom-rng-v1":
//   * engine: std::mt19937_64 (fully specified by the C++ standard);
//   * stream seed for (seed, index) = splitmix64(seed ^ splitmix64(index + 1));
//   * bounded integers by rejection on the top of the 64-bit range, never by
//     std::uniform_int_distribution (whose algorithm is implementation-defined).
// Any reimplementation following these three rules reproduces every corpus.
inline constexpr const char* kRngContract = "homdom-rng-v1";

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng stream(std::uint64_t seed, std::uint64_t index)
    {
        return Rng(splitmix64(seed ^ splitmix64(index + 1)));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
        std::uint64_t x = 0;
        do {
            x = engine_();
        } while (x > limit);
        return x % bound;
    }

    /// True with probability num/den (0 <= num <= den, den > 0).
    bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 engine_;
};

} // namespace homdom
