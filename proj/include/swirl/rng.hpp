#ifndef SWIRL_RNG_HPP
#define SWIRL_RNG_HPP

#include <cstdint>
#include <random>

namespace swirl {

/// Seeded random source with portable output.
///
/// std::mt19937_64 has standard-mandated output, and the value mappings
/// below are spelled out by hand, so a given seed produces the same draw
/// sequence on every platform and standard library.
class rng {
public:
    explicit rng(std::uint64_t seed) : engine_(seed) {}

    /// decorrelates substreams (e.g. one per query) from a base seed
    static rng for_stream(std::uint64_t seed, std::uint64_t stream) {
        return rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x9e3779b97f4a7c15ull)));
    }

    /// uniform double in [0, 1), 53 bits of resolution
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// uniform double on the open interval (lo, hi)
    double open_uniform(double lo, double hi) {
        double u = unit();
        while (u == 0.0) u = unit();
        return lo + u * (hi - lo);
    }

    /// uniform integer in [lo, hi], inclusive
    int uniform_int(int lo, int hi) {
        const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % range);
    }

    std::uint64_t next() { return engine_(); }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace swirl

#endif // SWIRL_RNG_HPP
