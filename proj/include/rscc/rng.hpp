#pragma once
#include <cstdint>

namespace rscc {

// splitmix64 finalizer, a cheap full-avalanche bijection on 64 bits
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// counter-based generator: every draw is a pure function of (seed, stream, step).
// independent streams (per chain, per pixel, per sample) can therefore be evaluated
// in any order, or on any number of workers, and reproduce bit for bit.
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t step = 0;

    std::uint64_t next_u64() { return mix64(seed ^ mix64(stream ^ mix64(step++))); }

    // uniform in [0,1) with 53 random bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

// fold extra coordinates (pixel index, sample index, ...) into a child stream id
inline std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    return mix64(a ^ mix64(b ^ mix64(c)));
}

} // namespace rscc
