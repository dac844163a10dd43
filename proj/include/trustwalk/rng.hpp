// Small fast PRNG for walker trajectories.
//
// Every (seed, source, walker) tuple gets its own stream, so a parallel run
// over sources produces bit-identical hit counts to a serial one.

#ifndef TRUSTWALK_RNG_HPP
#define TRUSTWALK_RNG_HPP

#include <cstdint>

namespace trustwalk {

inline std::uint64_t mix_u64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        return mix_u64(z);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Independent stream for the (seed, a, b) tuple.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = mix_u64(seed + 0x9e3779b97f4a7c15ULL * (a + 1));
    s = mix_u64(s + 0x9e3779b97f4a7c15ULL * (b + 1));
    return SplitMix64(s);
}

// Scalar seed derived from a (seed, tag) pair; used to fan out generator seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix_u64(seed + 0x9e3779b97f4a7c15ULL * (tag + 1));
}

}  // namespace trustwalk

#endif  // TRUSTWALK_RNG_HPP
