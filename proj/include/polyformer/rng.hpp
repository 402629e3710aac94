#ifndef POLYFORMER_RNG_HPP
#define POLYFORMER_RNG_HPP

#include <cstdint>

namespace polyformer {

// splitmix64: tiny, seedable, identical on every platform. Used everywhere a
// reproducible stream is needed (test sampling, random polynomials) so that
// reports are byte-identical across runs and machines.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits (exactly representable).
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

}  // namespace polyformer

#endif
