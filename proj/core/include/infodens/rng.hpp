#pragma once

#include <cstdint>

namespace infodens {

// splitmix64: the repository's pinned deterministic generator.
//
// Chosen because it is trivially seedable, splittable (split() derives an
// independent stream from the parent state), and its output is fixed by the
// algorithm alone, so sampled streams are bit-identical across platforms and
// standard library versions. Reference: Steele, Lea, Flood (2014),
// "Fast splittable pseudorandom number generators".
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in the open interval (0,1); never returns 0 or 1 so it is safe
    // to feed through quantile functions
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // derive an independent child stream; advances this generator once
    SplitMix64 split() { return SplitMix64(next_u64() ^ 0x9e3779b97f4a7c15ULL); }

private:
    std::uint64_t state_;
};

} // namespace infodens
