#pragma once

#include <cstdint>

namespace nlcseq {

// Counter-style generator: output i of a stream seeded with s is
// mix64(s + (i+1) * 0x9E3779B97F4A7C15), where mix64 is the xor-shift/multiply
// finalizer below. Identical seeds give identical streams on every platform,
// which is what makes baseline reports reproducible. Documented in README.md;
// changing any constant is a report-format break.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // Uniform draw in [0, bound) by rejection, so there is no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t rem = (0 - bound) % bound;  // 2^64 mod bound
        const std::uint64_t limit = 0 - rem;            // largest multiple of bound
        std::uint64_t v = next();
        while (limit != 0 && v >= limit) v = next();
        return v % bound;
    }

  private:
    std::uint64_t state_;
};

// Independent per-stream seeds derived from one master seed (stream t for
// Monte Carlo trial t). Also fixed by the documented scheme.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + (stream + 1) * 0xD1B54A32D192ED03ull);
}

}  // namespace nlcseq
