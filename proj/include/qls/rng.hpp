#ifndef QLS_RNG_HPP
#define QLS_RNG_HPP

#include <cstdint>
#include <string_view>

#include "qls/digest.hpp"

namespace qls {

// Deterministic 64-bit generator (xorshift-multiply finalizer over a Weyl
// sequence). Bit-identical across platforms; all sampling flows from one
// top-level seed through named substreams.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::uint64_t state_;
};

// Independent substream: mixes the top-level seed with a stream label so
// concurrent consumers never share a sequence.
inline Rng substream(std::uint64_t seed, std::string_view label) {
    Rng mixer(seed ^ fnv1a64(label));
    return Rng(mixer.next_u64());
}

}  // namespace qls

#endif
