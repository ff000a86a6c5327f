#pragma once

#include <cstdint>

namespace falconer {

/// SplitMix64: tiny, portable, and identical on every platform, which is
/// what seeded reports need. Distinct streams come from mixing the seed
/// with a stream index before use.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 base(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
        std::uint64_t mixed = base.next();
        return SplitMix64(mixed);
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw in [0, bound), bound > 0 (Lemire rejection).
    std::uint64_t below(std::uint64_t bound) {
        while (true) {
            std::uint64_t x = next();
            unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
            std::uint64_t lo = static_cast<std::uint64_t>(m);
            if (lo < bound) {
                std::uint64_t threshold = (0 - bound) % bound;
                if (lo < threshold) continue;
            }
            return static_cast<std::uint64_t>(m >> 64);
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace falconer
