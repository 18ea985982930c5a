#pragma once

#include <cstdint>
#include <random>

namespace rsg {

using Rng = std::mt19937_64;

enum class Purpose : std::uint64_t {
    Generic = 0,
    Points = 1,
    Region = 2,
    Inner = 3,
    Certify = 4,
    Sequence = 5,
    Verify = 6,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for an independent stream identified by (master seed, index, purpose).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index,
                                 Purpose purpose = Purpose::Generic) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (index * 0xd1b54a32d192ed03ULL));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(purpose) + 0x632be59bd9b4e019ULL));
    return h;
}

inline Rng substream(std::uint64_t seed, std::uint64_t index, Purpose purpose = Purpose::Generic) {
    std::seed_seq seq{static_cast<std::uint32_t>(derive_seed(seed, index, purpose)),
                      static_cast<std::uint32_t>(derive_seed(seed, index, purpose) >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(purpose)};
    return Rng(seq);
}

std::uint64_t entropy_seed();

}  // namespace rsg
