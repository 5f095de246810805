#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace delayrc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Labeled sub-seed derivation. The same (master, label, index) triple
/// always maps to the same sub-seed; distinct labels decorrelate the
/// streams drawn from one master seed.
inline std::uint64_t mix_seed(std::uint64_t master, std::string_view label,
                              std::uint64_t index = 0) {
    std::uint64_t h = splitmix64(master ^ fnv1a64(label));
    return splitmix64(h ^ (0x632be59bd9b4e019ULL * (index + 1)));
}

/// Deterministic uniform doubles on top of mt19937_64. The bit-to-double
/// mapping is explicit so streams do not depend on the standard library's
/// distribution implementation.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double next(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

private:
    std::mt19937_64 eng_;
};

inline std::vector<double> uniform_sequence(std::uint64_t seed, std::size_t n,
                                            double lo, double hi) {
    UniformSource src(seed);
    std::vector<double> out(n);
    for (double& v : out) v = src.next(lo, hi);
    return out;
}

}  // namespace delayrc
