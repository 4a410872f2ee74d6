// SPDX-License-Identifier: Apache-2.0

#ifndef RFVLC_RANDOM_HPP
#define RFVLC_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

namespace rfvlc {

/// Explicitly seeded 64-bit random stream.
///
/// A stream is identified by the pair (seed, stream index). Distinct stream
/// indices under the same seed give statistically independent sequences, so
/// parallel workers can each own one and still reproduce a serial run
/// bit-for-bit. The engine is std::mt19937_64 keyed through std::seed_seq
/// (both fully specified by the standard); the variate transforms below are
/// written out by hand so the drawn values do not depend on the standard
/// library's distribution implementations.
///
/// A stream is single-owner. Copying one forks an identical sequence.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on (0, 1], 53-bit resolution.
    double uniform() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Two independent standard normals (Box-Muller).
    std::pair<double, double> standard_normal_pair() {
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        return std::mt19937_64(seq);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

}  // namespace rfvlc

#endif  // RFVLC_RANDOM_HPP
