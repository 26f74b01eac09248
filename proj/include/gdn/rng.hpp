#ifndef GDN_RNG_HPP
#define GDN_RNG_HPP

#include <cmath>
#include <cstdint>

namespace gdn {

// Counter-friendly splitmix64 stream. One master seed plus a stream id give
// an independent generator, so per-trial streams can be handed out up front
// and trials run in any order (or in parallel) with identical results.
//
// Normal variates use an explicit Box-Muller transform rather than
// std::normal_distribution, whose output is implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(mix(seed + golden) ^ mix(stream * 0xD2B74407B1CE6E93ULL + golden))) {}

    std::uint64_t next_u64() {
        state_ += golden;
        return mix(state_);
    }

    // Uniform in (0, 1]; never 0, so log() below is finite.
    double next_unit() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

private:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    static constexpr double pi = 3.14159265358979323846;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Fisher-Yates shuffle of [0, n) driven by the given stream.
template <typename Container>
void shuffle_indices(Container& v, RngStream& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace gdn

#endif
