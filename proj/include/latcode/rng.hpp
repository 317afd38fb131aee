#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace latcode {

// Counter-based splittable random streams. A stream is keyed by a seed plus a
// short id path (restart index, subset index, trial block, ...); sibling
// streams are statistically independent and the split is order-free, so
// results never depend on worker scheduling.
//
// Core generator: splitmix64 (Steele, Lea, Flood 2014). Gaussians use the
// Box-Muller transform on the stream's uniforms; pairs are cached per stream.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(mix(seed ^ kStreamSalt)) {}

    RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids)
        : state_(seed ^ kStreamSalt) {
        for (std::uint64_t id : ids) state_ = mix(state_ * 0x9e3779b97f4a7c15ULL + id + 1);
        state_ = mix(state_);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0,1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform in {0, ..., n-1}; unbiased by rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal draw (Box-Muller).
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1;
        do {
            u1 = uniform();
        } while (u1 == 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    static constexpr std::uint64_t kStreamSalt = 0x5ca1ab1e0ddba11ULL;
    static constexpr double kPi = 3.14159265358979323846;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace latcode
