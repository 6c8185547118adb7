#pragma once

#include <cmath>
#include <cstdint>

namespace scw {

// SplitMix64 stream. Trial streams are derived from (master seed, point index,
// trial index) by seed mixing, so trials can run in any order on any number of
// workers and still draw identical values.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    static Rng for_trial(std::uint64_t master_seed, std::uint64_t point_index,
                         std::uint64_t trial_index) {
        std::uint64_t s = mix(master_seed ^ 0xA5A5A5A5A5A5A5A5ull);
        s = mix(s + 0x9E3779B97F4A7C15ull * (point_index + 1));
        s = mix(s + 0xD1B54A32D192ED03ull * (trial_index + 1));
        return Rng(s);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1]
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    bool bit() { return next_u64() >> 63; }

    // standard normal via Box-Muller; second value cached
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform_pos();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace scw
