#pragma once

#include <cstdint>
#include <cmath>

namespace chaoslab {

// splitmix64, used both as a seed scrambler and to key substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** with substream construction: the stream for (seed, stream_id)
// depends only on those two values, so chunked Monte Carlo is reproducible
// for a fixed chunk size regardless of the number of worker threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0) {
        std::uint64_t sm = seed ^ (0xa0761d6478bd642fULL * (stream_id + 1));
        for (auto& w : state_) w = splitmix64(sm);
        have_cached_ = false;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on (0,1), never returns 0 or 1
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; pair cached
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_;
};

} // namespace chaoslab
