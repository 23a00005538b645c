#ifndef ECSDBN_RNG_HPP
#define ECSDBN_RNG_HPP

#include <cmath>
#include <cstdint>

#include "ecsdbn/errors.hpp"

namespace ecsdbn {

namespace detail {

// SplitMix64 finalizer (Stafford variant 13). Good avalanche, cheap.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Splittable counter-style generator. A stream is identified by
/// (seed, stream_id); equal identifiers replay the exact same sequence,
/// distinct stream_ids walk statistically independent sequences. Streams
/// derived for sub-tasks (per layer, per generation, per individual) make
/// whole training runs reproducible regardless of evaluation order.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id) {
        // State and increment both depend on the stream identity; the
        // increment is forced odd so every stream has full period.
        state_ = detail::mix64(seed ^ detail::mix64(stream_id + 0x9e3779b97f4a7c15ULL));
        gamma_ = detail::mix64(stream_id ^ detail::mix64(seed)) | 1ULL;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Child stream addressed by (seed, hash(stream_id, child)).
    RngStream derive(std::uint64_t child) const {
        return RngStream(seed_, detail::mix64(stream_id_ * 0x9e3779b97f4a7c15ULL + child + 1));
    }

    std::uint64_t next_u64() {
        state_ += gamma_;
        return detail::mix64(state_);
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(n)) % n;
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
    std::uint64_t gamma_;
};

/// Uniform draw in [lo, hi).
inline double sample_uniform(RngStream& rng, double lo, double hi) {
    if (!(lo < hi))
        throw ParamError("sample_uniform: lo must be < hi");
    return lo + rng.next_double() * (hi - lo);
}

/// One draw from N(mean, stddev^2), Box-Muller without spare caching.
inline double sample_normal(RngStream& rng, double mean, double stddev) {
    if (!(stddev > 0.0))
        throw ParamError("sample_normal: stddev must be > 0");
    double u1 = rng.next_double();
    double u2 = rng.next_double();
    if (u1 <= 0.0)
        u1 = 0x1.0p-53; // log(0) guard
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
}

/// Cauchy quantile transform: location + scale*tan(pi*(u-1/2)).
inline double cauchy_from_uniform(double u, double location, double scale) {
    return location + scale * std::tan(3.1415926535897932384626433832795 * (u - 0.5));
}

/// One draw from Cauchy(location, scale).
inline double sample_cauchy(RngStream& rng, double location, double scale) {
    if (!(scale > 0.0))
        throw ParamError("sample_cauchy: scale must be > 0");
    return cauchy_from_uniform(rng.next_double(), location, scale);
}

} // namespace ecsdbn

#endif
