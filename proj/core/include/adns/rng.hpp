#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace adns {

namespace detail {
// SplitMix64 finalizer; also used to combine keys into stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace detail

enum class StreamPurpose : std::uint64_t {
    noise = 1,
    initial_condition = 2,
    witness = 3,
    scratch = 4,
};

// Deterministic counter-keyed stream. Draw order within a stream matters;
// distinct (master, replica, purpose, step) keys give statistically
// independent streams, so replicas and steps can be processed in any order.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(detail::mix64(seed ^ 0x6a09e667f3bcc909ull)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return detail::mix64(state_);
    }

    // Uniform on (0, 1); never returns 0, so logs are safe.
    double next_unit() { return ((next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // One Box-Muller branch per call. Two uniforms per gaussian keeps the
    // draw count position-independent.
    double next_gaussian() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t state_;
};

inline RngStream make_stream(std::uint64_t master, std::uint64_t replica, StreamPurpose purpose,
                             std::uint64_t step = 0) {
    std::uint64_t key = detail::mix64(master);
    key = detail::mix64(key ^ detail::mix64(replica));
    key = detail::mix64(key ^ detail::mix64(static_cast<std::uint64_t>(purpose)));
    key = detail::mix64(key ^ detail::mix64(step));
    return RngStream(key);
}

// Stable derived seed for auxiliary generators (initial fields, witnesses).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    return detail::mix64(detail::mix64(master) ^ detail::mix64(salt));
}

}  // namespace adns
