#pragma once

#include <cstdint>
#include <limits>
#include <optional>

namespace pnm {

/// Counter-based random stream.
///
/// Output k is a fixed bijective mix of `key + (k + 1) * golden_gamma` (the
/// SplitMix64 finalizer), so a stream is fully described by (key, counter) and
/// produces the same sequence on every platform. Child streams are derived by
/// hashing a tag into the key, never by sharing state.
///
/// Normal variates use the Marsaglia polar method on top of the uniform
/// sequence; only `std::log` and `std::sqrt` are involved.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next_u64(); }

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Uniform on [low, high).
    double uniform(double low, double high) noexcept;

    /// Uniform integer on [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

    double normal() noexcept;

    /// Independent stream keyed by (this key, tag); does not advance this stream.
    [[nodiscard]] RandomStream split(std::uint64_t tag) const noexcept;

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
    [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_normal_;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream for one Monte Carlo replication, derived from (master seed, n, rep).
[[nodiscard]] RandomStream replication_stream(std::uint64_t master_seed, std::uint64_t n,
                                              std::uint64_t rep) noexcept;

}  // namespace pnm
