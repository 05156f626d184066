#include "pnm/random.hpp"

#include <cmath>

namespace pnm {

namespace {
constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t split_salt = 0xd1b54a32d192ed03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) noexcept : key_(seed) {}

std::uint64_t RandomStream::next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * golden_gamma);
}

double RandomStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double low, double high) noexcept {
    return low + (high - low) * uniform();
}

std::uint64_t RandomStream::below(std::uint64_t bound) noexcept {
    // Rejection keeps the result exactly uniform.
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = next_u64();
    while (x >= limit) {
        x = next_u64();
    }
    return x % bound;
}

double RandomStream::normal() noexcept {
    if (spare_normal_) {
        const double z = *spare_normal_;
        spare_normal_.reset();
        return z;
    }
    double x = 0.0;
    double y = 0.0;
    double s = 0.0;
    do {
        x = 2.0 * uniform() - 1.0;
        y = 2.0 * uniform() - 1.0;
        s = x * x + y * y;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = y * scale;
    return x * scale;
}

RandomStream RandomStream::split(std::uint64_t tag) const noexcept {
    return RandomStream(mix64(key_ ^ mix64(tag + split_salt)));
}

RandomStream replication_stream(std::uint64_t master_seed, std::uint64_t n,
                                std::uint64_t rep) noexcept {
    return RandomStream(master_seed).split(n).split(rep);
}

}  // namespace pnm
