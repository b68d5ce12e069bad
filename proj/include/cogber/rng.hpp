#ifndef COGBER_RNG_HPP
#define COGBER_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>

namespace cogber {

// Counter-based PRNG (Philox-2x64, 10 rounds). Each (key, stream) pair owns a
// disjoint 128-bit counter range, so streams never overlap by construction and
// any partitioning of work across threads reproduces the same draws.
class CounterRng {
public:
    CounterRng(std::uint64_t key, std::uint64_t stream)
        : key_(key), stream_(stream) {}

    std::uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        auto [first, second] = philox_block(counter_++);
        spare_ = second;
        have_spare_ = true;
        return first;
    }

    // Uniform on the open interval (0, 1); never returns an endpoint, so
    // Box-Muller below cannot hit log(0) and never yields an exactly zero pair.
    double next_unit_open() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    // Pair of independent standard normal variates (Box-Muller).
    std::pair<double, double> next_gaussian_pair() {
        const double u1 = next_unit_open();
        const double u2 = next_unit_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    // Circularly symmetric complex Gaussian with E{|z|^2} = variance.
    std::complex<double> next_cn(double variance) {
        const auto [a, b] = next_gaussian_pair();
        const double s = std::sqrt(0.5 * variance);
        return {s * a, s * b};
    }

    // Single fair bit, buffered from 64-bit words.
    int next_bit() {
        if (bit_count_ == 0) {
            bit_buffer_ = next_u64();
            bit_count_ = 64;
        }
        const int b = static_cast<int>(bit_buffer_ & 1u);
        bit_buffer_ >>= 1;
        --bit_count_;
        return b;
    }

private:
    static constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
    static constexpr std::uint64_t kKeyBump = 0x9E3779B97F4A7C15ULL;

    static void round(std::uint64_t& x0, std::uint64_t& x1, std::uint64_t k) {
        const unsigned __int128 prod =
            static_cast<unsigned __int128>(kMultiplier) * x0;
        const auto hi = static_cast<std::uint64_t>(prod >> 64);
        const auto lo = static_cast<std::uint64_t>(prod);
        x0 = hi ^ k ^ x1;
        x1 = lo;
    }

    std::pair<std::uint64_t, std::uint64_t> philox_block(std::uint64_t ctr) const {
        std::uint64_t x0 = ctr;
        std::uint64_t x1 = stream_;
        std::uint64_t k = key_;
        for (int i = 0; i < 10; ++i) {
            round(x0, x1, k);
            k += kKeyBump;
        }
        return {x0, x1};
    }

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
    std::uint64_t bit_buffer_ = 0;
    int bit_count_ = 0;
};

} // namespace cogber

#endif
