#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "cogber/analytic_ber.hpp"
#include "cogber/qam.hpp"
#include "cogber/rng.hpp"
#include "cogber/special_math.hpp"

using namespace cogber;

namespace {

int hamming(std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a ^ b);
}

std::vector<std::uint8_t> random_bits(std::size_t n, CounterRng& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(rng.next_bit());
    }
    return bits;
}

// Measured AWGN BER at symbol SNR gamma with a fixed unit channel.
double awgn_ber(const Constellation& c, double gamma, std::size_t n_symbols,
                std::uint64_t seed) {
    CounterRng rng(seed, 7777);
    const double amp = std::sqrt(gamma);
    std::size_t errors = 0;
    std::vector<std::uint8_t> tx;
    std::vector<std::complex<double>> sym;
    const std::size_t batch = 4096;
    for (std::size_t done = 0; done < n_symbols; done += batch) {
        const std::size_t n = std::min(batch, n_symbols - done);
        tx = random_bits(n * c.bits_per_symbol, rng);
        sym = modulate(c, tx);
        for (auto& x : sym) {
            x = amp * x + rng.next_cn(1.0);
        }
        const auto rx = demodulate(c, sym, {1.0, 0.0}, amp);
        for (std::size_t i = 0; i < tx.size(); ++i) {
            errors += tx[i] != rx[i];
        }
    }
    return static_cast<double>(errors) /
           static_cast<double>(n_symbols * c.bits_per_symbol);
}

// Grid spacing of the energy-normalized constellation.
double min_spacing(const Constellation& c) {
    const double i_sq = static_cast<double>(c.i_levels) * c.i_levels;
    const double j_sq = static_cast<double>(c.j_levels) * c.j_levels;
    return 2.0 * std::sqrt(3.0 / (i_sq + j_sq - 2.0));
}

// Analytic AWGN BER from the fixed-SNR weight sum.
double awgn_ber_analytic(int order, double gamma) {
    const ModParams m = make_mod_params(order);
    if (m.bits_per_symbol % 2 == 0) {
        return 2.0 * psi_awgn(m.j_dim, m.g, order, gamma);
    }
    return psi_awgn(m.i_dim, m.u, order, gamma) +
           psi_awgn(m.j_dim, m.u, order, gamma);
}

} // namespace

TEST_SUITE("qam") {

TEST_CASE("bpsk layout") {
    const Constellation c = build_constellation(1);
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[0] == std::complex<double>(-1.0, 0.0));
    CHECK(c.points[1] == std::complex<double>(1.0, 0.0));
    CHECK(((c.labels[0] == 0 && c.labels[1] == 1) ||
           (c.labels[0] == 1 && c.labels[1] == 0)));
}

TEST_CASE("qpsk normalization") {
    const Constellation c = build_constellation(2);
    REQUIRE(c.points.size() == 4);
    for (const auto& p : c.points) {
        CHECK(std::abs(std::abs(p.real()) - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(std::abs(p.imag()) - 1.0 / std::sqrt(2.0)) < 1e-15);
    }
}

TEST_CASE("rectangular 8qam grid") {
    const Constellation c = build_constellation(3);
    CHECK(c.i_levels == 2);
    CHECK(c.j_levels == 4);
    double energy = 0.0;
    for (const auto& p : c.points) {
        energy += std::norm(p);
    }
    CHECK(std::abs(energy / 8.0 - 1.0) < 1e-12);
}

TEST_CASE("unit energy and label bijection for all supported sizes") {
    for (int q = 1; q <= 10; ++q) {
        const Constellation c = build_constellation(q);
        REQUIRE(static_cast<int>(c.points.size()) == (1 << q));

        double energy = 0.0;
        std::vector<bool> seen(c.points.size(), false);
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            energy += std::norm(c.points[i]);
            REQUIRE(c.labels[i] < c.points.size());
            CHECK(!seen[c.labels[i]]);
            seen[c.labels[i]] = true;
            CHECK(c.index_of_label[c.labels[i]] == i);
        }
        CHECK(std::abs(energy / static_cast<double>(c.points.size()) - 1.0) <
              1e-12);
    }
    CHECK_THROWS_AS(build_constellation(0), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(11), std::invalid_argument);
}

TEST_CASE("gray property for axis-adjacent points") {
    for (int q = 1; q <= 8; ++q) {
        const Constellation c = build_constellation(q);
        for (std::size_t a = 0; a < c.points.size(); ++a) {
            for (std::size_t b = a + 1; b < c.points.size(); ++b) {
                const auto d = c.points[a] - c.points[b];
                const bool adjacent =
                    (std::abs(d.real()) < 1e-12 &&
                     std::abs(std::abs(d.imag()) - min_spacing(c)) < 1e-9) ||
                    (std::abs(d.imag()) < 1e-12 &&
                     std::abs(std::abs(d.real()) - min_spacing(c)) < 1e-9);
                if (adjacent) {
                    CHECK(hamming(c.labels[a], c.labels[b]) == 1);
                }
            }
        }
    }
}

TEST_CASE("modulate basics") {
    const Constellation c = build_constellation(2);
    CHECK(modulate(c, {}).empty());

    // A label round-trips through its point.
    const std::vector<std::uint8_t> bits{1, 0};
    const auto sym = modulate(c, bits);
    REQUIRE(sym.size() == 1);
    CHECK(sym[0] == c.points[c.index_of_label[2]]);

    const std::vector<std::uint8_t> odd{1};
    CHECK_THROWS_AS(modulate(c, odd), std::invalid_argument);
}

TEST_CASE("noiseless round trip") {
    CounterRng rng(2024, 0);
    for (int q : {1, 2, 3, 4}) {
        const Constellation c = build_constellation(q);
        for (int trial = 0; trial < 2500; ++trial) {
            const auto bits = random_bits(static_cast<std::size_t>(q) * 8, rng);
            const auto sym = modulate(c, bits);
            const auto back = demodulate(c, sym, {1.0, 0.0}, 1.0);
            REQUIRE(back == bits);
        }
    }
    // Larger constellations: every point exactly once.
    for (int q = 5; q <= 10; ++q) {
        const Constellation c = build_constellation(q);
        std::vector<std::uint8_t> bits;
        for (std::uint32_t label = 0; label < c.points.size(); ++label) {
            for (int b = q - 1; b >= 0; --b) {
                bits.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
            }
        }
        const auto sym = modulate(c, bits);
        const auto back = demodulate(c, sym, {1.0, 0.0}, 1.0);
        CHECK(back == bits);
    }
}

TEST_CASE("round trip survives channel rotation and scaling") {
    CounterRng rng(77, 0);
    const Constellation c = build_constellation(4);
    const std::complex<double> h{0.3, -1.2};
    const double amp = 2.7;
    const auto bits = random_bits(4 * 64, rng);
    auto sym = modulate(c, bits);
    for (auto& x : sym) {
        x *= h * amp;
    }
    CHECK(demodulate(c, sym, h, amp) == bits);
}

TEST_CASE("demodulation tie break and zero estimate") {
    const Constellation c = build_constellation(1);
    // Exactly between -1 and +1: the lower point index wins.
    const std::vector<std::complex<double>> mid{{0.0, 0.0}};
    const auto bits = demodulate(c, mid, {1.0, 0.0}, 1.0);
    REQUIRE(bits.size() == 1);
    CHECK(bits[0] == (c.labels[0] & 1u));

    CHECK_THROWS_AS(demodulate(c, mid, {0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("awgn ber matches the analytic weight sum") {
    // 4 sigma acceptance bands around the analytic value.
    struct Case {
        int order;
        double gamma;
        std::size_t symbols;
    };
    const Case cases[] = {
        {2, 4.0, 400000},
        {4, 4.0, 400000},
        {8, 10.0, 400000},
        {16, 14.0, 400000},
    };
    for (const Case& k : cases) {
        const Constellation c =
            build_constellation(make_mod_params(k.order).bits_per_symbol);
        const double sim = awgn_ber(c, k.gamma, k.symbols, 913 + k.order);
        const double ana = awgn_ber_analytic(k.order, k.gamma);
        const std::size_t bits = k.symbols * c.bits_per_symbol;
        const double sigma = std::sqrt(ana * (1.0 - ana) / bits);
        INFO("M = " << k.order << " sim = " << sim << " analytic = " << ana);
        CHECK(std::abs(sim - ana) < 4.0 * sigma + 1e-12);
    }
}

} // TEST_SUITE
