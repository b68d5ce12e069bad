#include "cogber/qam.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cogber {

namespace {

std::uint32_t gray_encode(std::uint32_t n) { return n ^ (n >> 1); }

} // namespace

Constellation build_constellation(int bits_per_symbol) {
    if (bits_per_symbol < 1 || bits_per_symbol > 10) {
        throw std::invalid_argument("build_constellation: bits per symbol must be in [1, 10]");
    }
    const int q = bits_per_symbol;
    const int j_bits = (q + 1) / 2; // in-phase axis carries the larger share
    const int i_bits = q - j_bits;

    Constellation c;
    c.bits_per_symbol = q;
    c.order = 1 << q;
    c.j_levels = 1 << j_bits;
    c.i_levels = 1 << i_bits;

    // Mean energy of the unscaled odd-integer grid is (I^2 + J^2 - 2) / 3.
    const double i_sq = static_cast<double>(c.i_levels) * c.i_levels;
    const double j_sq = static_cast<double>(c.j_levels) * c.j_levels;
    const double scale = std::sqrt(3.0 / (i_sq + j_sq - 2.0));

    c.points.reserve(c.order);
    c.labels.reserve(c.order);
    c.index_of_label.assign(c.order, 0);
    for (int jr = 0; jr < c.j_levels; ++jr) {
        const double re = scale * (2.0 * jr - (c.j_levels - 1));
        for (int ji = 0; ji < c.i_levels; ++ji) {
            const double im = scale * (2.0 * ji - (c.i_levels - 1));
            const std::uint32_t label =
                (gray_encode(static_cast<std::uint32_t>(jr)) << i_bits) |
                gray_encode(static_cast<std::uint32_t>(ji));
            c.index_of_label[label] = static_cast<std::uint32_t>(c.points.size());
            c.points.emplace_back(re, im);
            c.labels.push_back(label);
        }
    }
    return c;
}

std::vector<std::complex<double>> modulate(const Constellation& c,
                                           std::span<const std::uint8_t> bits) {
    const int q = c.bits_per_symbol;
    if (bits.size() % static_cast<std::size_t>(q) != 0) {
        throw std::invalid_argument("modulate: bit count " + std::to_string(bits.size()) +
                                    " is not a multiple of " + std::to_string(q));
    }
    std::vector<std::complex<double>> symbols;
    symbols.reserve(bits.size() / q);
    for (std::size_t pos = 0; pos < bits.size(); pos += q) {
        std::uint32_t label = 0;
        for (int b = 0; b < q; ++b) {
            label = (label << 1) | (bits[pos + b] & 1u);
        }
        symbols.push_back(c.points[c.index_of_label[label]]);
    }
    return symbols;
}

std::vector<std::uint8_t> demodulate(const Constellation& c,
                                     std::span<const std::complex<double>> received,
                                     std::complex<double> channel_estimate,
                                     double amplitude) {
    if (channel_estimate == std::complex<double>(0.0, 0.0)) {
        throw std::invalid_argument("demodulate: zero channel estimate");
    }
    const std::complex<double> gain = channel_estimate * amplitude;
    const int q = c.bits_per_symbol;

    std::vector<std::uint8_t> bits;
    bits.reserve(received.size() * q);
    for (const std::complex<double>& y : received) {
        const std::complex<double> z = y / gain;
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            const double d = std::norm(z - c.points[i]);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        const std::uint32_t label = c.labels[best];
        for (int b = q - 1; b >= 0; --b) {
            bits.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
        }
    }
    return bits;
}

} // namespace cogber
