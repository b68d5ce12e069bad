#ifndef COGBER_QAM_HPP
#define COGBER_QAM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace cogber {

// Gray-mapped QAM constellation with unit average symbol energy. Even bit
// counts give a square grid, odd counts an I x J rectangular grid whose wider
// axis is the in-phase one. Points sit on odd-integer coordinates scaled by a
// single energy-normalizing factor.
struct Constellation {
    int order = 0;           // M = 2^q
    int bits_per_symbol = 0; // q
    int i_levels = 0;        // quadrature-axis levels (the narrow axis)
    int j_levels = 0;        // in-phase-axis levels (the wide axis)
    std::vector<std::complex<double>> points;
    std::vector<std::uint32_t> labels;         // labels[i] = q-bit label of points[i]
    std::vector<std::uint32_t> index_of_label; // inverse of labels
};

// Builds the constellation for q bits per symbol, 1 <= q <= 10.
Constellation build_constellation(int bits_per_symbol);

// Maps bits (values 0/1, length divisible by q, first bit of each group is
// the label's most significant bit) onto constellation points.
std::vector<std::complex<double>> modulate(const Constellation& c,
                                           std::span<const std::uint8_t> bits);

// Coherent minimum-distance detection: each sample is divided by
// (channel_estimate * amplitude) and sliced to the nearest constellation
// point; exact ties go to the lower point index. Throws std::invalid_argument
// on a zero channel estimate.
std::vector<std::uint8_t> demodulate(const Constellation& c,
                                     std::span<const std::complex<double>> received,
                                     std::complex<double> channel_estimate,
                                     double amplitude);

} // namespace cogber

#endif
