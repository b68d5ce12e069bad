#ifndef COGBER_SIMULATOR_HPP
#define COGBER_SIMULATOR_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "cogber/channel_model.hpp"
#include "cogber/qam.hpp"
#include "cogber/rng.hpp"

namespace cogber {

// Link-level Monte-Carlo configuration. The noise density is normalized to 1,
// so the interference cap equals mu and all powers are relative to the noise.
struct SimConfig {
    Topology topology = default_topology();
    double alpha = 3.0;
    double mu = 10.0;   // interference cap over noise density, linear
    int mod_order = 2;  // M = 2^q
    CsiModel csi = EstimatorConfig{};
    int block_length = 100;               // symbols per fading block
    std::int64_t min_bit_errors = 100;    // stopping target at the destination
    std::int64_t max_blocks = 1'000'000;  // hard budget cap
    std::uint64_t seed = 0;
    int streams = 1; // parallel workers; never affects the results
};

// One fading block's channel state for a single hop.
struct HopChannels {
    std::complex<double> h_hat;    // data-channel estimate
    std::complex<double> eps;      // data-channel estimation error
    std::complex<double> h;        // true data channel = h_hat + eps
    std::complex<double> h_hat_tp; // transmitter-to-primary estimate
    std::complex<double> eps_tp;
    std::complex<double> h_tp;
    double power = 0.0; // interference-constrained transmit power mu/|h_hat_tp|^2
};

struct BlockChannels {
    std::vector<HopChannels> hops;
};

struct TrialCounts {
    std::int64_t errors = 0;
    std::int64_t bits = 0;
    std::int64_t exceedances = 0; // blocks x nodes with |h_tp|^2 > |h_hat_tp|^2
    std::int64_t tx_events = 0;
};

struct BerEstimate {
    std::int64_t errors = 0;
    std::int64_t bits = 0;
    std::int64_t blocks = 0;
    double ber = 0.0;
    double std_error = 0.0; // binomial sqrt(p (1-p) / bits)
    double interference_exceedance = 0.0;
    bool budget_exhausted = false; // min_bit_errors not reached within max_blocks
};

// Draws one block of channels for every hop. Estimates and errors are
// independent across hops and links; channels are constant within a block.
BlockChannels sample_block(std::span<const HopParams> hops, double mu,
                           CounterRng& rng);
BlockChannels sample_block(const SimConfig& cfg, CounterRng& rng);

// Transmits tx_bits over hop `hop_index` (1-based) of the block: modulate,
// scale by sqrt(power), apply the true channel, add complex Gaussian noise of
// the given density per symbol, then detect coherently against the estimate.
std::vector<std::uint8_t> run_hop(const BlockChannels& block, std::size_t hop_index,
                                  const Constellation& c,
                                  std::span<const std::uint8_t> tx_bits,
                                  double noise_density, CounterRng& rng);

// One fading block end to end: fresh channels, random source bits, hop-by-hop
// demodulate-and-forward, error count against the source at the destination.
TrialCounts run_chain_trial(const SimConfig& cfg, CounterRng& rng);

// Runs trials over per-block counter streams until min_bit_errors destination
// errors have accumulated or max_blocks is exhausted. The result depends only
// on (seed, config), never on the stream count.
BerEstimate estimate_ber(const SimConfig& cfg);

// Fraction of (block, transmitting node) pairs whose realized interference
// exceeds the cap, i.e. |h_tp|^2 > |h_hat_tp|^2, over max_blocks blocks.
double estimate_interference_probability(const SimConfig& cfg);

} // namespace cogber

#endif
