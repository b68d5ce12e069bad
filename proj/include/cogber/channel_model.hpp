#ifndef COGBER_CHANNEL_MODEL_HPP
#define COGBER_CHANNEL_MODEL_HPP

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace cogber {

// Planar node position in normalized distance units.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point& a, const Point& b);

// Primary receiver plus the secondary chain: chain.front() is the secondary
// source, chain.back() the destination, interior entries are relays.
struct Topology {
    Point primary;
    std::vector<Point> chain;

    std::size_t hop_count() const { return chain.empty() ? 0 : chain.size() - 1; }

    // Throws std::invalid_argument if the chain is shorter than one hop or
    // any transmitter coincides with its receiver or with the primary node.
    void validate() const;

    // Sub-topology using the first (n_hops - 1) relays, keeping source,
    // destination, and primary fixed.
    Topology with_hop_count(std::size_t n_hops) const;
};

// The bundled demo network geometry: a primary receiver overlooking a
// three-hop secondary chain on the unit square.
Topology default_topology();

// Pilot-based LMMSE channel estimator settings. When pilot_power is empty,
// the pilot power is matched to the interference budget of the transmitter's
// primary link: B_training = I_T / eta_tP. An explicit value is interpreted
// relative to the unit noise density.
struct EstimatorConfig {
    int pilot_count = 1;
    std::optional<double> pilot_power;
};

// Forces zero estimation-error variance on every link.
struct PerfectCsi {};

using CsiModel = std::variant<PerfectCsi, EstimatorConfig>;

// Per-hop channel statistics consumed by both the analytic and the simulated
// BER paths. All fields are fixed by construction in build_hop_params.
struct HopParams {
    double eta_tr = 0.0;    // true data-channel variance d_tr^-alpha
    double eta_tp = 0.0;    // transmitter-to-primary variance
    double sigma_tr = 0.0;  // estimation-error variance, data channel
    double sigma_tp = 0.0;  // estimation-error variance, primary channel
    double lambda_tr = 0.0; // 1 / (eta_tr - sigma_tr)
    double lambda_tp = 0.0; // 1 / (eta_tp - sigma_tp)
    double kappa_tr = 0.0;  // lambda_tp / lambda_tr
    double mu = 0.0;        // interference cap over noise density, linear
};

// Rayleigh path-loss variance (distance)^-alpha between two distinct points.
// Throws std::invalid_argument on coincident points or alpha <= 0.
double path_loss_variance(const Point& a, const Point& b, double alpha);

// Residual LMMSE estimation-error variance 1 / (L_p * B * eta / N0 + 1).
double lmmse_error_variance(int pilot_count, double pilot_power, double eta,
                            double noise_density);

// Assembles the statistics of hop `hop_index` (1-based) of the topology.
// Throws std::invalid_argument when the index is out of range and
// std::runtime_error when the estimator is too weak for the model's variance
// decomposition (sigma >= eta on either link).
HopParams build_hop_params(const Topology& topology, std::size_t hop_index,
                           double alpha, double mu, const CsiModel& csi);

// Convenience: parameters of every hop in chain order.
std::vector<HopParams> build_chain_params(const Topology& topology, double alpha,
                                          double mu, const CsiModel& csi);

} // namespace cogber

#endif
