#include "cogber/channel_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cogber {

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void Topology::validate() const {
    if (chain.size() < 2) {
        throw std::invalid_argument("Topology: chain needs at least two nodes");
    }
    for (const Point& p : chain) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("Topology: non-finite chain coordinate");
        }
    }
    if (!std::isfinite(primary.x) || !std::isfinite(primary.y)) {
        throw std::invalid_argument("Topology: non-finite primary coordinate");
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (distance(chain[i], chain[i + 1]) <= 0.0) {
            throw std::invalid_argument("Topology: hop " + std::to_string(i + 1) +
                                        " has coincident endpoints");
        }
    }
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (distance(chain[i], primary) <= 0.0) {
            throw std::invalid_argument("Topology: chain node " + std::to_string(i) +
                                        " coincides with the primary node");
        }
    }
}

Topology Topology::with_hop_count(std::size_t n_hops) const {
    if (n_hops < 1 || n_hops > hop_count()) {
        throw std::invalid_argument("Topology: hop count " + std::to_string(n_hops) +
                                    " not supported by this chain");
    }
    Topology sub;
    sub.primary = primary;
    sub.chain.push_back(chain.front());
    for (std::size_t i = 1; i < n_hops; ++i) {
        sub.chain.push_back(chain[i]);
    }
    sub.chain.push_back(chain.back());
    return sub;
}

Topology default_topology() {
    Topology t;
    t.primary = {0.7, 0.5};
    t.chain = {{0.0, 0.0}, {0.6, 0.2}, {0.8, 0.3}, {1.0, 0.0}};
    return t;
}

double path_loss_variance(const Point& a, const Point& b, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("path_loss_variance: alpha must be positive");
    }
    const double d = distance(a, b);
    if (!(d > 0.0)) {
        throw std::invalid_argument("path_loss_variance: coincident points");
    }
    return std::pow(d, -alpha);
}

double lmmse_error_variance(int pilot_count, double pilot_power, double eta,
                            double noise_density) {
    if (pilot_count < 1 || !(pilot_power > 0.0) || !(eta > 0.0) ||
        !(noise_density > 0.0)) {
        throw std::invalid_argument("lmmse_error_variance: all inputs must be positive");
    }
    const double training_snr = pilot_power * eta / noise_density;
    return 1.0 / (static_cast<double>(pilot_count) * training_snr + 1.0);
}

HopParams build_hop_params(const Topology& topology, std::size_t hop_index,
                           double alpha, double mu, const CsiModel& csi) {
    topology.validate();
    if (hop_index < 1 || hop_index > topology.hop_count()) {
        throw std::invalid_argument("build_hop_params: hop index " +
                                    std::to_string(hop_index) + " out of range");
    }
    if (!(mu > 0.0)) {
        throw std::invalid_argument("build_hop_params: mu must be positive");
    }

    const Point& tx = topology.chain[hop_index - 1];
    const Point& rx = topology.chain[hop_index];

    HopParams hop;
    hop.eta_tr = path_loss_variance(tx, rx, alpha);
    hop.eta_tp = path_loss_variance(tx, topology.primary, alpha);
    hop.mu = mu;

    if (const auto* est = std::get_if<EstimatorConfig>(&csi)) {
        // Noise density is normalized to one, so the interference-matched
        // pilot power I_T / eta_tP becomes mu / eta_tP.
        const double pilot_power =
            est->pilot_power ? *est->pilot_power : mu / hop.eta_tp;
        hop.sigma_tr = lmmse_error_variance(est->pilot_count, pilot_power,
                                            hop.eta_tr, 1.0);
        hop.sigma_tp = lmmse_error_variance(est->pilot_count, pilot_power,
                                            hop.eta_tp, 1.0);
    }

    if (hop.sigma_tr >= hop.eta_tr || hop.sigma_tp >= hop.eta_tp) {
        throw std::runtime_error(
            "build_hop_params: estimator too weak on hop " +
            std::to_string(hop_index) +
            " (estimation-error variance reaches the channel variance)");
    }

    hop.lambda_tr = 1.0 / (hop.eta_tr - hop.sigma_tr);
    hop.lambda_tp = 1.0 / (hop.eta_tp - hop.sigma_tp);
    hop.kappa_tr = hop.lambda_tp / hop.lambda_tr;
    return hop;
}

std::vector<HopParams> build_chain_params(const Topology& topology, double alpha,
                                          double mu, const CsiModel& csi) {
    std::vector<HopParams> hops;
    hops.reserve(topology.hop_count());
    for (std::size_t i = 1; i <= topology.hop_count(); ++i) {
        hops.push_back(build_hop_params(topology, i, alpha, mu, csi));
    }
    return hops;
}

} // namespace cogber
