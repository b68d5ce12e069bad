#include "cogber/analytic_ber.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogber/quadrature.hpp"
#include "cogber/special_math.hpp"

namespace cogber {

namespace {

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

int log2_int(int n) {
    int l = 0;
    while ((1 << (l + 1)) <= n) {
        ++l;
    }
    return l;
}

// Kahan accumulator; the double sums alternate in sign.
struct Compensated {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Walks the (k, i) terms of the Gray-QAM weight sum, calling
// visit(sign, weight, (2i+1)^2 * v) in deterministic order.
template <typename Visitor>
void for_each_term(int s, double v, Visitor&& visit) {
    const int log2_s = log2_int(s);
    for (int k = 1; k <= log2_s; ++k) {
        const std::int64_t two_km1 = std::int64_t{1} << (k - 1);
        const std::int64_t upper = ((std::int64_t{s} << k) - s) / (std::int64_t{1} << k) - 1;
        for (std::int64_t i = 0; i <= upper; ++i) {
            const std::int64_t flip = (i * two_km1) / s;
            const double sign = (flip % 2 == 0) ? 1.0 : -1.0;
            const std::int64_t weight = two_km1 - (2 * i * two_km1 + s) / (2 * s);
            const double factor = static_cast<double>(2 * i + 1);
            visit(sign, static_cast<double>(weight), factor * factor * v);
        }
    }
}

void check_psi_args(int s, double v, int order, const char* where) {
    if (!is_power_of_two(s)) {
        throw std::invalid_argument(std::string(where) + ": s = " + std::to_string(s) +
                                    " is not a power of two");
    }
    if (!is_power_of_two(order) || order < 2) {
        throw std::invalid_argument(std::string(where) +
                                    ": modulation order must be a power of two >= 2");
    }
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(where) + ": v must be positive");
    }
}

void check_hop(const HopParams& hop, const char* where) {
    if (!(hop.kappa_tr > 0.0) || !(hop.mu > 0.0) || !(hop.lambda_tp > 0.0) ||
        !(hop.sigma_tr >= 0.0)) {
        throw std::invalid_argument(std::string(where) + ": invalid hop parameters");
    }
}

} // namespace

ModParams make_mod_params(int order) {
    if (!is_power_of_two(order) || order < 2) {
        throw std::invalid_argument("make_mod_params: order must be a power of two >= 2");
    }
    ModParams m;
    m.order = order;
    m.bits_per_symbol = log2_int(order);
    const int q = m.bits_per_symbol;
    if (q % 2 == 0) {
        m.i_dim = m.j_dim = 1 << (q / 2);
    } else {
        m.i_dim = 1 << ((q - 1) / 2);
        m.j_dim = 1 << ((q + 1) / 2);
    }
    m.g = 3.0 / (order - 1);
    const double i_sq = static_cast<double>(m.i_dim) * m.i_dim;
    const double j_sq = static_cast<double>(m.j_dim) * m.j_dim;
    m.u = 6.0 / (i_sq + j_sq - 2.0);
    return m;
}

double psi_awgn(int s, double v, int order, double gamma) {
    check_psi_args(s, v, order, "psi_awgn");
    if (!(gamma >= 0.0)) {
        throw std::invalid_argument("psi_awgn: gamma must be >= 0");
    }
    Compensated acc;
    for_each_term(s, v, [&](double sign, double weight, double beta) {
        acc.add(sign * weight * q_function(std::sqrt(beta * gamma)));
    });
    const double prefactor = 2.0 / (static_cast<double>(s) * log2_int(order));
    return prefactor * acc.sum;
}

double theta(int s, double v, const HopParams& hop, int order) {
    check_psi_args(s, v, order, "theta");
    check_hop(hop, "theta");
    const double km = hop.kappa_tr * hop.mu;
    Compensated acc;
    for_each_term(s, v, [&](double sign, double weight, double beta) {
        acc.add(sign * weight * zeta_closed({beta, km}));
    });
    const double prefactor = 2.0 / (static_cast<double>(s) * log2_int(order));
    const double density_scale =
        km * std::exp(hop.lambda_tp * hop.mu * hop.sigma_tr);
    return prefactor * density_scale * acc.sum;
}

double hop_ber(const HopParams& hop, const ModParams& mod) {
    check_hop(hop, "hop_ber");
    if (mod.bits_per_symbol % 2 == 0) {
        return 2.0 * theta(mod.j_dim, mod.g, hop, mod.order);
    }
    // For M = 2 the i_dim sum is empty and contributes zero.
    return theta(mod.i_dim, mod.u, hop, mod.order) +
           theta(mod.j_dim, mod.u, hop, mod.order);
}

double hop_ber_quadrature(const HopParams& hop, const ModParams& mod,
                          double rel_tol) {
    check_hop(hop, "hop_ber_quadrature");
    const int q = mod.bits_per_symbol;
    const double v = (q % 2 == 0) ? mod.g : mod.u;
    const double km = hop.kappa_tr * hop.mu;
    const double density_scale =
        km * std::exp(hop.lambda_tp * hop.mu * hop.sigma_tr);

    const auto weight_sum = [&](double gamma) {
        if (q % 2 == 0) {
            return 2.0 * psi_awgn(mod.j_dim, mod.g, mod.order, gamma);
        }
        double w = psi_awgn(mod.j_dim, mod.u, mod.order, gamma);
        if (mod.i_dim >= 2) {
            w += psi_awgn(mod.i_dim, mod.u, mod.order, gamma);
        }
        return w;
    };
    const auto integrand = [&](double gamma) {
        const double d = gamma + km;
        return weight_sum(gamma) * density_scale / (d * d);
    };

    // Sum of absolute term weights, for the Chernoff tail bound
    // |weight_sum(gamma)| <= C * exp(-v * gamma / 2).
    double abs_weights = 0.0;
    const auto tally = [&](int s) {
        double w = 0.0;
        for_each_term(s, v, [&](double, double weight, double) { w += weight; });
        abs_weights += (2.0 / (static_cast<double>(s) * q)) * 0.5 * w;
    };
    if (q % 2 == 0) {
        tally(mod.j_dim);
        abs_weights *= 2.0;
    } else {
        tally(mod.j_dim);
        if (mod.i_dim >= 2) {
            tally(mod.i_dim);
        }
    }

    // Integrate on [0, T], doubling T until the bounded tail is negligible
    // next to what has been accumulated.
    double t_max = std::max(km, 8.0 / v);
    std::vector<double> breakpoints;
    const double scale = std::min(km, 1.0 / v);
    breakpoints.push_back(0.0);
    for (double b = scale / 8.0; b < t_max; b *= 2.0) {
        breakpoints.push_back(b);
    }
    breakpoints.push_back(t_max);
    double value = integrate_adaptive(integrand, breakpoints, rel_tol).value;

    for (int round = 0; round < 200; ++round) {
        const double tail_bound = abs_weights * density_scale *
                                  std::exp(-0.5 * v * t_max) / (t_max + km);
        if (tail_bound <= 1e-12 * value) {
            break;
        }
        value += integrate_adaptive(integrand, t_max, 2.0 * t_max, rel_tol).value;
        t_max *= 2.0;
    }
    return value;
}

double end_to_end_ber(std::span<const double> hop_bers) {
    if (hop_bers.empty()) {
        throw std::domain_error("end_to_end_ber: empty hop list");
    }
    for (double p : hop_bers) {
        if (!(p >= 0.0 && p <= 0.5)) {
            throw std::domain_error("end_to_end_ber: hop BER " + std::to_string(p) +
                                    " outside [0, 0.5]");
        }
    }
    double acc = 0.0;
    for (double p : hop_bers) {
        acc = acc * (1.0 - 2.0 * p) + p;
    }
    return acc;
}

} // namespace cogber
