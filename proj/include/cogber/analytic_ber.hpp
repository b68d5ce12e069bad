#ifndef COGBER_ANALYTIC_BER_HPP
#define COGBER_ANALYTIC_BER_HPP

#include <span>

#include "cogber/channel_model.hpp"

namespace cogber {

// Modulation constants of the Gray-mapped QAM BER expressions.
// For even q the grid is square and u coincides with g; for odd q the grid is
// i_dim x j_dim rectangular.
struct ModParams {
    int order = 0;           // M = 2^q
    int bits_per_symbol = 0; // q
    double g = 0.0;          // 3 / (M - 1)
    double u = 0.0;          // 6 / (I^2 + J^2 - 2)
    int i_dim = 0;           // 2^((q-1)/2) for odd q, sqrt(M) for even q
    int j_dim = 0;           // 2^((q+1)/2) for odd q, sqrt(M) for even q
};

// Throws std::invalid_argument unless order is a power of two >= 2.
ModParams make_mod_params(int order);

// Fixed-SNR Gray-QAM bit-error weight sum psi(s, v, M; gamma): a double sum of
// signed, weighted Gaussian tail terms Q(sqrt((2i+1)^2 v gamma)). Terms are
// accumulated with compensated summation in increasing i within increasing k.
// Throws std::invalid_argument if s is not a power of two.
double psi_awgn(int s, double v, int order, double gamma);

// The same double sum with every Q-term replaced by its average over the
// effective-SNR density: kappa*mu*exp(lambda_tp*mu*sigma_tr) *
// zeta((2i+1)^2 v, kappa*mu).
double theta(int s, double v, const HopParams& hop, int order);

// Closed-form average BER of one hop: theta(I,u) + theta(J,u) for odd q,
// 2*theta(sqrt(M), g) for even q. The value is reported unclamped; callers
// combining hops must clamp anything above 1/2 (see end_to_end_ber).
double hop_ber(const HopParams& hop, const ModParams& mod);

// Independent oracle: adaptive quadrature of the per-hop BER integral
// against the effective-SNR density, with a Chernoff-bounded truncation point
// as in zeta_quadrature.
double hop_ber_quadrature(const HopParams& hop, const ModParams& mod,
                          double rel_tol = 1e-9);

// Bit error rate after a chain of demodulate-and-forward hops:
// sum_n R(n) * prod_{j>n} (1 - 2 R(j)). Every input must lie in [0, 1/2];
// otherwise throws std::domain_error.
double end_to_end_ber(std::span<const double> hop_bers);

} // namespace cogber

#endif
