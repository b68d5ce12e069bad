#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "cogber/analytic_ber.hpp"
#include "cogber/channel_model.hpp"
#include "cogber/special_math.hpp"

using namespace cogber;

namespace {

double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

HopParams demo_hop(std::size_t index, double mu, int pilots) {
    const CsiModel csi = pilots == 0 ? CsiModel(PerfectCsi{})
                                     : CsiModel(EstimatorConfig{pilots, {}});
    return build_hop_params(default_topology().with_hop_count(2), index, 3.0, mu,
                            csi);
}

// Hand-constructed parameters with independent (sigma, mu) knobs.
HopParams synthetic_hop(double eta_tr, double eta_tp, double sigma_tr,
                        double sigma_tp, double mu) {
    HopParams h;
    h.eta_tr = eta_tr;
    h.eta_tp = eta_tp;
    h.sigma_tr = sigma_tr;
    h.sigma_tp = sigma_tp;
    h.lambda_tr = 1.0 / (eta_tr - sigma_tr);
    h.lambda_tp = 1.0 / (eta_tp - sigma_tp);
    h.kappa_tr = h.lambda_tp / h.lambda_tr;
    h.mu = mu;
    return h;
}

} // namespace

TEST_SUITE("analytic_ber") {

TEST_CASE("mod params") {
    const ModParams m2 = make_mod_params(2);
    CHECK(m2.bits_per_symbol == 1);
    CHECK(m2.i_dim == 1);
    CHECK(m2.j_dim == 2);
    CHECK(m2.u == 2.0);

    const ModParams m4 = make_mod_params(4);
    CHECK(m4.bits_per_symbol == 2);
    CHECK(m4.g == 1.0);
    CHECK(m4.u == 1.0); // square grids make u coincide with g

    const ModParams m8 = make_mod_params(8);
    CHECK(m8.i_dim == 2);
    CHECK(m8.j_dim == 4);
    CHECK(rel_err(m8.u, 1.0 / 3.0) < 1e-15);

    const ModParams m16 = make_mod_params(16);
    CHECK(m16.g == 3.0 / 15.0);

    CHECK_THROWS_AS(make_mod_params(3), std::invalid_argument);
    CHECK_THROWS_AS(make_mod_params(1), std::invalid_argument);
    CHECK_THROWS_AS(make_mod_params(0), std::invalid_argument);
}

TEST_CASE("psi known reductions") {
    // 4-QAM collapses to a single Q term: 2 psi(2,1,4;gamma) = Q(sqrt(gamma)).
    for (double gamma : {0.0, 0.4, 4.0, 25.0}) {
        CHECK(rel_err(2.0 * psi_awgn(2, 1.0, 4, gamma),
                      q_function(std::sqrt(gamma))) < 1e-14);
    }
    CHECK(2.0 * psi_awgn(2, 1.0, 4, 4.0) == q_function(2.0));
    CHECK(2.0 * psi_awgn(2, 1.0, 4, 0.0) == 0.5);

    // 2-QAM: the s = 1 sum is empty, the s = 2 sum is Q(sqrt(2 gamma)).
    CHECK(psi_awgn(1, 2.0, 2, 3.3) == 0.0);
    CHECK(rel_err(psi_awgn(2, 2.0, 2, 3.3), q_function(std::sqrt(6.6))) < 1e-14);

    // 16-QAM at gamma = 0 gives half: each axis bit is a coin flip.
    CHECK(std::abs(2.0 * psi_awgn(4, 0.2, 16, 0.0) - 0.5) < 1e-14);

    CHECK_THROWS_AS(psi_awgn(3, 1.0, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(psi_awgn(2, 1.0, 4, -1.0), std::invalid_argument);
}

TEST_CASE("theta reductions") {
    const HopParams hop = demo_hop(1, 10.0, 0);
    const double km = hop.kappa_tr * hop.mu;

    // Single-term 2-QAM case with sigma = 0.
    CHECK(rel_err(theta(2, 2.0, hop, 2), km * zeta_closed({2.0, km})) < 1e-14);
    CHECK(theta(1, 2.0, hop, 2) == 0.0);

    // With sigma > 0 the density scale factor appears.
    const HopParams est = demo_hop(1, 10.0, 1);
    const double km_e = est.kappa_tr * est.mu;
    const double expected = km_e *
                            std::exp(est.lambda_tp * est.mu * est.sigma_tr) *
                            zeta_closed({2.0, km_e});
    CHECK(rel_err(theta(2, 2.0, est, 2), expected) < 1e-14);
}

TEST_CASE("hop ber closed form vs quadrature") {
    for (int order : {2, 4, 8, 16}) {
        const ModParams mod = make_mod_params(order);
        for (double mu : {1.0, 10.0, 100.0}) {
            for (std::size_t hop_index : {std::size_t{1}, std::size_t{2}}) {
                for (int pilots : {0, 1, 4}) {
                    const HopParams hop = demo_hop(hop_index, mu, pilots);
                    const double closed = hop_ber(hop, mod);
                    const double quad = hop_ber_quadrature(hop, mod);
                    INFO("M = " << order << " mu = " << mu << " hop = "
                                << hop_index << " pilots = " << pilots);
                    CHECK(rel_err(closed, quad) <= 1e-7);
                }
            }
        }
    }
}

TEST_CASE("hop ber bpsk equals the single zeta term") {
    const ModParams mod = make_mod_params(2);
    const HopParams est = demo_hop(2, 10.0, 1);
    const double km = est.kappa_tr * est.mu;
    const double expected = km *
                            std::exp(est.lambda_tp * est.mu * est.sigma_tr) *
                            zeta_closed({2.0, km});
    CHECK(rel_err(hop_ber(est, mod), expected) < 1e-14);

    // Quadrature route with sigma = 0 equals kappa mu * zeta_quadrature.
    const HopParams perfect = demo_hop(2, 10.0, 0);
    const double km_p = perfect.kappa_tr * perfect.mu;
    CHECK(rel_err(hop_ber_quadrature(perfect, mod),
                  km_p * zeta_quadrature({2.0, km_p})) < 1e-8);
}

TEST_CASE("hop ber monotone in mu and in sigma") {
    const ModParams mod2 = make_mod_params(2);
    const ModParams mod4 = make_mod_params(4);

    // mu sweep with the pilot-based estimator (sigma shrinks as mu grows,
    // which is the regime where the unnormalized density stays meaningful).
    double prev2 = 1.0;
    double prev4 = 1.0;
    for (double mu_db = 0.0; mu_db <= 40.0; mu_db += 2.0) {
        const double mu = std::pow(10.0, mu_db / 10.0);
        const HopParams h = demo_hop(1, mu, 1);
        const double b2 = hop_ber(h, mod2);
        const double b4 = hop_ber(h, mod4);
        CHECK(b2 < prev2);
        CHECK(b4 < prev4);
        CHECK(b4 >= b2); // denser constellation at equal symbol energy
        prev2 = b2;
        prev4 = b4;
    }

    // Perfect-CSI mu sweep decays towards zero.
    double prev = 1.0;
    for (double mu_db = 0.0; mu_db <= 40.0; mu_db += 5.0) {
        const HopParams h = demo_hop(1, std::pow(10.0, mu_db / 10.0), 0);
        const double b = hop_ber(h, mod2);
        CHECK(b < prev);
        prev = b;
    }
    CHECK(prev < 1e-4);

    // sigma sweep at fixed mu, within the small-sigma regime.
    prev = 0.0;
    for (double sigma : {0.0, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1}) {
        const HopParams h = synthetic_hop(3.95, 1.57, sigma, 0.0, 10.0);
        const double b = hop_ber(h, mod2);
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("perfect csi lower-bounds imperfect csi") {
    const ModParams mod = make_mod_params(4);
    for (double mu_db = 0.0; mu_db <= 30.0; mu_db += 3.0) {
        const double mu = std::pow(10.0, mu_db / 10.0);
        for (std::size_t hop_index : {std::size_t{1}, std::size_t{2}}) {
            const double perfect = hop_ber(demo_hop(hop_index, mu, 0), mod);
            const double with_est = hop_ber(demo_hop(hop_index, mu, 1), mod);
            CHECK(perfect < with_est);
        }
    }
}

TEST_CASE("end-to-end chain values against an independent high-precision pipeline") {
    // Whole-chain references computed with 30-digit arithmetic outside this
    // code base.
    const Topology topo = default_topology();

    const auto chain_ber = [&](int n_hops, int order, double mu, int pilots) {
        const CsiModel csi = pilots == 0
                                 ? CsiModel(PerfectCsi{})
                                 : CsiModel(EstimatorConfig{pilots, {}});
        const ModParams mod = make_mod_params(order);
        std::vector<double> per_hop;
        for (const HopParams& hp : build_chain_params(
                 topo.with_hop_count(static_cast<std::size_t>(n_hops)), 3.0, mu,
                 csi)) {
            per_hop.push_back(hop_ber(hp, mod));
        }
        return end_to_end_ber(per_hop);
    };

    CHECK(rel_err(chain_ber(2, 2, 10.0, 0), 0.060485827171467705) < 1e-13);
    CHECK(rel_err(chain_ber(2, 2, 10.0, 1), 0.066861134171726788) < 1e-13);
    CHECK(rel_err(chain_ber(3, 4, 10.0, 1), 0.14289980866011235) < 1e-13);
    CHECK(rel_err(chain_ber(2, 4, 100.0, 0), 0.014997269276462852) < 1e-13);
    CHECK(rel_err(chain_ber(1, 2, 10.0, 0), 0.032440746479902089) < 1e-13);
}

TEST_CASE("end to end combiner") {
    const std::vector<double> single{0.37};
    CHECK(end_to_end_ber(single) == 0.37);

    const std::vector<double> clean{0.0, 0.0, 0.0};
    CHECK(end_to_end_ber(clean) == 0.0);

    const std::vector<double> pair{0.1, 0.2};
    CHECK(std::abs(end_to_end_ber(pair) - 0.26) <= 1e-15);

    // Appending a perfect hop changes nothing; a half hop forces a half.
    const std::vector<double> base{0.07, 0.21};
    const double b = end_to_end_ber(base);
    const std::vector<double> with_zero{0.07, 0.21, 0.0};
    CHECK(end_to_end_ber(with_zero) == b);
    const std::vector<double> with_half{0.07, 0.21, 0.5};
    CHECK(end_to_end_ber(with_half) == 0.5);

    const std::vector<double> bad{0.1, 0.6};
    CHECK_THROWS_AS(end_to_end_ber(bad), std::domain_error);
    const std::vector<double> negative{-0.01};
    CHECK_THROWS_AS(end_to_end_ber(negative), std::domain_error);
    CHECK_THROWS_AS(end_to_end_ber({}), std::domain_error);
}

} // TEST_SUITE
