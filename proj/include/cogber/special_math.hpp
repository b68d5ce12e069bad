#ifndef COGBER_SPECIAL_MATH_HPP
#define COGBER_SPECIAL_MATH_HPP

namespace cogber {

// Gaussian tail probability Q(x) = 0.5 * erfc(x / sqrt(2)).
// Total on finite inputs; throws std::domain_error on NaN.
double q_function(double x);

// Scaled complementary error function exp(x^2) * erfc(x) for x >= 0.
// Never overflows; accurate to better than 1e-12 relative over [0, inf).
// Throws std::domain_error for negative or NaN input.
double erfcx_scaled(double x);

// Arguments of the tail integral zeta(beta, a) = int_0^inf Q(sqrt(beta x)) / (x + a)^2 dx.
struct ZetaArgs {
    double beta; // >= 0
    double a;    // > 0
};

// Closed form of zeta(beta, a), evaluated through erfcx_scaled so the
// exp(beta*a/2) * erfc(sqrt(beta*a/2)) product cannot overflow. The result
// always lies in [0, 1/(2a)]. Throws std::domain_error on invalid arguments.
double zeta_closed(const ZetaArgs& args);

// Independent oracle for zeta_closed: adaptive quadrature of the defining
// integral on [0, T], with T chosen from the Chernoff bound
// Q(sqrt(beta x)) <= 0.5 * exp(-beta x / 2) so the discarded tail is provably
// below 1e-12 of the result. Throws QuadratureError on non-convergence.
double zeta_quadrature(const ZetaArgs& args, double rel_tol = 1e-10);

} // namespace cogber

#endif
