#ifndef COGBER_QUADRATURE_HPP
#define COGBER_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

namespace cogber {

// Raised when the adaptive scheme cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
// Stops once the summed error estimate is below max(abs_tol, rel_tol*|value|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    double rel_tol, double abs_tol = 0.0,
                                    std::size_t max_intervals = 20000);

// Same, but seeded with the given ordered breakpoints. Useful when the
// integrand lives on a scale far smaller than the integration range.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    double rel_tol, double abs_tol = 0.0,
                                    std::size_t max_intervals = 20000);

} // namespace cogber

#endif
