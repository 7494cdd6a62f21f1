#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace infodens {

using RealFn = std::function<double(double)>;

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_depth = 60;     // recursion depth per subinterval
    int min_depth = 6;      // forced bisections before the error test may accept,
                            // so a peak much thinner than the interval is still found
    double tail_cut = 1e-12; // probability mass ignored per tail on infinite domains
};

// thrown when adaptive refinement exhausts max_depth without meeting tolerance;
// carries the worst subinterval for diagnosis
struct QuadratureError : std::runtime_error {
    double worst_lo, worst_hi;
    QuadratureError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), worst_lo(lo), worst_hi(hi) {}
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// adaptive Simpson on a finite interval; |result - true| <= max(abs_tol, rel_tol*|result|)
// for integrands smooth on (a,b)
double integrate(const RealFn& g, double a, double b, const QuadratureConfig& cfg = {});

// same, but the interval is first split at the interior points in `splits`
// (kink hints: Laplace apex, uniform edges, swap-transform cut points)
double integrate(const RealFn& g, double a, double b, const std::vector<double>& splits,
                 const QuadratureConfig& cfg = {});

// bracketed root: g(lo) and g(hi) must straddle zero. Brent-style with a
// bisection fallback, terminates with bracket width <= tol.
double find_root(const RealFn& g, double lo, double hi, double tol = 1e-13);

struct MaximizeResult {
    double x_max;
    double g_max;
};

// coarse grid scan (grid >= 64 cells) followed by golden-section refinement
// in the best neighbouring cell pair; best-effort for multimodal g
MaximizeResult maximize(const RealFn& g, double a, double b, int grid = 256);

// central difference (g(x+h) - g(x-h)) / 2h
double derivative(const RealFn& g, double x, double h);

} // namespace infodens
