#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "infodens/density.hpp"
#include "infodens/grid_density.hpp"

namespace infodens {

// Scalar information and dispersion measures of a density, natural log
// throughout. Conventions:
//   entropy H          = -int f log f
//   entropy_power      = e^{2H}, a squared dispersion measure
//   h_star H*          = int f^2            (h_star_inv_sq = [H*]^-2)
//   h_mode H**         = sup f
//   fisher J           = int f (f'/f)^2, one-sided scores between kinks;
//                        +infinity for densities with support-edge jumps
//                        that carry score mass (uniform)
//   skew, kurt         = standardized cumulants kappa3, kappa4
//   var_epow           = 2 pi e Var e^{-2H}   (>= 1, = 1 at the normal)
//   wilcoxon_eff       = 12 [H*]^2 Var        (rank-test efficiency)
//   sign_eff           = 4 [H**]^2 Var        (sign-test efficiency)
//   vdw_eff            = Q^2 Var, Q = E[f(F^-1(u)) / phi(Phi^-1(u))]
//   var_fisher         = Var J               (>= 1, = 1 at the normal)
//   sibson_negentropy  = (kappa3^2 + kappa4^2/4) / 12
struct MeasureReport {
    double entropy = 0.0;
    double entropy_power = 0.0;
    double h_star = 0.0;
    double h_star_inv_sq = 0.0;
    double h_mode = 0.0;
    double fisher = 0.0;
    double variance = 0.0;
    double skew = 0.0;
    double kurt = 0.0;
    double var_epow = 0.0;
    double wilcoxon_eff = 0.0;
    double sign_eff = 0.0;
    double vdw_eff = 0.0;
    double var_fisher = 0.0;
    double sibson_negentropy = 0.0;

    // field order of the declaration, used by both serializations
    std::vector<std::pair<std::string, double>> items() const;
    void write_csv(std::ostream& os) const; // header row + one value row
    std::string to_json() const;            // flat object; infinities as "inf" strings
};

double entropy(const Density& d, const QuadratureConfig& cfg = {});
double h_star(const Density& d, const QuadratureConfig& cfg = {});
double h_mode(const Density& d, const QuadratureConfig& cfg = {});
double fisher_info(const Density& d, const QuadratureConfig& cfg = {});

// standardized (kappa3, kappa4); moment integrals use a deeper tail cut than
// the default because fourth moments of the lognormal carry visible mass far
// beyond the 1e-12 quantile window
std::pair<double, double> cumulants(const Density& d, const QuadratureConfig& cfg = {});

// unstandardized third and fourth cumulants (mu3, mu4 - 3 Var^2): the
// additive form used by the convolution additivity checks
std::pair<double, double> raw_cumulants(const Density& d, const QuadratureConfig& cfg = {});

// standardized sample cumulants via central moments with divisor n
std::pair<double, double> sample_cumulants(const std::vector<double>& xs);

double sibson_negentropy(double kappa3, double kappa4);

struct QuantileMeasures {
    double median;
    double spread; // q_{1-u} - q_u
    double q_skew; // (q_u + q_{1-u} - 2 q_{1/2}) / spread
    double q_kurt; // (q_{1-u} - q_u) / (q_{1-v} - q_v), 0 < u < v < 1/2
};
QuantileMeasures quantile_measures(const Density& d, double u, double v);

// Q = int_0^1 f(F^-1(u)) / phi(Phi^-1(u)) du on (tail_cut, 1 - tail_cut);
// throws NumericError when the integral keeps growing as the cut shrinks
// (divergent endpoints, e.g. the uniform)
double vdw_q(const Density& d, const QuadratureConfig& cfg = {});

// KL(f||g) = int f log(f/g) = -H(f:g), evaluated in x-space where adaptive
// quadrature reaches full tolerance (the (0,1) grid of f:g loses tail mass
// to discretization); +infinity when f has support outside g's
double kl_divergence(const Density& f, const Density& g,
                     const QuadratureConfig& cfg = {});

// all of the above; vdw divergence and infinite J land as +inf sentinels
MeasureReport report(const Density& d, const QuadratureConfig& cfg = {});

// grid (midpoint-sum) versions for transform outputs
double entropy(const GridDensity& g);
double h_star(const GridDensity& g);
double h_mode(const GridDensity& g);
double fisher_info(const GridDensity& g); // central differences on nodes

struct GridMoments {
    double mean, variance, mu3, mu4;
};
GridMoments grid_moments(const GridDensity& g);

// discrete measures live in majorization.hpp

} // namespace infodens
