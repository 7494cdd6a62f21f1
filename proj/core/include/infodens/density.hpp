#pragma once

#include <limits>
#include <string>
#include <vector>

#include "infodens/grid_density.hpp"
#include "infodens/quadrature.hpp"

namespace infodens {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

// Analytic univariate density with finite mean and variance.
//
// pdf/cdf/quantile are closed form wherever the family allows; the GMM
// quantile inverts the cdf by bracketed root finding. kink_points lists the
// finitely many points where the pdf is not differentiable (Laplace apex,
// uniform edges, swap cut points); every integral over the density splits
// there. pdf_deriv is the closed-form f' away from kinks; when absent,
// consumers fall back to central differences.
struct Density {
    RealFn pdf;
    RealFn cdf;
    RealFn quantile; // on (0,1)
    RealFn pdf_deriv; // may be null
    // log f(x), finite wherever f > 0 even when the pdf underflows (normal
    // tails beyond |x| ~ 38); -inf off the support. May be null: consumers
    // fall back to log(pdf(x))
    RealFn log_pdf;
    double mean = 0.0;
    double variance = 1.0;
    Interval support;
    std::vector<double> kink_points;
    // support-edge jumps put score mass on the boundary; Fisher information
    // is declared +infinity for such families (the uniform) by convention,
    // while interior jumps from swaps keep the a.e. piecewise integral
    bool fisher_divergent = false;
    std::string name;

    // integration window [quantile(tail_cut), quantile(1-tail_cut)] clipped
    // to the support; every measure integral runs over this window
    Interval window(double tail_cut = 1e-12) const;
};

struct GmmSpec {
    double mu1 = 0.0, mu2 = 0.0;
    double sigma1 = 1.0, sigma2 = 1.0;
    double w = 0.5; // weight of the first component
};

Density make_normal(double mu, double sigma);
Density make_laplace(double b); // zero mean, scale b: pdf (1/2b) e^{-|x|/b}
Density make_lognormal(double mu, double sigma); // exp(N(mu, sigma^2))
Density make_uniform(double a, double b);
Density make_gmm(const GmmSpec& spec);
Density make_exponential(double lambda);

// distribution-spec mini-language: name ":" comma-separated decimals, or a
// bare name for the family default. Names: norm, laplace, lognorm, unif,
// gmm, exp. Examples: "norm:0,1"  "laplace:1"  "gmm:0,4,1,2,0.4".
Density make_density(const std::string& spec);

// split a comma-joined list of specs ("unif:0,1,laplace:1" -> two specs);
// a new spec starts at each known family name followed by ':' or the end
std::vector<std::string> split_spec_list(const std::string& list);

// y = a x + b, a != 0
Density affine_transform(const Density& d, double a, double b);

// (x - E(x)) / sqrt(Var(x)): mean 0, variance 1
Density standardize(const Density& d);

// elemental swap f_{a,b,delta}: pdf values on [a, a+delta) and [b, b+delta)
// exchanged, identical elsewhere. Requires a + delta <= b (disjoint
// intervals); delta = 0 is the identity. Mean and variance are recomputed by
// quadrature; the cdf is closed-form piecewise in F.
Density swap_transform(const Density& d, double a, double b, double delta);

// density of x + y for independent x, y: h(z) = int f1(t) f2(z-t) dt on a
// midpoint grid spanning both tail-cut windows, renormalized to mass 1
GridDensity convolve(const Density& d1, const Density& d2, int grid = 1024);

// n i.i.d. draws by inverse cdf over a splitmix64 stream; identical
// (spec, n, seed) give bit-identical output on every platform
std::vector<double> sample(const Density& d, std::size_t n, std::uint64_t seed);

} // namespace infodens
