#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "infodens/quadrature.hpp"

namespace infodens {

// Density sampled at the midpoints of n uniform cells of [lo,hi].
//
// Node i sits at lo + (i + 1/2)*step, step = (hi-lo)/n, so quantile-domain
// transforms never evaluate their integrand exactly at 0 or 1 where the
// underlying maps diverge. mass() is the midpoint-rule integral; analytic
// constructions must carry mass 1 up to discretization, which check_mass
// verifies. Values are stored raw (what the defining formula produced), never
// silently renormalized.
struct GridDensity {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> values;
    long clip_count = 0; // nodes clipped by the exp(700) overflow guard

    std::size_t size() const { return values.size(); }
    double step() const { return (hi - lo) / static_cast<double>(values.size()); }
    double node(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * step(); }

    // midpoint-rule integral of the stored values
    double mass() const;

    // linear interpolation between neighbouring nodes, clamped to the edge
    // node values inside the outer half-cells, zero outside [lo,hi]
    double value_at(double x) const;

    // throws NumericError when |mass - 1| > tol
    void check_mass(double tol) const;

    // two-column CSV with a one-line header "u,value"
    void write_csv(std::ostream& os) const;
};

// tabulate fn at the midpoint nodes; values below 0 rejected, values above
// exp(700) clipped with the clip counter incremented
GridDensity grid_from_function(const RealFn& fn, double lo, double hi, int n);

} // namespace infodens
