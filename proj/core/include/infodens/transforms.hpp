#pragma once

#include <string>

#include "infodens/density.hpp"
#include "infodens/grid_density.hpp"

namespace infodens {

// quantile-domain transforms and the shift-function partial orderings
//
// shift function        Delta(x) = G^-1(F(x)) - x, the univariate optimal
//                       transport map from F to G minus identity
// orderings             location: Delta >= 0; dispersion: Delta increasing;
//                       skewness: Delta convex; kurtosis: Delta concave then
//                       convex; information: cumulative rearranged mass
// pdQ                   f*(u) = f(F^-1(u)) / H*
// f:g                   (f:g)(u) = f(G^-1(u)) / g(G^-1(u)); -H(f:g) = KL(f||g)
// f~                    f:phi with phi the normal with f's mean and variance

struct ShiftFunction {
    RealFn delta;
    Interval domain; // support interior of F
};

enum class Relation { location, dispersion, skewness, kurtosis, information };

const char* relation_name(Relation r);
Relation relation_from_name(const std::string& name);

struct OrderingVerdict {
    Relation relation = Relation::location;
    bool holds = false;
    double witness = 0.0; // grid point of the worst violation when holds is false
    double margin = 0.0;  // worst signed slack (negative = violated)
};

ShiftFunction shift_function(const Density& dF, const Density& dG);

// scans Delta on dF.quantile(u), u uniform in [0.001, 0.999], grid >= 201
// nodes. Positivity / monotonicity / convexity use sign checks on zeroth,
// first and second differences with slack 1e-7 * scale; the concave-convex
// check requires the 3-point-smoothed second differences to change sign at
// most once, from negative to positive.
OrderingVerdict check_ordering(const Density& dF, const Density& dG, Relation rel,
                               int grid = 401);

// necessary-condition dilation check over the fixed convex family
// { |t|, t^2, |t|^3, (t-k)+, (-t-k)+ : k in {-1,0,1} }; witness is the index
// of the first failing test function
OrderingVerdict dilation_check(const Density& dF, const Density& dG);

// probability density quantile f* on (0,1); raw formula values at midpoint
// nodes, never renormalized (grid mass converges to 1 from the true density)
GridDensity pdq(const Density& d, int grid = 512);

// f:g on (0,1). Throws NumericError when g vanishes where f does not or when
// the captured midpoint mass deviates from 1 by more than 0.05, which
// separates true support mismatches (mass <= 0.85 across the catalog) from
// heavy-tail grid truncation (mass >= 0.97).
GridDensity f_colon_g(const Density& dF, const Density& dG, int grid = 512);

// f~ = f : normal(E(x), sqrt(Var(x)))
GridDensity f_tilde(const Density& d, int grid = 512);

// grid realization of the decreasing rearrangement: sorted values
GridDensity decreasing_rearrangement(const GridDensity& g);

// information order on (0,1) grids of equal size: holds when
// the mass-normalized cumulative sums of the rearranged g1 stay below those
// of g2 at every node (slack 1e-9); "holds" means g2 is more informative
OrderingVerdict info_order(const GridDensity& g1, const GridDensity& g2);

} // namespace infodens
