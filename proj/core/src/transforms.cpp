#include "infodens/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "infodens/measures.hpp"
#include "infodens/normal.hpp"
#include "infodens/quadrature.hpp"

namespace infodens {

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::location: return "location";
        case Relation::dispersion: return "dispersion";
        case Relation::skewness: return "skewness";
        case Relation::kurtosis: return "kurtosis";
        case Relation::information: return "information";
    }
    return "unknown";
}

Relation relation_from_name(const std::string& name) {
    if (name == "location") return Relation::location;
    if (name == "dispersion") return Relation::dispersion;
    if (name == "skewness") return Relation::skewness;
    if (name == "kurtosis") return Relation::kurtosis;
    if (name == "information") return Relation::information;
    throw std::invalid_argument("unknown ordering relation: " + name);
}

ShiftFunction shift_function(const Density& dF, const Density& dG) {
    ShiftFunction s;
    s.domain = dF.window(1e-12);
    s.delta = [dF, dG](double x) { return dG.quantile(dF.cdf(x)) - x; };
    return s;
}

namespace {

struct DeltaGrid {
    std::vector<double> x;     // dF.quantile(u)
    std::vector<double> delta; // dG.quantile(u) - dF.quantile(u)
    double tol = 0.0;
};

DeltaGrid delta_grid(const Density& dF, const Density& dG, int grid) {
    int n = std::max(grid, 201);
    DeltaGrid dg;
    dg.x.resize(n);
    dg.delta.resize(n);
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        double u = 0.001 + (0.999 - 0.001) * static_cast<double>(i) / (n - 1);
        double qf = dF.quantile(u);
        double qg = dG.quantile(u);
        dg.x[i] = qf;
        dg.delta[i] = qg - qf;
        scale = std::max(scale, std::fabs(dg.delta[i]));
    }
    dg.tol = 1e-7 * scale;
    return dg;
}

OrderingVerdict min_slack_verdict(Relation rel, const std::vector<double>& slack,
                                  const std::vector<double>& where, double tol) {
    OrderingVerdict v;
    v.relation = rel;
    size_t worst = 0;
    for (size_t i = 1; i < slack.size(); ++i)
        if (slack[i] < slack[worst]) worst = i;
    v.margin = slack[worst];
    v.holds = v.margin >= -tol;
    v.witness = v.holds ? 0.0 : where[worst];
    return v;
}

} // namespace

OrderingVerdict check_ordering(const Density& dF, const Density& dG, Relation rel,
                               int grid) {
    if (rel == Relation::information) {
        int n = std::max(grid, 512);
        return info_order(pdq(dF, n), pdq(dG, n));
    }

    DeltaGrid dg = delta_grid(dF, dG, grid);
    const std::vector<double>& d = dg.delta;
    size_t n = d.size();

    if (rel == Relation::location)
        return min_slack_verdict(rel, d, dg.x, dg.tol);

    if (rel == Relation::dispersion) {
        std::vector<double> diff(n - 1), at(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            diff[i] = d[i + 1] - d[i];
            at[i] = dg.x[i];
        }
        return min_slack_verdict(rel, diff, at, dg.tol);
    }

    std::vector<double> second(n - 2), at(n - 2);
    for (size_t i = 1; i + 1 < n; ++i) {
        second[i - 1] = d[i + 1] - 2.0 * d[i] + d[i - 1];
        at[i - 1] = dg.x[i];
    }

    if (rel == Relation::skewness)
        return min_slack_verdict(rel, second, at, dg.tol);

    // kurtosis: concave-convex shape. Raw second differences of a quantile
    // grid are noisy near the tails, so smooth with a 3-point moving average
    // and require at most one sign change, negative to positive.
    size_t m = second.size();
    std::vector<double> smooth(m);
    for (size_t i = 0; i < m; ++i) {
        double acc = second[i];
        int cnt = 1;
        if (i > 0) { acc += second[i - 1]; ++cnt; }
        if (i + 1 < m) { acc += second[i + 1]; ++cnt; }
        smooth[i] = acc / cnt;
    }

    OrderingVerdict v;
    v.relation = rel;
    v.holds = true;
    v.margin = 0.0;
    bool seen_pos = false;
    for (size_t i = 0; i < m; ++i) {
        if (smooth[i] > dg.tol) seen_pos = true;
        if (smooth[i] < -dg.tol && seen_pos) {
            double viol = smooth[i];
            if (v.holds || viol < v.margin) {
                v.holds = false;
                v.margin = viol;
                v.witness = at[i];
            }
        }
    }
    return v;
}

OrderingVerdict dilation_check(const Density& dF, const Density& dG) {
    struct TestFn {
        RealFn c;
        double kink; // offset from the mean; NaN when smooth
    };
    const double ks[3] = {-1.0, 0.0, 1.0};
    std::vector<TestFn> fns;
    fns.push_back({[](double t) { return std::fabs(t); }, 0.0});
    fns.push_back({[](double t) { return t * t; },
                   std::numeric_limits<double>::quiet_NaN()});
    fns.push_back({[](double t) { return std::fabs(t * t * t); }, 0.0});
    for (double k : ks)
        fns.push_back({[k](double t) { return std::max(0.0, t - k); }, k});
    for (double k : ks)
        fns.push_back({[k](double t) { return std::max(0.0, -t - k); }, -k});

    QuadratureConfig cfg;
    auto expect = [&cfg](const Density& d, const TestFn& tf) {
        Interval w = d.window(cfg.tail_cut);
        std::vector<double> splits = d.kink_points;
        if (std::isfinite(tf.kink)) splits.push_back(d.mean + tf.kink);
        double mu = d.mean;
        return integrate([&d, &tf, mu](double x) { return d.pdf(x) * tf.c(x - mu); },
                         w.lo, w.hi, splits, cfg);
    };

    OrderingVerdict v;
    v.relation = Relation::dispersion;
    v.holds = true;
    v.margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < fns.size(); ++i) {
        double slack = expect(dG, fns[i]) - expect(dF, fns[i]);
        if (slack < v.margin) {
            v.margin = slack;
            v.witness = static_cast<double>(i);
        }
    }
    v.holds = v.margin >= -1e-8;
    if (v.holds) v.witness = 0.0;
    return v;
}

GridDensity pdq(const Density& d, int grid) {
    int n = std::max(grid, 128);
    double hs = h_star(d);
    return grid_from_function(
        [&d, hs](double u) { return d.pdf(d.quantile(u)) / hs; }, 0.0, 1.0, n);
}

GridDensity f_colon_g(const Density& dF, const Density& dG, int grid) {
    int n = std::max(grid, 128);
    GridDensity g = grid_from_function(
        [&dF, &dG](double u) {
            double x = dG.quantile(u);
            double fv = dF.pdf(x);
            double gv = dG.pdf(x);
            if (gv <= 0.0) {
                if (fv <= 1e-300) return 0.0;
                throw NumericError("f:g undefined: g vanishes where f has mass (x=" +
                                   std::to_string(x) + ")");
            }
            return fv / gv;
        },
        0.0, 1.0, n);
    // the change of variables carries total mass 1 exactly; a large midpoint
    // deficit means f has mass outside the support of g
    double mass = g.mass();
    if (std::fabs(mass - 1.0) > 0.05)
        throw NumericError("f:g support mismatch: captured mass " +
                           std::to_string(mass));
    return g;
}

GridDensity f_tilde(const Density& d, int grid) {
    Density phi = make_normal(d.mean, std::sqrt(d.variance));
    return f_colon_g(d, phi, grid);
}

GridDensity decreasing_rearrangement(const GridDensity& g) {
    GridDensity r = g;
    std::sort(r.values.begin(), r.values.end(), std::greater<double>());
    return r;
}

OrderingVerdict info_order(const GridDensity& g1, const GridDensity& g2) {
    if (g1.values.size() != g2.values.size())
        throw NumericError("info_order requires grids of equal size");

    GridDensity r1 = decreasing_rearrangement(g1);
    GridDensity r2 = decreasing_rearrangement(g2);

    // compare mass-normalized cumulative sums so that the verdict reflects
    // the shape of the rearrangement, not midpoint discretization deficits
    double t1 = 0.0, t2 = 0.0;
    for (double v : r1.values) t1 += v;
    for (double v : r2.values) t2 += v;

    OrderingVerdict v;
    v.relation = Relation::information;
    v.holds = true;
    v.margin = std::numeric_limits<double>::infinity();
    double c1 = 0.0, c2 = 0.0;
    for (size_t i = 0; i < r1.values.size(); ++i) {
        c1 += r1.values[i] / t1;
        c2 += r2.values[i] / t2;
        double slack = c2 - c1;
        if (slack < v.margin) {
            v.margin = slack;
            v.witness = r1.node(i);
        }
    }
    v.holds = v.margin >= -1e-9;
    if (v.holds) v.witness = 0.0;
    return v;
}

} // namespace infodens
