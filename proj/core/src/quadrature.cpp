#include "infodens/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace infodens {

namespace {

struct SimpsonFrame {
    double a, b, fa, fm, fb, whole;
};

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

// classic adaptive Simpson with Richardson correction; recurses on both halves
// but tightens only until the local error estimate passes the split tolerance
double adapt(const RealFn& g, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth, const QuadratureConfig& cfg,
             double* worst_lo, double* worst_hi) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = (left + right - whole) / 15.0;
    if ((depth >= cfg.min_depth && std::fabs(err) <= tol) || depth >= cfg.max_depth) {
        if (depth >= cfg.max_depth && std::fabs(err) > tol) {
            *worst_lo = a;
            *worst_hi = b;
        }
        return left + right + err;
    }
    return adapt(g, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, cfg, worst_lo, worst_hi) +
           adapt(g, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, cfg, worst_lo, worst_hi);
}

double integrate_piece(const RealFn& g, double a, double b, const QuadratureConfig& cfg) {
    if (!(a < b)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = g(a), fm = g(m), fb = g(b);
    const double whole = simpson(fa, fm, fb, b - a);
    // rel_tol enters through a first-pass magnitude estimate
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(whole));
    double worst_lo = 0.0, worst_hi = -1.0;
    const double r = adapt(g, a, b, fa, fm, fb, whole, tol, 0, cfg, &worst_lo, &worst_hi);
    if (worst_lo < worst_hi)
        throw QuadratureError("integrate: tolerance not met at max_depth", worst_lo, worst_hi);
    return r;
}

} // namespace

double integrate(const RealFn& g, double a, double b, const QuadratureConfig& cfg) {
    return integrate_piece(g, a, b, cfg);
}

double integrate(const RealFn& g, double a, double b, const std::vector<double>& splits,
                 const QuadratureConfig& cfg) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double s : splits)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate_piece(g, pts[i], pts[i + 1], cfg);
    return total;
}

double find_root(const RealFn& g, double lo, double hi, double tol) {
    double fa = g(lo), fb = g(hi);
    if (fa == 0.0) return lo;
    if (fb == 0.0) return hi;
    if (fa * fb > 0.0) throw NumericError("find_root: root not bracketed");

    // secant step inside a maintained bracket, bisection whenever the secant
    // leaves the bracket or fails to shrink it; termination is guaranteed
    double a = lo, b = hi;
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        double m;
        const double denom = fb - fa;
        if (denom != 0.0) {
            m = b - fb * (b - a) / denom;
            if (!(m > a && m < b)) m = 0.5 * (a + b);
        } else {
            m = 0.5 * (a + b);
        }
        // keep strictly interior so pathological secant endpoints cannot stall
        const double mid = 0.5 * (a + b);
        if (std::fabs(m - mid) > 0.45 * (b - a)) m = mid;
        const double fm = g(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

MaximizeResult maximize(const RealFn& g, double a, double b, int grid) {
    if (grid < 64) grid = 64;
    const double h = (b - a) / grid;
    double best_x = a, best_v = g(a);
    for (int i = 1; i <= grid; ++i) {
        const double x = (i == grid) ? b : a + i * h;
        const double v = g(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    // golden-section refine inside the two cells around the best node
    double lo = std::max(a, best_x - h), hi = std::min(b, best_x + h);
    const double phi = 0.6180339887498948482;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 120 && (hi - lo) > 1e-13 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = g(x1);
        }
    }
    const double xm = 0.5 * (lo + hi);
    const double vm = g(xm);
    if (vm >= best_v) return {xm, vm};
    return {best_x, best_v};
}

double derivative(const RealFn& g, double x, double h) {
    return (g(x + h) - g(x - h)) / (2.0 * h);
}

} // namespace infodens
