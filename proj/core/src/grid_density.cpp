#include "infodens/grid_density.hpp"

#include <cmath>
#include <ostream>

#include "infodens/format.hpp"

namespace infodens {

double GridDensity::mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * step();
}

double GridDensity::value_at(double x) const {
    if (values.empty() || x < lo || x > hi) return 0.0;
    const double h = step();
    const double t = (x - lo) / h - 0.5; // node index coordinate
    if (t <= 0.0) return values.front();
    if (t >= static_cast<double>(values.size() - 1)) return values.back();
    const std::size_t i = static_cast<std::size_t>(t);
    const double w = t - static_cast<double>(i);
    return values[i] * (1.0 - w) + values[i + 1] * w;
}

void GridDensity::check_mass(double tol) const {
    const double m = mass();
    if (std::fabs(m - 1.0) > tol)
        throw NumericError("GridDensity: mass " + format_full(m) + " deviates from 1 beyond " +
                           format_full(tol));
}

void GridDensity::write_csv(std::ostream& os) const {
    os << "u,value\r\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << format_full(node(i)) << ',' << format_full(values[i]) << "\r\n";
}

GridDensity grid_from_function(const RealFn& fn, double lo, double hi, int n) {
    if (n < 128) throw NumericError("grid_from_function: need n >= 128");
    if (!(lo < hi)) throw NumericError("grid_from_function: need lo < hi");
    GridDensity g;
    g.lo = lo;
    g.hi = hi;
    g.values.resize(static_cast<std::size_t>(n));
    const double clip = std::exp(700.0);
    for (int i = 0; i < n; ++i) {
        double v = fn(g.node(static_cast<std::size_t>(i)));
        if (!(v >= 0.0)) throw NumericError("grid_from_function: negative or NaN density value");
        if (v > clip) {
            v = clip;
            ++g.clip_count;
        }
        g.values[static_cast<std::size_t>(i)] = v;
    }
    return g;
}

} // namespace infodens
