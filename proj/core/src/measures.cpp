#include "infodens/measures.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "infodens/format.hpp"
#include "infodens/normal.hpp"

namespace infodens {

namespace {
const double inf = std::numeric_limits<double>::infinity();

double integrate_measure(const Density& d, const RealFn& g, const QuadratureConfig& cfg,
                         double tail_cut) {
    const Interval w = d.window(tail_cut);
    // anchor the panels at quantiles so every panel carries real mass; a
    // tail-cut window can be orders of magnitude wider than the density core
    // (lognormal: peak near 0.4 inside [1e-3, 1.1e3]) and a peak that thin is
    // invisible to the opening coarse rule
    std::vector<double> splits = d.kink_points;
    for (double u : {0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999})
        splits.push_back(d.quantile(u));
    return integrate(g, w.lo, w.hi, splits, cfg);
}

} // namespace

double entropy(const Density& d, const QuadratureConfig& cfg) {
    return -integrate_measure(
        d,
        [&](double x) {
            const double f = d.pdf(x);
            return f > 0.0 ? f * std::log(f) : 0.0;
        },
        cfg, cfg.tail_cut);
}

double h_star(const Density& d, const QuadratureConfig& cfg) {
    return integrate_measure(
        d,
        [&](double x) {
            const double f = d.pdf(x);
            return f * f;
        },
        cfg, cfg.tail_cut);
}

double h_mode(const Density& d, const QuadratureConfig& cfg) {
    const Interval w = d.window(cfg.tail_cut);
    double best = maximize(d.pdf, w.lo, w.hi, 4096).g_max;
    // a jump point can hide the supremum from the scan window interior
    for (double k : d.kink_points) {
        const double h = 1e-9 * (1.0 + std::fabs(k));
        best = std::max({best, d.pdf(k - h), d.pdf(k + h), d.pdf(k)});
    }
    return best;
}

double fisher_info(const Density& d, const QuadratureConfig& cfg) {
    if (d.fisher_divergent) return inf;
    const RealFn deriv = d.pdf_deriv
                             ? d.pdf_deriv
                             : RealFn([&](double x) { return derivative(d.pdf, x, 1e-6); });
    // the squared score can blow up toward a support edge (lognormal left
    // tail), so the window goes deeper than the default cut
    const double tc = std::min(cfg.tail_cut, 1e-15);
    return integrate_measure(
        d,
        [&](double x) {
            const double f = d.pdf(x);
            if (f <= 0.0) return 0.0;
            const double fp = deriv(x);
            return fp * fp / f;
        },
        cfg, tc);
}

std::pair<double, double> cumulants(const Density& d, const QuadratureConfig& cfg) {
    const auto [mu3, k4raw] = raw_cumulants(d, cfg);
    const double v = d.variance;
    return {mu3 / (v * std::sqrt(v)), k4raw / (v * v)};
}

std::pair<double, double> raw_cumulants(const Density& d, const QuadratureConfig& cfg) {
    // the 1e-12 window clips visible fourth-moment mass for the lognormal;
    // moments integrate over the deeper 1e-15 window instead
    const double tc = std::min(cfg.tail_cut, 1e-15);
    const double m = d.mean;
    const double mu3 = integrate_measure(
        d, [&](double x) { return std::pow(x - m, 3) * d.pdf(x); }, cfg, tc);
    const double mu4 = integrate_measure(
        d, [&](double x) { return std::pow(x - m, 4) * d.pdf(x); }, cfg, tc);
    return {mu3, mu4 - 3.0 * d.variance * d.variance};
}

std::pair<double, double> sample_cumulants(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n < 8) throw NumericError("sample_cumulants: need n >= 8");
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double c = x - m;
        const double c2 = c * c;
        m2 += c2;
        m3 += c2 * c;
        m4 += c2 * c2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (m2 <= 0.0) throw NumericError("sample_cumulants: zero sample variance");
    return {m3 / (m2 * std::sqrt(m2)), m4 / (m2 * m2) - 3.0};
}

double sibson_negentropy(double kappa3, double kappa4) {
    return (kappa3 * kappa3 + 0.25 * kappa4 * kappa4) / 12.0;
}

QuantileMeasures quantile_measures(const Density& d, double u, double v) {
    if (!(0.0 < u && u < v && v < 0.5))
        throw NumericError("quantile_measures: need 0 < u < v < 1/2");
    QuantileMeasures q;
    q.median = d.quantile(0.5);
    const double qu = d.quantile(u), qU = d.quantile(1.0 - u);
    const double qv = d.quantile(v), qV = d.quantile(1.0 - v);
    q.spread = qU - qu;
    q.q_skew = (qu + qU - 2.0 * q.median) / q.spread;
    q.q_kurt = (qU - qu) / (qV - qv);
    return q;
}

double vdw_q(const Density& d, const QuadratureConfig& cfg) {
    // substitute t = Phi^-1(u): Q = int f(F^-1(Phi(t))) dt, a bounded smooth
    // integrand whenever Q converges
    const auto q_at = [&](double eps) {
        const double t_lo = norm_quantile(eps), t_hi = norm_quantile(1.0 - eps);
        return integrate([&](double t) { return d.pdf(d.quantile(norm_cdf(t))); }, t_lo, t_hi,
                         cfg);
    };
    const double q1 = q_at(cfg.tail_cut);
    const double q2 = q_at(10.0 * cfg.tail_cut);
    if (std::fabs(q1 - q2) > 1e-3 * std::fabs(q1))
        throw NumericError("vdw_q: integral divergent near the endpoints");
    return q1;
}

double kl_divergence(const Density& f, const Density& g, const QuadratureConfig& cfg) {
    // support containment decides the infinite case exactly
    if (f.support.lo < g.support.lo - 1e-12 || f.support.hi > g.support.hi + 1e-12)
        return inf;

    const Interval w = f.window(cfg.tail_cut);
    std::vector<double> splits = f.kink_points;
    for (double k : g.kink_points) splits.push_back(k);
    for (double u : {0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999})
        splits.push_back(f.quantile(u));
    // log g directly: g's pdf underflows where f still carries real mass
    // (a heavy-tailed f against normal tails)
    const RealFn log_g =
        g.log_pdf ? g.log_pdf : RealFn([&](double x) { return std::log(g.pdf(x)); });
    return integrate(
        [&](double x) {
            const double fv = f.pdf(x);
            if (fv <= 0.0) return 0.0;
            const double lg = log_g(x);
            if (!std::isfinite(lg))
                throw NumericError("kl_divergence: g vanishes inside f's support");
            return fv * (std::log(fv) - lg);
        },
        w.lo, w.hi, splits, cfg);
}

MeasureReport report(const Density& d, const QuadratureConfig& cfg) {
    MeasureReport r;
    r.entropy = entropy(d, cfg);
    r.entropy_power = std::exp(2.0 * r.entropy);
    r.h_star = h_star(d, cfg);
    r.h_star_inv_sq = 1.0 / (r.h_star * r.h_star);
    r.h_mode = h_mode(d, cfg);
    r.fisher = fisher_info(d, cfg);
    r.variance = d.variance;
    std::tie(r.skew, r.kurt) = cumulants(d, cfg);
    r.var_epow = 2.0 * 3.14159265358979323846 * std::exp(1.0) * r.variance /
                 r.entropy_power;
    r.wilcoxon_eff = 12.0 * r.h_star * r.h_star * r.variance;
    r.sign_eff = 4.0 * r.h_mode * r.h_mode * r.variance;
    try {
        const double q = vdw_q(d, cfg);
        r.vdw_eff = q * q * r.variance;
    } catch (const NumericError&) {
        r.vdw_eff = inf; // divergent Q, same sentinel convention as J
    }
    r.var_fisher = r.variance * r.fisher;
    r.sibson_negentropy = sibson_negentropy(r.skew, r.kurt);
    return r;
}

std::vector<std::pair<std::string, double>> MeasureReport::items() const {
    return {
        {"entropy", entropy},
        {"entropy_power", entropy_power},
        {"h_star", h_star},
        {"h_star_inv_sq", h_star_inv_sq},
        {"h_mode", h_mode},
        {"fisher", fisher},
        {"variance", variance},
        {"skew", skew},
        {"kurt", kurt},
        {"var_epow", var_epow},
        {"wilcoxon_eff", wilcoxon_eff},
        {"sign_eff", sign_eff},
        {"vdw_eff", vdw_eff},
        {"var_fisher", var_fisher},
        {"sibson_negentropy", sibson_negentropy},
    };
}

void MeasureReport::write_csv(std::ostream& os) const {
    const auto kv = items();
    for (std::size_t i = 0; i < kv.size(); ++i)
        os << kv[i].first << (i + 1 < kv.size() ? "," : "\r\n");
    for (std::size_t i = 0; i < kv.size(); ++i)
        os << format_full(kv[i].second) << (i + 1 < kv.size() ? "," : "\r\n");
}

std::string MeasureReport::to_json() const {
    std::ostringstream os;
    os << "{";
    const auto kv = items();
    for (std::size_t i = 0; i < kv.size(); ++i) {
        os << "\"" << kv[i].first << "\":";
        if (std::isinf(kv[i].second))
            os << "\"" << (kv[i].second > 0 ? "inf" : "-inf") << "\"";
        else
            os << format_full(kv[i].second);
        if (i + 1 < kv.size()) os << ",";
    }
    os << "}";
    return os.str();
}

double entropy(const GridDensity& g) {
    const double h = g.step();
    double s = 0.0;
    for (double v : g.values)
        if (v > 0.0) s += v * std::log(v);
    return -s * h;
}

double h_star(const GridDensity& g) {
    const double h = g.step();
    double s = 0.0;
    for (double v : g.values) s += v * v;
    return s * h;
}

double h_mode(const GridDensity& g) {
    double m = 0.0;
    for (double v : g.values) m = std::max(m, v);
    return m;
}

double fisher_info(const GridDensity& g) {
    const double h = g.step();
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < g.values.size(); ++i) {
        const double f = g.values[i];
        if (f <= 0.0) continue;
        const double fp = (g.values[i + 1] - g.values[i - 1]) / (2.0 * h);
        s += fp * fp / f;
    }
    return s * h;
}

GridMoments grid_moments(const GridDensity& g) {
    const double h = g.step();
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        m0 += g.values[i];
        m1 += g.values[i] * g.node(i);
    }
    m0 *= h;
    m1 *= h;
    const double mean = m1 / m0;
    double v = 0.0, mu3 = 0.0, mu4 = 0.0;
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        const double c = g.node(i) - mean;
        const double w = g.values[i];
        v += w * c * c;
        mu3 += w * c * c * c;
        mu4 += w * c * c * c * c;
    }
    return {mean, v * h / m0, mu3 * h / m0, mu4 * h / m0};
}

} // namespace infodens
