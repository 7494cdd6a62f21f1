#include "infodens/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "infodens/normal.hpp"
#include "infodens/rng.hpp"

namespace infodens {

namespace {
const double inf = std::numeric_limits<double>::infinity();

double require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw NumericError(std::string(what) + " must be positive");
    return v;
}
} // namespace

Interval Density::window(double tail_cut) const {
    Interval w;
    w.lo = std::max(support.lo, quantile(tail_cut));
    w.hi = std::min(support.hi, quantile(1.0 - tail_cut));
    return w;
}

Density make_normal(double mu, double sigma) {
    require_positive(sigma, "normal sigma");
    Density d;
    d.pdf = [=](double x) { return norm_pdf((x - mu) / sigma) / sigma; };
    d.cdf = [=](double x) { return norm_cdf((x - mu) / sigma); };
    d.quantile = [=](double u) { return mu + sigma * norm_quantile(u); };
    d.pdf_deriv = [=](double x) {
        const double z = (x - mu) / sigma;
        return -z * norm_pdf(z) / (sigma * sigma);
    };
    d.log_pdf = [=](double x) {
        const double z = (x - mu) / sigma;
        return -0.5 * z * z - 0.5 * std::log(2.0 * M_PI) - std::log(sigma);
    };
    d.mean = mu;
    d.variance = sigma * sigma;
    d.name = "norm";
    return d;
}

Density make_laplace(double b) {
    require_positive(b, "laplace scale");
    Density d;
    d.pdf = [=](double x) { return std::exp(-std::fabs(x) / b) / (2.0 * b); };
    d.cdf = [=](double x) {
        return x < 0.0 ? 0.5 * std::exp(x / b) : 1.0 - 0.5 * std::exp(-x / b);
    };
    d.quantile = [=](double u) {
        return u < 0.5 ? b * std::log(2.0 * u) : -b * std::log(2.0 * (1.0 - u));
    };
    d.pdf_deriv = [=](double x) {
        const double s = (x < 0.0) ? 1.0 : -1.0; // one-sided at the apex
        return s * std::exp(-std::fabs(x) / b) / (2.0 * b * b);
    };
    d.log_pdf = [=](double x) { return -std::fabs(x) / b - std::log(2.0 * b); };
    d.mean = 0.0;
    d.variance = 2.0 * b * b;
    d.kink_points = {0.0};
    d.name = "laplace";
    return d;
}

Density make_lognormal(double mu, double sigma) {
    require_positive(sigma, "lognormal sigma");
    Density d;
    d.pdf = [=](double x) {
        if (x <= 0.0) return 0.0;
        return norm_pdf((std::log(x) - mu) / sigma) / (sigma * x);
    };
    d.cdf = [=](double x) { return x <= 0.0 ? 0.0 : norm_cdf((std::log(x) - mu) / sigma); };
    d.quantile = [=](double u) { return std::exp(mu + sigma * norm_quantile(u)); };
    d.pdf_deriv = [=](double x) {
        if (x <= 0.0) return 0.0;
        const double z = (std::log(x) - mu) / sigma;
        // d/dx [phi(z)/(sigma x)] = -pdf(x) * (1 + z/sigma) / x
        return -norm_pdf(z) / (sigma * x * x) * (1.0 + z / sigma);
    };
    d.log_pdf = [=](double x) {
        if (x <= 0.0) return -inf;
        const double lx = std::log(x);
        const double z = (lx - mu) / sigma;
        return -0.5 * z * z - lx - 0.5 * std::log(2.0 * M_PI) - std::log(sigma);
    };
    const double s2 = sigma * sigma;
    d.mean = std::exp(mu + 0.5 * s2);
    d.variance = (std::exp(s2) - 1.0) * std::exp(2.0 * mu + s2);
    d.support = {0.0, inf};
    d.name = "lognorm";
    return d;
}

Density make_uniform(double a, double b) {
    if (!(a < b)) throw NumericError("uniform: need a < b");
    const double inv = 1.0 / (b - a);
    Density d;
    d.pdf = [=](double x) { return (x >= a && x <= b) ? inv : 0.0; };
    d.cdf = [=](double x) {
        if (x <= a) return 0.0;
        if (x >= b) return 1.0;
        return (x - a) * inv;
    };
    d.quantile = [=](double u) { return a + (b - a) * u; };
    d.pdf_deriv = [](double) { return 0.0; };
    d.log_pdf = [=](double x) { return (x >= a && x <= b) ? std::log(inv) : -inf; };
    d.mean = 0.5 * (a + b);
    d.variance = (b - a) * (b - a) / 12.0;
    d.support = {a, b};
    d.kink_points = {a, b};
    d.fisher_divergent = true;
    d.name = "unif";
    return d;
}

Density make_gmm(const GmmSpec& spec) {
    require_positive(spec.sigma1, "gmm sigma1");
    require_positive(spec.sigma2, "gmm sigma2");
    if (spec.w < 0.0 || spec.w > 1.0) throw NumericError("gmm: w outside [0,1]");
    const GmmSpec s = spec;
    Density d;
    d.pdf = [=](double x) {
        return s.w * norm_pdf((x - s.mu1) / s.sigma1) / s.sigma1 +
               (1.0 - s.w) * norm_pdf((x - s.mu2) / s.sigma2) / s.sigma2;
    };
    d.cdf = [=](double x) {
        return s.w * norm_cdf((x - s.mu1) / s.sigma1) +
               (1.0 - s.w) * norm_cdf((x - s.mu2) / s.sigma2);
    };
    const RealFn cdf = d.cdf;
    d.quantile = [=](double u) {
        // the mixture quantile lies between the two component quantiles
        const double z = norm_quantile(u);
        const double q1 = s.mu1 + s.sigma1 * z;
        const double q2 = s.mu2 + s.sigma2 * z;
        double lo = std::min(q1, q2), hi = std::max(q1, q2);
        if (lo == hi) return lo;
        const double tol = 1e-14 * (1.0 + std::fabs(lo) + std::fabs(hi));
        return find_root([&](double x) { return cdf(x) - u; }, lo, hi, tol);
    };
    d.pdf_deriv = [=](double x) {
        const double z1 = (x - s.mu1) / s.sigma1;
        const double z2 = (x - s.mu2) / s.sigma2;
        return -s.w * z1 * norm_pdf(z1) / (s.sigma1 * s.sigma1) -
               (1.0 - s.w) * z2 * norm_pdf(z2) / (s.sigma2 * s.sigma2);
    };
    d.log_pdf = [=](double x) {
        const double c = 0.5 * std::log(2.0 * M_PI);
        const double z1 = (x - s.mu1) / s.sigma1;
        const double z2 = (x - s.mu2) / s.sigma2;
        const double a1 = std::log(s.w) - 0.5 * z1 * z1 - c - std::log(s.sigma1);
        const double a2 = std::log1p(-s.w) - 0.5 * z2 * z2 - c - std::log(s.sigma2);
        const double m = std::max(a1, a2);
        return m + std::log(std::exp(a1 - m) + std::exp(a2 - m));
    };
    d.mean = s.w * s.mu1 + (1.0 - s.w) * s.mu2;
    const double m2 = s.w * (s.sigma1 * s.sigma1 + s.mu1 * s.mu1) +
                      (1.0 - s.w) * (s.sigma2 * s.sigma2 + s.mu2 * s.mu2);
    d.variance = m2 - d.mean * d.mean;
    d.name = "gmm";
    return d;
}

Density make_exponential(double lambda) {
    require_positive(lambda, "exponential rate");
    Density d;
    d.pdf = [=](double x) { return x < 0.0 ? 0.0 : lambda * std::exp(-lambda * x); };
    d.cdf = [=](double x) { return x < 0.0 ? 0.0 : 1.0 - std::exp(-lambda * x); };
    d.quantile = [=](double u) { return -std::log1p(-u) / lambda; };
    d.pdf_deriv = [=](double x) {
        return x < 0.0 ? 0.0 : -lambda * lambda * std::exp(-lambda * x);
    };
    d.log_pdf = [=](double x) {
        return x < 0.0 ? -inf : std::log(lambda) - lambda * x;
    };
    d.mean = 1.0 / lambda;
    d.variance = 1.0 / (lambda * lambda);
    d.support = {0.0, inf};
    d.kink_points = {0.0};
    d.name = "exp";
    return d;
}

namespace {

const char* const family_names[] = {"norm", "laplace", "lognorm", "unif", "gmm", "exp"};

std::vector<double> parse_params(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        const std::string tok = s.substr(pos, next - pos);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw NumericError("distribution spec: bad number '" + tok + "'");
        out.push_back(v);
        pos = next + 1;
    }
    return out;
}

void need(const std::vector<double>& p, std::size_t k, const std::string& spec) {
    if (p.size() != k)
        throw NumericError("distribution spec '" + spec + "': wrong parameter count");
}

} // namespace

Density make_density(const std::string& spec) {
    std::string name = spec, params;
    const std::size_t colon = spec.find(':');
    if (colon != std::string::npos) {
        name = spec.substr(0, colon);
        params = spec.substr(colon + 1);
    }
    const bool known = std::any_of(std::begin(family_names), std::end(family_names),
                                   [&](const char* f) { return name == f; });
    if (!known) throw NumericError("distribution spec: unknown family '" + name + "'");

    // bare names take the family defaults
    if (colon == std::string::npos) {
        if (name == "norm") return make_normal(0, 1);
        if (name == "laplace") return make_laplace(1);
        if (name == "lognorm") return make_lognormal(0, 1);
        if (name == "unif") return make_uniform(0, 1);
        if (name == "gmm") return make_gmm({0, 4, 1, 2, 0.4});
        return make_exponential(1);
    }

    const std::vector<double> p = parse_params(params);
    if (name == "norm") {
        need(p, 2, spec);
        return make_normal(p[0], p[1]);
    }
    if (name == "laplace") {
        need(p, 1, spec);
        return make_laplace(p[0]);
    }
    if (name == "lognorm") {
        need(p, 2, spec);
        return make_lognormal(p[0], p[1]);
    }
    if (name == "unif") {
        need(p, 2, spec);
        return make_uniform(p[0], p[1]);
    }
    if (name == "gmm") {
        need(p, 5, spec);
        return make_gmm({p[0], p[1], p[2], p[3], p[4]});
    }
    need(p, 1, spec);
    return make_exponential(p[0]);
}

std::vector<std::string> split_spec_list(const std::string& list) {
    // a spec boundary is a comma directly followed by a family name and
    // either ':' or another boundary/end; numbers never match a family name
    std::vector<std::size_t> starts{0};
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
        if (list[i] != ',') continue;
        for (const char* f : family_names) {
            const std::size_t len = std::string(f).size();
            if (list.compare(i + 1, len, f) != 0) continue;
            const std::size_t after = i + 1 + len;
            if (after == list.size() || list[after] == ':' || list[after] == ',') {
                starts.push_back(i + 1);
                break;
            }
        }
    }
    std::vector<std::string> out;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const std::size_t from = starts[k];
        const std::size_t to = (k + 1 < starts.size()) ? starts[k + 1] - 1 : list.size();
        out.push_back(list.substr(from, to - from));
    }
    return out;
}

Density affine_transform(const Density& d, double a, double b) {
    if (a == 0.0) throw NumericError("affine_transform: a must be nonzero");
    Density o;
    const RealFn pdf = d.pdf, cdf = d.cdf, quantile = d.quantile, deriv = d.pdf_deriv;
    const double abs_a = std::fabs(a);
    o.pdf = [=](double y) { return pdf((y - b) / a) / abs_a; };
    if (a > 0.0) {
        o.cdf = [=](double y) { return cdf((y - b) / a); };
        o.quantile = [=](double u) { return a * quantile(u) + b; };
        o.support = {a * d.support.lo + b, a * d.support.hi + b};
    } else {
        o.cdf = [=](double y) { return 1.0 - cdf((y - b) / a); };
        o.quantile = [=](double u) { return a * quantile(1.0 - u) + b; };
        o.support = {a * d.support.hi + b, a * d.support.lo + b};
    }
    if (deriv) {
        o.pdf_deriv = [=](double y) { return deriv((y - b) / a) / (a * abs_a); };
    }
    if (d.log_pdf) {
        const RealFn lp = d.log_pdf;
        o.log_pdf = [=](double y) { return lp((y - b) / a) - std::log(abs_a); };
    }
    o.mean = a * d.mean + b;
    o.variance = a * a * d.variance;
    for (double k : d.kink_points) o.kink_points.push_back(a * k + b);
    std::sort(o.kink_points.begin(), o.kink_points.end());
    o.fisher_divergent = d.fisher_divergent;
    o.name = d.name;
    return o;
}

Density standardize(const Density& d) {
    const double s = std::sqrt(d.variance);
    return affine_transform(d, 1.0 / s, -d.mean / s);
}

Density swap_transform(const Density& d, double a, double b, double delta) {
    if (delta < 0.0) throw NumericError("swap_transform: delta must be >= 0");
    if (a + delta > b) throw NumericError("swap_transform: intervals [a,a+d) and [b,b+d) overlap");
    if (delta == 0.0) return d;

    const RealFn f = d.pdf, F = d.cdf, fd = d.pdf_deriv;
    const double shift = b - a;
    Density o;
    o.pdf = [=](double x) {
        if (x >= a && x < a + delta) return f(x + shift);
        if (x >= b && x < b + delta) return f(x - shift);
        return f(x);
    };
    if (fd) {
        o.pdf_deriv = [=](double x) {
            if (x >= a && x < a + delta) return fd(x + shift);
            if (x >= b && x < b + delta) return fd(x - shift);
            return fd(x);
        };
    }
    if (d.log_pdf) {
        const RealFn lp = d.log_pdf;
        o.log_pdf = [=](double x) {
            if (x >= a && x < a + delta) return lp(x + shift);
            if (x >= b && x < b + delta) return lp(x - shift);
            return lp(x);
        };
    }
    // mass entering [a,a+d) is F(b+d)-F(b); mass leaving is F(a+d)-F(a);
    // the cdf between the intervals is offset by the difference
    const double m_in = F(b + delta) - F(b);
    const double m_out = F(a + delta) - F(a);
    const double off = m_in - m_out;
    o.cdf = [=](double x) {
        if (x < a) return F(x);
        if (x < a + delta) return F(a) + (F(x + shift) - F(b));
        if (x < b) return F(x) + off;
        if (x < b + delta) return F(b) + off + (F(x - shift) - F(a));
        return F(x);
    };
    o.support = d.support;
    o.fisher_divergent = d.fisher_divergent;
    o.kink_points = d.kink_points;
    for (double k : {a, a + delta, b, b + delta}) o.kink_points.push_back(k);
    // an original kink inside one window reappears shifted in the other
    for (double k : d.kink_points) {
        if (k >= a && k < a + delta) o.kink_points.push_back(k + shift);
        if (k >= b && k < b + delta) o.kink_points.push_back(k - shift);
    }
    std::sort(o.kink_points.begin(), o.kink_points.end());
    o.kink_points.erase(std::unique(o.kink_points.begin(), o.kink_points.end()),
                        o.kink_points.end());

    const RealFn ocdf = o.cdf;
    Interval win = d.window();
    win.lo = std::min(win.lo, a - 1.0);
    win.hi = std::max(win.hi, b + delta + 1.0);
    const Interval sup = d.support;
    o.quantile = [=](double u) {
        // u may sit deeper in a tail than the construction-time window;
        // expand the bracket toward the support edge until it holds the root
        double lo = std::max(win.lo, sup.lo), hi = std::min(win.hi, sup.hi);
        for (double step = hi - lo; ocdf(lo) > u && lo > sup.lo; step *= 2.0)
            lo = std::max(sup.lo, lo - step);
        for (double step = hi - lo; ocdf(hi) < u && hi < sup.hi; step *= 2.0)
            hi = std::min(sup.hi, hi + step);
        const double tol = 1e-14 * (1.0 + std::fabs(lo) + std::fabs(hi));
        return find_root([&](double x) { return ocdf(x) - u; }, lo, hi, tol);
    };

    const RealFn opdf = o.pdf;
    QuadratureConfig cfg;
    o.mean = integrate([&](double x) { return x * opdf(x); }, win.lo, win.hi, o.kink_points, cfg);
    o.variance = integrate([&](double x) { return (x - o.mean) * (x - o.mean) * opdf(x); },
                           win.lo, win.hi, o.kink_points, cfg);
    o.name = d.name + "_swap";
    return o;
}

GridDensity convolve(const Density& d1, const Density& d2, int grid) {
    if (grid < 512) throw NumericError("convolve: need grid >= 512");
    const Interval w1 = d1.window(), w2 = d2.window();
    const double lo = w1.lo + w2.lo, hi = w1.hi + w2.hi;

    QuadratureConfig cfg;
    cfg.abs_tol = 1e-11;
    GridDensity g;
    g.lo = lo;
    g.hi = hi;
    g.values.resize(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        const double z = g.node(static_cast<std::size_t>(i));
        // integrate over t where both factors live: t in w1, z-t in w2
        const double t_lo = std::max(w1.lo, z - w2.hi);
        const double t_hi = std::min(w1.hi, z - w2.lo);
        double v = 0.0;
        if (t_lo < t_hi) {
            std::vector<double> splits = d1.kink_points;
            for (double k : d2.kink_points) splits.push_back(z - k);
            v = integrate([&](double t) { return d1.pdf(t) * d2.pdf(z - t); }, t_lo, t_hi,
                          splits, cfg);
        }
        g.values[static_cast<std::size_t>(i)] = std::max(0.0, v);
    }
    const double m = g.mass();
    if (!(m > 0.0)) throw NumericError("convolve: zero mass");
    for (double& v : g.values) v /= m;
    return g;
}

std::vector<double> sample(const Density& d, std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = d.quantile(rng.next_unit());
    return out;
}

} // namespace infodens
