#include "infodens/ica.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "infodens/format.hpp"
#include "infodens/normal.hpp"
#include "infodens/quadrature.hpp"
#include "infodens/rng.hpp"

namespace infodens {

std::vector<double> DataMatrix::column(std::size_t j) const {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = at(i, j);
    return c;
}

void DataMatrix::validate() const {
    if (p < 2 || n <= p)
        throw std::invalid_argument("data matrix needs n > p >= 2");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("data matrix has a non-finite entry");
}

DataMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("ragged csv row in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("empty csv " + path);
    DataMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.p; ++j) m.at(i, j) = rows[i][j];
    return m;
}

void write_matrix_csv(const DataMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = 0; j < m.p; ++j) {
            if (j) out << ',';
            out << format_full(m.at(i, j));
        }
        out << "\r\n";
    }
}

WhiteningResult whiten(const DataMatrix& X) {
    X.validate();
    const std::size_t n = X.n, p = X.p;

    WhiteningResult r;
    r.mean.assign(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) r.mean[j] += X.at(i, j);
    for (double& m : r.mean) m /= static_cast<double>(n);

    Mat cov(p, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double xj = X.at(i, j) - r.mean[j];
            for (std::size_t k = j; k < p; ++k)
                cov(j, k) += xj * (X.at(i, k) - r.mean[k]);
        }
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t k = j; k < p; ++k) {
            cov(j, k) /= static_cast<double>(n - 1);
            cov(k, j) = cov(j, k);
        }

    EigResult eig;
    try {
        eig = sym_eig(cov, true);
    } catch (const NumericError&) {
        throw NumericError("whiten: sample covariance is rank deficient");
    }
    r.eigvals = eig.d;

    r.W = Mat(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < p; ++k)
                acc += eig.U(i, k) * eig.U(j, k) / std::sqrt(eig.d[k]);
            r.W(i, j) = acc;
        }

    r.Z = DataMatrix(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < p; ++k)
                acc += r.W(j, k) * (X.at(i, k) - r.mean[k]);
            r.Z.at(i, j) = acc;
        }
    return r;
}

std::string ProjectionIndex::name() const {
    switch (kind) {
        case IndexKind::kappa3_sq: return "kappa3_sq";
        case IndexKind::kappa4_sq: return "kappa4_sq";
        case IndexKind::kappa_k: return "kappa" + std::to_string(k);
        case IndexKind::sibson: return "sibson";
        case IndexKind::contrast_cube: return "cube";
        case IndexKind::contrast_quart: return "quart";
    }
    return "unknown";
}

ProjectionIndex ProjectionIndex::from_name(const std::string& name) {
    ProjectionIndex idx;
    if (name == "kappa3_sq") { idx.kind = IndexKind::kappa3_sq; idx.k = 3; return idx; }
    if (name == "kappa4_sq") { idx.kind = IndexKind::kappa4_sq; idx.k = 4; return idx; }
    if (name == "sibson") { idx.kind = IndexKind::sibson; return idx; }
    if (name == "cube" || name == "contrast_cube") {
        idx.kind = IndexKind::contrast_cube;
        return idx;
    }
    if (name == "quart" || name == "contrast_quart") {
        idx.kind = IndexKind::contrast_quart;
        return idx;
    }
    if (name.rfind("kappa", 0) == 0) {
        int k = std::stoi(name.substr(5));
        if (k < 3 || k > 6)
            throw std::invalid_argument("kappa_k supports k in 3..6, got " + name);
        idx.kind = IndexKind::kappa_k;
        idx.k = k;
        return idx;
    }
    throw std::invalid_argument("unknown projection index: " + name);
}

namespace {

struct SampleMoments {
    double mean = 0.0;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0, m5 = 0.0, m6 = 0.0; // central, divisor n
};

SampleMoments central_moments(const std::vector<double>& xs, int upto) {
    if (xs.size() < 8) throw NumericError("sample too small for cumulants");
    SampleMoments m;
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(xs.size());
    for (double x : xs) {
        double d = x - m.mean;
        double d2 = d * d;
        m.m2 += d2;
        m.m3 += d2 * d;
        m.m4 += d2 * d2;
        if (upto >= 5) m.m5 += d2 * d2 * d;
        if (upto >= 6) m.m6 += d2 * d2 * d2;
    }
    double n = static_cast<double>(xs.size());
    m.m2 /= n; m.m3 /= n; m.m4 /= n; m.m5 /= n; m.m6 /= n;
    if (m.m2 <= 0.0) throw NumericError("degenerate sample: zero variance");
    return m;
}

// standardized cumulants k3..k6 from central moments
void standardized_cumulants(const SampleMoments& m, double& k3, double& k4,
                            double& k5, double& k6) {
    double s = std::sqrt(m.m2);
    double z3 = m.m3 / (m.m2 * s);
    double z4 = m.m4 / (m.m2 * m.m2);
    double z5 = m.m5 / (m.m2 * m.m2 * s);
    double z6 = m.m6 / (m.m2 * m.m2 * m.m2);
    k3 = z3;
    k4 = z4 - 3.0;
    k5 = z5 - 10.0 * z3;
    k6 = z6 - 15.0 * z4 - 10.0 * z3 * z3 + 30.0;
}

double raw_mean_pow(const std::vector<double>& xs, int pow) {
    double acc = 0.0;
    for (double x : xs) {
        double t = x;
        for (int i = 1; i < pow; ++i) t *= x;
        acc += t;
    }
    return acc / static_cast<double>(xs.size());
}

} // namespace

double index_value(const ProjectionIndex& idx, const std::vector<double>& xs) {
    if (idx.kind == IndexKind::contrast_cube) {
        central_moments(xs, 2); // degeneracy check only
        return std::fabs(raw_mean_pow(xs, 3));
    }
    if (idx.kind == IndexKind::contrast_quart) {
        central_moments(xs, 2);
        return std::fabs(raw_mean_pow(xs, 4) - 3.0);
    }

    SampleMoments m = central_moments(xs, idx.kind == IndexKind::kappa_k ? idx.k : 4);
    double k3, k4, k5, k6;
    standardized_cumulants(m, k3, k4, k5, k6);
    switch (idx.kind) {
        case IndexKind::kappa3_sq: return k3 * k3;
        case IndexKind::kappa4_sq: return k4 * k4;
        case IndexKind::sibson: return (k3 * k3 + k4 * k4 / 4.0) / 12.0;
        case IndexKind::kappa_k: {
            double kk = idx.k == 3 ? k3 : idx.k == 4 ? k4 : idx.k == 5 ? k5 : k6;
            return std::pow(std::fabs(kk), 2.0 / idx.k);
        }
        default: break;
    }
    throw std::logic_error("unhandled projection index");
}

namespace {

// moments of the projection v'Z and the direction vectors
// mean(z (v'z)^2), mean(z (v'z)^3) used by all gradients
struct ProjectionStats {
    double m3 = 0.0, m4 = 0.0;     // raw mean((v'z)^3), mean((v'z)^4)
    std::vector<double> zc2, zc3;  // mean(z (v'z)^2), mean(z (v'z)^3)
};

ProjectionStats projection_stats(const DataMatrix& Z, const std::vector<double>& v) {
    if (v.size() != Z.p) throw std::invalid_argument("gradient_T: bad direction size");
    ProjectionStats s;
    s.zc2.assign(Z.p, 0.0);
    s.zc3.assign(Z.p, 0.0);
    for (std::size_t i = 0; i < Z.n; ++i) {
        double y = 0.0;
        for (std::size_t j = 0; j < Z.p; ++j) y += v[j] * Z.at(i, j);
        double y2 = y * y, y3 = y2 * y;
        s.m3 += y3;
        s.m4 += y3 * y;
        for (std::size_t j = 0; j < Z.p; ++j) {
            s.zc2[j] += Z.at(i, j) * y2;
            s.zc3[j] += Z.at(i, j) * y3;
        }
    }
    double n = static_cast<double>(Z.n);
    s.m3 /= n;
    s.m4 /= n;
    for (double& x : s.zc2) x /= n;
    for (double& x : s.zc3) x /= n;
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : (x > 0.0 ? 1.0 : 0.0); }

} // namespace

std::vector<double> gradient_T(const ProjectionIndex& idx, const DataMatrix& Z,
                               const std::vector<double>& v) {
    ProjectionStats s = projection_stats(Z, v);
    const std::size_t p = Z.p;
    std::vector<double> g(p, 0.0);
    const double vv = dot(v, v);

    // smooth extensions differentiated exactly:
    //   cube      |m3(v)|                     -> sign(m3) 3 mean(z (v'z)^2)
    //   quart     |m4(v) - 3|                 -> sign(m4-3) 4 mean(z (v'z)^3)
    //   kappa3_sq (m3(v))^2                   -> 6 m3 mean(z (v'z)^2)
    //   kappa4_sq (m4(v) - 3 (v'v)^2)^2       -> 8 k4 (mean(z (v'z)^3) - 3 (v'v) v)
    //   sibson    combination of the previous two with weights 1/12, 1/48
    switch (idx.kind) {
        case IndexKind::contrast_cube: {
            double c = 3.0 * sign_of(s.m3);
            for (std::size_t j = 0; j < p; ++j) g[j] = c * s.zc2[j];
            return g;
        }
        case IndexKind::contrast_quart: {
            double c = 4.0 * sign_of(s.m4 - 3.0);
            for (std::size_t j = 0; j < p; ++j) g[j] = c * s.zc3[j];
            return g;
        }
        case IndexKind::kappa3_sq: {
            double c = 6.0 * s.m3;
            for (std::size_t j = 0; j < p; ++j) g[j] = c * s.zc2[j];
            return g;
        }
        case IndexKind::kappa4_sq: {
            double k4 = s.m4 - 3.0 * vv * vv;
            for (std::size_t j = 0; j < p; ++j)
                g[j] = 8.0 * k4 * (s.zc3[j] - 3.0 * vv * v[j]);
            return g;
        }
        case IndexKind::sibson: {
            double k4 = s.m4 - 3.0 * vv * vv;
            for (std::size_t j = 0; j < p; ++j)
                g[j] = 0.5 * s.m3 * s.zc2[j] +
                       (1.0 / 6.0) * k4 * (s.zc3[j] - 3.0 * vv * v[j]);
            return g;
        }
        case IndexKind::kappa_k: {
            // |k|^{2/k} has unbounded slope at k = 0; report a zero gradient
            // there so the pursuit loop restarts instead of producing NaN
            if (idx.k == 3) {
                if (std::fabs(s.m3) < 1e-200) return g;
                double c = (2.0 / 3.0) * std::pow(std::fabs(s.m3), -1.0 / 3.0) *
                           sign_of(s.m3) * 3.0;
                for (std::size_t j = 0; j < p; ++j) g[j] = c * s.zc2[j];
                return g;
            }
            if (idx.k == 4) {
                double k4 = s.m4 - 3.0 * vv * vv;
                if (std::fabs(k4) < 1e-200) return g;
                double c = 0.5 * std::pow(std::fabs(k4), -0.5) * sign_of(k4);
                for (std::size_t j = 0; j < p; ++j)
                    g[j] = c * 4.0 * (s.zc3[j] - 3.0 * vv * v[j]);
                return g;
            }
            throw NumericError("gradient for kappa_k only supports k in {3,4}");
        }
    }
    throw std::logic_error("unhandled projection index");
}

namespace {

// pursuit step direction; the quart contrast uses the fixed-point form
// mean(z (v'z)^3) - 3v whose extra radial term does not change the fixed
// points on the sphere but damps the oscillation of the raw gradient
std::vector<double> pursuit_direction(const ProjectionIndex& idx, const DataMatrix& Z,
                                      const std::vector<double>& v) {
    if (idx.kind == IndexKind::contrast_quart ||
        (idx.kind == IndexKind::kappa_k && idx.k == 4)) {
        ProjectionStats s = projection_stats(Z, v);
        std::vector<double> g(Z.p);
        for (std::size_t j = 0; j < Z.p; ++j) g[j] = s.zc3[j] - 3.0 * v[j];
        return g;
    }
    return gradient_T(idx, Z, v);
}

std::vector<double> random_unit(std::size_t p, SplitMix64& rng) {
    std::vector<double> v(p);
    double nrm = 0.0;
    do {
        nrm = 0.0;
        for (double& x : v) {
            x = norm_quantile(rng.next_unit());
            nrm += x * x;
        }
    } while (nrm < 1e-12);
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
    return v;
}

void project_out(std::vector<double>& v, const Mat& V1, int ncols) {
    for (int c = 0; c < ncols; ++c) {
        double d = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) d += v[i] * V1(i, c);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * V1(i, c);
    }
}

} // namespace

IcaResult fixed_point_pursuit(const DataMatrix& Z, const Mat& W,
                              const ProjectionIndex& idx, int q, std::uint64_t seed,
                              int max_iter, double tol) {
    Z.validate();
    const std::size_t p = Z.p;
    if (q < 1 || static_cast<std::size_t>(q) > p)
        throw std::invalid_argument("fixed_point_pursuit: need 1 <= q <= p");
    if (!(tol > 0.0)) throw std::invalid_argument("fixed_point_pursuit: tol must be > 0");

    SplitMix64 rng(seed);
    IcaResult res;
    res.V1 = Mat(p, static_cast<std::size_t>(q));
    res.iterations.assign(q, 0);
    res.converged.assign(q, false);
    res.component_index_values.assign(q, 0.0);

    for (int j = 0; j < q; ++j) {
        std::vector<double> v;
        int restarts = 0;
        bool need_init = true;
        int it = 0;
        while (it < max_iter) {
            if (need_init) {
                v = random_unit(p, rng);
                project_out(v, res.V1, j);
                double nrm = std::sqrt(dot(v, v));
                if (nrm < 1e-8) continue; // drew inside the found subspace
                for (double& x : v) x /= nrm;
                need_init = false;
            }
            ++it;
            std::vector<double> t = pursuit_direction(idx, Z, v);
            project_out(t, res.V1, j);
            double nrm = std::sqrt(dot(t, t));
            if (nrm < 1e-12) {
                if (++restarts > 10)
                    throw NumericError("fixed_point_pursuit: gradient vanished after 10 restarts");
                need_init = true;
                continue;
            }
            for (double& x : t) x /= nrm;
            double align = std::fabs(dot(t, v));
            v = t;
            if (align > 1.0 - tol) {
                res.converged[j] = true;
                break;
            }
        }
        res.iterations[j] = it;
        for (std::size_t i = 0; i < p; ++i) res.V1(i, j) = v[i];

        std::vector<double> xs(Z.n);
        for (std::size_t i = 0; i < Z.n; ++i) {
            double acc = 0.0;
            for (std::size_t c = 0; c < p; ++c) acc += v[c] * Z.at(i, c);
            xs[i] = acc;
        }
        res.component_index_values[j] = index_value(idx, xs);
    }

    res.unmixing = matmul(transpose(res.V1), W);
    return res;
}

namespace {

// random rotation as a product of Givens rotations with uniform angles
Mat random_rotation(std::size_t p, SplitMix64& rng) {
    Mat r = Mat::identity(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            double th = 2.0 * M_PI * rng.next_unit();
            double c = std::cos(th), s = std::sin(th);
            for (std::size_t k = 0; k < p; ++k) {
                double a = r(k, i), b = r(k, j);
                r(k, i) = c * a - s * b;
                r(k, j) = s * a + c * b;
            }
        }
    return r;
}

} // namespace

ProjectionBoundReport projection_bound_check(const std::vector<Density>& sources,
                              const ProjectionIndex& idx, int n, int trials,
                              std::uint64_t seed) {
    const std::size_t p = sources.size();
    if (p < 2) throw std::invalid_argument("projection_bound_check: need >= 2 sources");

    SplitMix64 rng(seed);
    DataMatrix S(static_cast<std::size_t>(n), p);
    for (std::size_t j = 0; j < p; ++j) {
        Density st = standardize(sources[j]);
        std::vector<double> col = sample(st, static_cast<std::size_t>(n), rng.next_u64());
        for (std::size_t i = 0; i < S.n; ++i) S.at(i, j) = col[i];
    }

    Mat R = random_rotation(p, rng);
    DataMatrix X(S.n, p);
    for (std::size_t i = 0; i < S.n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < p; ++k) acc += R(j, k) * S.at(i, k);
            X.at(i, j) = acc;
        }

    WhiteningResult wh = whiten(X);

    ProjectionBoundReport rep;
    rep.trials = trials;
    rep.epsilon = 10.0 * std::sqrt(24.0 / static_cast<double>(n));
    rep.component_values.resize(p);
    rep.max_component = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        rep.component_values[j] = index_value(idx, S.column(j));
        rep.max_component = std::max(rep.max_component, rep.component_values[j]);
    }

    rep.max_projection = 0.0;
    std::vector<double> xs(wh.Z.n);
    for (int t = 0; t < trials; ++t) {
        std::vector<double> v = random_unit(p, rng);
        for (std::size_t i = 0; i < wh.Z.n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < p; ++j) acc += v[j] * wh.Z.at(i, j);
            xs[i] = acc;
        }
        rep.max_projection = std::max(rep.max_projection, index_value(idx, xs));
    }
    rep.pass = rep.max_projection <= rep.max_component + rep.epsilon;
    return rep;
}

double amari_index(const Mat& a_est, const Mat& a_true) {
    if (a_est.rows != a_est.cols || a_true.rows != a_true.cols ||
        a_est.rows != a_true.rows)
        throw std::invalid_argument("amari_index: need square matrices of equal size");
    Mat P = matmul(a_est, inverse(a_true));
    const std::size_t q = P.rows;
    if (q < 2) throw std::invalid_argument("amari_index: need q >= 2");

    double acc = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        double sum = 0.0, mx = 0.0;
        for (std::size_t j = 0; j < q; ++j) {
            double v = std::fabs(P(i, j));
            sum += v;
            mx = std::max(mx, v);
        }
        if (mx <= 0.0) throw NumericError("amari_index: zero row");
        acc += sum / mx - 1.0;
    }
    for (std::size_t j = 0; j < q; ++j) {
        double sum = 0.0, mx = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            double v = std::fabs(P(i, j));
            sum += v;
            mx = std::max(mx, v);
        }
        if (mx <= 0.0) throw NumericError("amari_index: zero column");
        acc += sum / mx - 1.0;
    }
    return acc / (2.0 * static_cast<double>(q) * static_cast<double>(q - 1));
}

MixtureSim simulate_mixture(const std::vector<Density>& sources, const Mat* A, int n,
                            std::uint64_t seed) {
    const std::size_t p = sources.size();
    if (p < 2) throw std::invalid_argument("simulate_mixture: need >= 2 sources");
    if (static_cast<std::size_t>(n) <= p)
        throw std::invalid_argument("simulate_mixture: need n > p");

    SplitMix64 rng(seed);
    MixtureSim sim;
    sim.S = DataMatrix(static_cast<std::size_t>(n), p);
    for (std::size_t j = 0; j < p; ++j) {
        Density st = standardize(sources[j]);
        std::vector<double> col = sample(st, static_cast<std::size_t>(n), rng.next_u64());
        for (std::size_t i = 0; i < sim.S.n; ++i) sim.S.at(i, j) = col[i];
    }

    if (A) {
        if (A->rows != p || A->cols != p)
            throw std::invalid_argument("simulate_mixture: mixing matrix must be p x p");
        inverse(*A); // throws when the requested matrix is singular
        sim.M = *A;
    } else {
        for (int attempt = 0; attempt < 100; ++attempt) {
            Mat M(p, p);
            for (double& x : M.a) x = norm_quantile(rng.next_unit());
            Mat gram = matmul(transpose(M), M);
            EigResult eig;
            try {
                eig = sym_eig(gram, true);
            } catch (const NumericError&) {
                continue;
            }
            double cond = std::sqrt(eig.d.front() / eig.d.back());
            if (cond <= 20.0) {
                sim.M = M;
                break;
            }
        }
        if (sim.M.rows == 0)
            throw NumericError("simulate_mixture: no well-conditioned mixing matrix found");
    }

    sim.X = DataMatrix(sim.S.n, p);
    for (std::size_t i = 0; i < sim.S.n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < p; ++k) acc += sim.M(j, k) * sim.S.at(i, k);
            sim.X.at(i, j) = acc;
        }
    return sim;
}

} // namespace infodens
