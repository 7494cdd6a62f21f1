#include "infodens/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "infodens/quadrature.hpp" // NumericError

namespace infodens {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat matmul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw NumericError("matmul: dimension mismatch");
    Mat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const double v = x(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
        }
    return r;
}

Mat transpose(const Mat& x) {
    Mat r(x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
    return r;
}

Mat inverse(const Mat& x) {
    if (x.rows != x.cols) throw NumericError("inverse: matrix not square");
    const std::size_t n = x.rows;
    Mat a = x, inv = Mat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
        if (std::fabs(a(piv, col)) < 1e-300) throw NumericError("inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const double s = 1.0 / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= s;
            inv(col, j) *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

double frobenius(const Mat& x) {
    double s = 0.0;
    for (double v : x.a) s += v * v;
    return std::sqrt(s);
}

namespace {
double offdiag_sq(const Mat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return s;
}
} // namespace

EigResult sym_eig(const Mat& s, bool require_spd) {
    if (s.rows != s.cols) throw NumericError("sym_eig: matrix not square");
    const std::size_t n = s.rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(s(i, j) - s(j, i)) > 1e-10 * (1.0 + std::fabs(s(i, j))))
                throw NumericError("sym_eig: matrix not symmetric");

    Mat a = s, u = Mat::identity(n);
    for (int sweep = 0; sweep < 100 && offdiag_sq(a) >= 1e-24; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                // rotation angle zeroing a(p,q)
                const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double ukp = u(k, p), ukq = u(k, q);
                    u(k, p) = c * ukp - sn * ukq;
                    u(k, q) = sn * ukp + c * ukq;
                }
            }
    }
    // off-diagonal Frobenius mass must be < 1e-12 before we accept
    if (std::sqrt(offdiag_sq(a)) >= 1e-12)
        throw NumericError("sym_eig: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigResult r;
    r.U = Mat(n, n);
    r.d.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        r.d[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) r.U(i, j) = u(i, order[j]);
    }
    if (require_spd && r.d.back() <= 0.0)
        throw NumericError("sym_eig: non-positive eigenvalue (matrix not SPD)");
    return r;
}

} // namespace infodens
