#pragma once

#include <cstddef>
#include <vector>

namespace infodens {

// row-major dense matrix; dimensions are small (p <= 50) so everything is
// plain loops with value semantics
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n);
};

Mat matmul(const Mat& x, const Mat& y);
Mat transpose(const Mat& x);
Mat inverse(const Mat& x); // Gauss-Jordan with partial pivoting; throws on singular
double frobenius(const Mat& x);

struct EigResult {
    Mat U;                  // orthonormal columns, eigenvectors
    std::vector<double> d;  // eigenvalues, descending
};

// cyclic Jacobi for symmetric matrices: sweeps of plane rotations until the
// off-diagonal Frobenius mass drops below 1e-12; eigenvalues sorted
// descending with eigenvector columns permuted to match. Throws NumericError
// when a non-positive eigenvalue shows up and require_spd is set.
EigResult sym_eig(const Mat& s, bool require_spd = true);

} // namespace infodens
