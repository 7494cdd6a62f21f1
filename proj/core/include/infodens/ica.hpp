#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infodens/density.hpp"
#include "infodens/matrix.hpp"

namespace infodens {

// whitening, projection indices, and deflationary fixed-point projection
// pursuit for blind source separation

struct DataMatrix {
    std::size_t n = 0; // observations (rows)
    std::size_t p = 0; // dimension (columns)
    std::vector<double> values; // row-major

    DataMatrix() = default;
    DataMatrix(std::size_t n_, std::size_t p_) : n(n_), p(p_), values(n_ * p_, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return values[i * p + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * p + j]; }

    std::vector<double> column(std::size_t j) const;
    void validate() const; // n > p >= 2, finite entries
};

// headerless CSV, one observation per row
DataMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const DataMatrix& m, const std::string& path);

struct WhiteningResult {
    std::vector<double> mean;    // column means of X
    Mat W;                       // Cov(X)^{-1/2} = U D^{-1/2} U'
    std::vector<double> eigvals; // descending covariance eigenvalues
    DataMatrix Z;                // (X - mean) W'
};

// sample covariance uses divisor n-1; throws on rank deficiency
WhiteningResult whiten(const DataMatrix& X);

enum class IndexKind { kappa3_sq, kappa4_sq, kappa_k, sibson, contrast_cube, contrast_quart };

struct ProjectionIndex {
    IndexKind kind = IndexKind::kappa4_sq;
    int k = 4; // cumulant order, kappa_k only

    std::string name() const;
    static ProjectionIndex from_name(const std::string& name);
};

// kappa3_sq -> k3^2; kappa4_sq -> k4^2; kappa_k -> |k_k|^{2/k} (k in 3..6);
// sibson -> (k3^2 + k4^2/4)/12; contrast_cube -> |mean(xs^3)|;
// contrast_quart -> |mean(xs^4) - 3|. Cumulants are standardized sample
// cumulants (divisor n), so the kappa indices are scale-free.
double index_value(const ProjectionIndex& idx, const std::vector<double>& xs);

// closed-form sample gradient of the index field at v (Z whitened, |v| = 1);
// each formula is the exact derivative of a documented smooth extension of
// the index off the unit sphere, so central finite differences of that
// extension match to O(h^2)
std::vector<double> gradient_T(const ProjectionIndex& idx, const DataMatrix& Z,
                               const std::vector<double>& v);

struct IcaResult {
    Mat V1;       // p x q, orthonormal columns
    Mat unmixing; // q x p, V1' W
    std::vector<double> component_index_values;
    std::vector<int> iterations;
    std::vector<bool> converged;
};

// deflationary fixed-point pursuit: for each component, iterate
// v <- normalize(project_out_previous(step(v))) until |<v_new, v_old>|
// exceeds 1 - tol (sign-flip safe). Zero gradient triggers a fresh seeded
// restart (at most 10). W is the whitening matrix used to form unmixing.
IcaResult fixed_point_pursuit(const DataMatrix& Z, const Mat& W,
                              const ProjectionIndex& idx, int q, std::uint64_t seed,
                              int max_iter = 500, double tol = 1e-6);

struct ProjectionBoundReport {
    std::vector<double> component_values; // D(z_j) on the unmixed sources
    double max_component = 0.0;
    double max_projection = 0.0; // max over random v of D(v' x_st)
    double epsilon = 0.0;        // sampling slack 10 sqrt(24/n)
    int trials = 0;
    bool pass = false;
};

// mixes independent standardized sources with a seeded random rotation,
// whitens, and scans random unit projections for violations of
// max_v D(v'x_st) <= max_j D(z_j) + epsilon
ProjectionBoundReport projection_bound_check(const std::vector<Density>& sources,
                              const ProjectionIndex& idx, int n, int trials,
                              std::uint64_t seed);

// normalized row/column criterion of P = A_est A_true^{-1}, in [0,1];
// 0 iff P is a scaled permutation
double amari_index(const Mat& a_est, const Mat& a_true);

struct MixtureSim {
    DataMatrix X; // mixed observations, X = S M'
    Mat M;        // mixing matrix actually used
    DataMatrix S; // standardized independent sources
};

// A = nullptr requests a seeded random mixing matrix with condition <= 20
MixtureSim simulate_mixture(const std::vector<Density>& sources, const Mat* A, int n,
                            std::uint64_t seed);

} // namespace infodens
