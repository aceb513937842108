#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace stieltjescf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
// Scale-invariant defaults; see the per-operation documentation for how each
// threshold enters.
inline constexpr double psd = 1e-9;        // min eigenvalue >= -psd * max(1, ||M||)
inline constexpr double rank = 1e-10;      // eigen/singular values <= rank * max count as zero
inline constexpr double pole = 1e-9;       // relative pole separation / proximity
inline constexpr double herm = 1e-9;       // ||M - M*|| <= herm * max(1, ||M||)
inline constexpr double imag_part = 1e-8;  // computed zeros: |Im| <= imag_part * scale
inline constexpr double cluster = 1e-7;    // relative distance for clustering zeros
inline constexpr double inversion = 1e-8;  // product / value-at-zero residuals
}  // namespace tol

Matrix hermitian_part(const Matrix& m);

// Spectral norm of the Hermitian part; the scale used by all PSD tests.
double hermitian_norm(const Matrix& m);

bool is_finite(const Matrix& m);
bool is_hermitian(const Matrix& m, double tolerance = tol::herm);

// Smallest eigenvalue of (M + M*)/2.
double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);

// min_eigenvalue(m) >= -tolerance * max(1, ||m||).
bool is_psd(const Matrix& m, double tolerance = tol::psd);

// Rank of a Hermitian PSD matrix with relative eigenvalue cutoff.
Eigen::Index psd_rank(const Matrix& m, double cutoff = tol::rank);

// Hermitize and clip eigenvalues below the relative cutoff to zero.  Reports
// the most negative eigenvalue encountered through *worst if non-null.
Matrix psd_clip(const Matrix& m, double cutoff = tol::rank, double* worst = nullptr);

// Factor W = K* K with K of size rank x n (rank-revealing PSD square root).
Matrix psd_factor(const Matrix& w, double cutoff = tol::rank);

// Moore-Penrose pseudo-inverse with relative singular-value cutoff.  If
// smallest_kept is non-null it receives the smallest singular value that
// survived the cutoff (infinity when nothing did), which callers compare
// against their own scale for pole-proximity detection.
Matrix pseudo_inverse(const Matrix& m, double cutoff = tol::rank, double* smallest_kept = nullptr);

// Orthonormal basis (columns) of the range of a Hermitian PSD matrix.
Matrix range_basis(const Matrix& m, double cutoff = tol::rank);

}  // namespace stieltjescf
