#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "stieltjescf/linalg.hpp"

namespace stieltjescf {

struct Pole {
  double lambda = 0.0;  // pole at z = -lambda
  Matrix residue;       // PSD weight
};

// Rational matrix function f(z) = A z + B - sum_j C_j / (z + lambda_j) with
// PSD coefficients and poles on the negative real axis.  Construction
// canonicalizes: poles are sorted ascending, poles within a relative distance
// of tol::pole are merged (residues summed), and zero residues are dropped.
// Values are immutable after construction.
class PoleResidueForm {
public:
  PoleResidueForm(Matrix linear, Matrix constant, std::vector<Pole> poles);

  // Scalar convenience: f(z) = a z + b - sum c_j/(z + lambda_j).
  static PoleResidueForm scalar(double a, double b,
                                std::vector<std::pair<double, double>> poles = {});

  Eigen::Index dim() const { return linear_.rows(); }
  const Matrix& linear_term() const { return linear_; }
  const Matrix& constant_term() const { return constant_; }
  const std::vector<Pole>& poles() const { return poles_; }
  bool is_scalar() const { return dim() == 1; }

  // f(0) = B - sum C_j / lambda_j.  Requires all lambda_j > 0.
  Matrix value_at_zero() const;
  // f'(0) = A + sum C_j / lambda_j^2 (closed form).
  Matrix derivative_at_zero() const;

private:
  Matrix linear_;
  Matrix constant_;
  std::vector<Pole> poles_;
};

// h(z) = A + sum_j A_j / (z + lambda_j) with lambda_j >= 0 (at most one zero).
class StieltjesForm {
public:
  struct Term {
    double lambda = 0.0;
    Matrix weight;
  };

  StieltjesForm(Matrix constant, std::vector<Term> terms);

  static StieltjesForm scalar(double a, std::vector<std::pair<double, double>> terms = {});

  Eigen::Index dim() const { return constant_.rows(); }
  const Matrix& constant_term() const { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_scalar() const { return dim() == 1; }

private:
  Matrix constant_;
  std::vector<Term> terms_;
};

struct MeasureDecomposition {
  Matrix constant;                          // the A in f(z) = z[A + transform]
  Matrix total_mass;                        // measure of [0, inf)
  std::vector<StieltjesForm::Term> shifted; // weights of t * (d measure), all at lambda > 0
  Matrix point_mass_at_zero;
};

// f(z) = z [ A + K* (S + z I)^{-1} K ] with S diagonal nonnegative.
struct RealizationForm {
  Matrix constant;     // A, n x n PSD
  Matrix coupling;     // K, m x n
  RealVector spectrum; // diag(S), m entries >= 0
};

Matrix evaluate(const PoleResidueForm& f, Complex z);
Matrix evaluate(const StieltjesForm& h, Complex z);
Matrix evaluate(const RealizationForm& r, Complex z);

// g(z) = z f(1/z).  Throws NotAdmissible if f fails certification.
PoleResidueForm reflect(const PoleResidueForm& f);

// f(z) + A1 z + B1 with A1 PSD and B1 Hermitian, B1 >= -f(0).
PoleResidueForm translate(const PoleResidueForm& f, const Matrix& a1, const Matrix& b1);

// h = f / z: constant A, weight f(0) at lambda = 0 (dropped when zero),
// weight C_j / lambda_j at each pole.
StieltjesForm to_stieltjes(const PoleResidueForm& f);

// f = z h: exact inverse bookkeeping of to_stieltjes.
PoleResidueForm from_stieltjes(const StieltjesForm& h);

MeasureDecomposition decompose_measure(const StieltjesForm& h);

// delta(f) = sum_j rank(C_j).
Eigen::Index partial_mcmillan_degree(const PoleResidueForm& f, double rank_cutoff = tol::rank);

// Dilation realization built from the Stieltjes weights.
RealizationForm build_realization(const PoleResidueForm& f);

}  // namespace stieltjescf
