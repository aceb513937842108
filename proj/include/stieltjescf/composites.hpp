#pragma once

#include <functional>
#include <vector>

#include "stieltjescf/forms.hpp"

namespace stieltjescf {

struct ConductivityPair {
  Complex sigma1;
  Complex sigma2;
};

// Coated-inclusion geometry: dimension 2 or 3, core fractions strictly inside
// (0, 1).  The shell parameters (1 - c_j)/dimension are derived, never stored.
class CoatingSpec {
public:
  CoatingSpec(int dimension, std::vector<double> fractions);

  int dimension() const { return dimension_; }
  const std::vector<double>& fractions() const { return fractions_; }
  double shell_parameter(std::size_t j) const {
    return (1.0 - fractions_[j]) / static_cast<double>(dimension_);
  }
  std::size_t depth() const { return fractions_.size(); }

private:
  int dimension_;
  std::vector<double> fractions_;
};

// Two-scale laminate: weights a_alpha summing to 1, proportions q_alpha in
// [0, 1].
class LaminateSpec {
public:
  LaminateSpec(std::vector<double> weights, std::vector<double> proportions);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& proportions() const { return proportions_; }

private:
  std::vector<double> weights_;
  std::vector<double> proportions_;
};

// Coated-sphere (dim 3) / coated-disk (dim 2) effective conductivity.
// Returns sigma2 exactly when the phases coincide.
Complex hs_coated(Complex sigma1, Complex sigma2, double c1, int dim);

// Same formula with a microstructured core of effective conductivity
// sigma_core in place of the pure phase.
Complex hs_nested(Complex sigma_core, Complex sigma2, double c1, int dim);

// Normalized effective conductivity f(z) = sigma*(z, 1) of the multicoated
// assemblage, evaluated bottom-up on the truncated continued fraction.  The
// fraction has removable intermediate singularities at z = 1; evaluation
// switches to the coating-substitution route there.
Complex multicoat(Complex z, const CoatingSpec& spec);

// sigma*(s1,s2) * sigma*(s2,s1) - s1 s2 for a two-argument effective function.
Complex keller_residual(const std::function<Complex(Complex, Complex)>& effective, Complex sigma1,
                        Complex sigma2);

// Matrix version with the 90-degree rotation: S12 R S21 R^T - s1 s2 I.
Matrix phase_interchange_residual(const Matrix& s12, const Matrix& s21, Complex sigma1,
                                  Complex sigma2);

// Lamination update sigma* = s2 I + c1 s2 [(1-c1) M1 - s2 (s2 I - core)^{-1}]^{-1}
// with M1 real symmetric PSD of trace 1.
Matrix tartar_formula(const Matrix& sigma_star_1, Complex sigma2, double c1,
                      const Eigen::Matrix2d& m1);

// Arithmetic average of the per-layer harmonic averages.
Complex laminate_parallel(Complex sigma1, Complex sigma2, const LaminateSpec& spec);

// s1 s2 / laminate_parallel with the phases swapped.
Complex laminate_perp(Complex sigma1, Complex sigma2, const LaminateSpec& spec);

struct LaminateSynthesis {
  std::vector<double> weights;
  std::vector<double> proportions;
  double total_weight = 0.0;  // equals f(1)
  bool normalized = false;    // |total_weight - 1| <= 1e-10

  LaminateSpec spec() const;  // throws InvalidForm when not normalized
};

// Reads the measure of f/z and maps each term to a laminate branch:
// q = mu/(1+mu), a = r/(1+mu); the constant part maps to q = 1 and the mass
// at zero to q = 0.  Unnormalized inputs are returned flagged, not thrown.
LaminateSynthesis synthesize_laminate(const PoleResidueForm& f);

// Recovers 2-D coating fractions from a normalized rational effective
// function by alternating shielding evaluations and single-coat peels.
// Probes the phase-interchange identity first and throws NotRealizable when
// it fails or no trivial remainder appears within max_depth peels.
CoatingSpec extract_coatings(const std::function<Complex(Complex)>& f, int dimension,
                             int max_depth);

}  // namespace stieltjescf
