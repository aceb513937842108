#pragma once

#include <vector>

#include "stieltjescf/forms.hpp"

namespace stieltjescf {

// Stieltjes continued fraction F(z) = 1/(c_1 z + 1/(c_2 + 1/(c_3 z + ...)))
// with free positive coefficients.  When has_head is set the object denotes
// the full scalar scheme head_linear * z + head_constant - F(z).
struct SFraction {
  std::vector<double> coefficients;
  bool has_head = false;
  double head_linear = 0.0;
  double head_constant = 0.0;
};

Complex evaluate(const SFraction& s, Complex z);

// Contracted d-parameter form d_0/(z + d_1 - d_1 d_2/(z + d_2 + d_3 - ...)).
struct ContractedFraction {
  std::vector<double> d;
};

Complex evaluate(const ContractedFraction& cf, Complex z);

// Measure transform of the fraction with the given positive coefficients:
// a scalar StieltjesForm with zero constant part, poles on (-inf, 0] and
// positive weights.  Throws NonPositiveCoefficient on empty or nonpositive
// input.
StieltjesForm build_from_s_fraction(const std::vector<double>& coefficients);

// Inverse of build_from_s_fraction, by repeated "subtract the pole at
// infinity, subtract the value at infinity, invert" in pole-residue
// arithmetic.  Requires a scalar transform with zero constant part.
SFraction expand_s_fraction(const StieltjesForm& transform);

// Full scalar scheme f(z) = a0 z + b0 - F(z) for an admissible scalar f; the
// returned fraction carries the affine head.
SFraction expand_scalar_stieltjes(const PoleResidueForm& f);

// Closed-form contraction d_0 = 1/c_1, d_k = 1/(c_k c_{k+1}); evaluation
// equality with the source fraction is the contract.
ContractedFraction contract(const SFraction& s);

// Coefficients of f(z) = a_0 z + b_0 - 1/(a_1 z + b_1 - 1/(...)) for a scalar
// admissible f; a_0, b_0 >= 0 and all deeper coefficients strictly positive.
struct ScalarJLevel {
  double a = 0.0;  // multiplies z
  double b = 0.0;
};

std::vector<ScalarJLevel> expand_scalar_j_fraction(const PoleResidueForm& f);

struct HankelReport {
  std::vector<double> moments;     // m_0 .. m_{2 order}
  double hankel_min_eig = 0.0;     // (m_{i+j}), i,j = 0..order
  double shifted_min_eig = 0.0;    // (m_{i+j+1}), i,j = 0..order-1
  bool hankel_pass = false;
  bool shifted_pass = false;
  bool pass = false;
};

// Both Hankel matrices must be PSD for a positive measure on [0, inf).
HankelReport hankel_certificates(const StieltjesForm& h, int order, double tolerance = tol::psd);

}  // namespace stieltjescf
