#pragma once

// Deterministic generators for admissible random instances.  The constant
// term is assembled as B = B' + sum C_j/lambda_j with PSD B', so f(0) = B' is
// PSD by construction and certification is guaranteed to pass.

#include <utility>
#include <vector>

#include "stieltjescf/forms.hpp"
#include "stieltjescf/verification.hpp"

namespace testsupport {

using stieltjescf::Complex;
using stieltjescf::Matrix;
using stieltjescf::Pole;
using stieltjescf::PoleResidueForm;
using stieltjescf::SplitMix64;

inline Matrix random_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return m;
}

inline Matrix random_psd(SplitMix64& rng, Eigen::Index n, Eigen::Index rank) {
  if (rank == 0) return Matrix::Zero(n, n);
  const Matrix g = random_matrix(rng, n, rank);
  return g * g.adjoint();
}

inline std::vector<double> separated_lambdas(SplitMix64& rng, int count) {
  std::vector<double> lambdas;
  while (static_cast<int>(lambdas.size()) < count) {
    const double candidate = rng.uniform(0.2, 5.0);
    bool ok = true;
    for (double l : lambdas)
      if (std::abs(candidate - l) < 0.08 * (1.0 + l)) ok = false;
    if (ok) lambdas.push_back(candidate);
  }
  return lambdas;
}

// Admissible instance with mixed residue ranks 1..n and optional linear term.
inline PoleResidueForm random_admissible(SplitMix64& rng, Eigen::Index n, int pole_count) {
  const Eigen::Index linear_rank = static_cast<Eigen::Index>(rng.next() % (n + 1));
  Matrix a = random_psd(rng, n, linear_rank);
  Matrix b_head = random_psd(rng, n, n);
  const auto lambdas = separated_lambdas(rng, pole_count);
  std::vector<Pole> poles;
  Matrix b = std::move(b_head);
  for (double lambda : lambdas) {
    const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng.next() % n);
    Matrix c = random_psd(rng, n, rank);
    b += c / lambda;
    poles.push_back({lambda, std::move(c)});
  }
  return PoleResidueForm(std::move(a), std::move(b), std::move(poles));
}

}  // namespace testsupport
