#pragma once

#include <vector>

#include "stieltjescf/forms.hpp"

namespace stieltjescf {

struct RangeProjection {
  Matrix projector;  // n x n orthogonal projector onto range(sum of summands)
  Matrix basis;      // n x r, orthonormal columns spanning that range
};

// Projector onto the range of C_1 + ... + C_d (all PSD).  A zero sum yields
// the zero projector with an empty basis.
RangeProjection range_projection(const std::vector<Matrix>& summands, double cutoff = tol::rank);

// Given R(z) = -sum_j C_j/(z + lambda_j) with lambda_j > 0 and C_j PSD,
// returns -[R]^{-1} as an admissible form: the Moore-Penrose style inverse
// that acts as -(Pi R Pi)^{-1} on the range V of sum C_j and as 0 on its
// orthogonal complement.  Zeros of the compressed determinant are located by
// a block-companion eigensolve; residues come from null-space blocks, with a
// least-squares partial-fraction fallback on the same pole set if the product
// invariant degrades.  Throws NullFunction when all residues vanish and
// ComplexZero when a computed zero leaves the negative real semi-axis beyond
// tolerance.
PoleResidueForm pseudo_invert_pole_sum(const std::vector<Pole>& poles);

struct ReductionStep {
  Matrix value_at_zero;           // the level's constant coefficient, f(0)
  Matrix derivative_at_zero;      // the level's linear coefficient, f'(0)
  PoleResidueForm next;           // -[(f(z) - f(0) - f'(0) z)/z^2]^{-1}
  Eigen::Index inverted_rank = 0; // rank of the summed residues at the inversion
};

// One degree-reducing step.  Throws DegreeZero when f has no finite poles.
ReductionStep reduction_step(const PoleResidueForm& f);

struct JLevel {
  Matrix constant;  // A_k
  Matrix linear;    // B_k
};

// Layout of the continued fraction the levels encode.  primal: value of each
// level is A_k + B_k z with numerators z^2.  classical: value A_k + B_k z with
// numerators 1 (the shape of z f(1/z)).
enum class JLayout { primal, classical };

struct JFraction {
  JLayout layout = JLayout::primal;
  std::vector<JLevel> levels;

  Eigen::Index dim() const { return levels.empty() ? 0 : levels.front().constant.rows(); }
};

struct ExpansionStep {
  Eigen::Index degree_before = 0;
  Eigen::Index inverted_rank = 0;  // rank of the summed residues at this inversion
  Eigen::Index degree_after = 0;
};
using ExpansionTrace = std::vector<ExpansionStep>;

// Iterates reduction_step until the degree hits zero, then stores the affine
// remainder as a terminal (constant, linear) level.  At most delta(f)+1
// levels.  Throws NonDecreasingDegree if a step fails to reduce the degree.
JFraction expand_j_fraction(const PoleResidueForm& f, ExpansionTrace* trace = nullptr);

// Bottom-up evaluation with Moore-Penrose pseudo-inverses at each level.
// Throws PoleProximity when an inner denominator is singular in a direction
// that carries weight (detected via the smallest kept singular value).
Matrix evaluate(const JFraction& jf, Complex z);

// Levels of z f(1/z): swaps each level's (constant, linear) pair and flips
// the layout tag.  Involutive; evaluation satisfies
// z * evaluate(jf, 1/z) == evaluate(classical_form(jf), z).
JFraction classical_form(const JFraction& jf);

namespace detail {

// Inversion core on the compressed space V.  Accepts lambda >= 0 (at most one
// zero) when allow_zero_lambda is set; the public operation enforces strict
// positivity.  Returned matrices are r x r where r = rank(sum residues).
struct InvertedSum {
  Matrix basis;     // n x r
  Matrix linear;    // (sum residues | V)^{-1}
  Matrix constant;
  std::vector<Pole> poles;
};

InvertedSum invert_negative_sum(const std::vector<Pole>& poles, bool allow_zero_lambda);

}  // namespace detail

}  // namespace stieltjescf
