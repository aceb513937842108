#include "stieltjescf/sfraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poly_internal.hpp"
#include "stieltjescf/certificates.hpp"
#include "stieltjescf/errors.hpp"
#include "stieltjescf/reduction.hpp"

namespace stieltjescf {

namespace {

using detail::Poly;

void require_positive(const std::vector<double>& c) {
  if (c.empty()) throw NonPositiveCoefficient("coefficient list is empty");
  for (double v : c)
    if (!(v > 0.0) || !std::isfinite(v))
      throw NonPositiveCoefficient("coefficients must be positive, got " + std::to_string(v));
}

// Real roots of a real polynomial via the Frobenius companion matrix.  Roots
// must sit on (-inf, 0] up to tolerance; tiny imaginary parts are discarded
// and near-zero roots snap to exactly 0 so downstream termination tests stay
// exact.
std::vector<double> negative_axis_roots(const Poly& p) {
  Poly coef = p;
  while (coef.size() > 1 && coef.back() == 0.0) coef.pop_back();
  const std::size_t degree = coef.size() - 1;
  if (degree == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                    static_cast<Eigen::Index>(degree));
  for (std::size_t i = 1; i < degree; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < degree; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) =
        -coef[i] / coef[degree];
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
  if (es.info() != Eigen::Success) throw ComplexZero("companion eigensolve failed");
  double scale = 1.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    scale = std::max(scale, std::abs(es.eigenvalues()[i]));
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex root = es.eigenvalues()[i];
    if (std::abs(root.imag()) > tol::imag_part * scale)
      throw ComplexZero("denominator root off the real axis");
    double x = root.real();
    if (x > tol::imag_part * scale)
      throw ComplexZero("denominator root on the positive semi-axis: " + std::to_string(x));
    if (std::abs(x) <= tol::pole * scale) x = 0.0;
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<StieltjesForm::Term> scalar_terms(const std::vector<double>& roots, const Poly& num,
                                              const Poly& den) {
  const Poly dden = detail::poly_derivative(den);
  // Merge coincident roots before extracting residues.
  std::vector<std::pair<double, int>> clusters;
  double scale = 1.0;
  for (double x : roots) scale = std::max(scale, std::abs(x));
  for (double x : roots) {
    if (!clusters.empty() && std::abs(x - clusters.back().first) <= tol::cluster * scale) {
      clusters.back().first =
          (clusters.back().first * clusters.back().second + x) / (clusters.back().second + 1);
      ++clusters.back().second;
    } else {
      clusters.emplace_back(x, 1);
    }
  }
  std::vector<StieltjesForm::Term> terms;
  double wscale = 0.0;
  for (auto& [x, count] : clusters) {
    if (count != 1)
      throw ComplexZero("unexpected multiple denominator root at " + std::to_string(x));
    const double w = detail::poly_eval(num, x) / detail::poly_eval(dden, x);
    wscale = std::max(wscale, std::abs(w));
    terms.push_back({-x, Matrix::Constant(1, 1, Complex(w, 0.0))});
  }
  for (const auto& t : terms)
    if (t.weight(0, 0).real() < -1e-9 * std::max(1.0, wscale))
      throw ComplexZero("negative residue in a measure transform");
  return terms;
}

std::vector<Pole> as_poles(const std::vector<StieltjesForm::Term>& terms) {
  std::vector<Pole> poles;
  poles.reserve(terms.size());
  for (const auto& t : terms) poles.push_back({t.lambda, t.weight});
  return poles;
}

}  // namespace

Complex evaluate(const SFraction& s, Complex z) {
  Complex fraction(0.0, 0.0);
  if (!s.coefficients.empty()) {
    const std::size_t len = s.coefficients.size();
    Complex den(0.0, 0.0);
    for (std::size_t k = len; k-- > 0;) {
      const Complex level =
          (k % 2 == 0) ? s.coefficients[k] * z : Complex(s.coefficients[k], 0.0);
      den = (k + 1 == len) ? level : level + 1.0 / den;
      if (std::abs(den) < 1e-14 * (1.0 + std::abs(z)))
        throw PoleProximity("fraction denominator vanished during evaluation");
    }
    fraction = 1.0 / den;
  }
  if (s.has_head) return s.head_linear * z + s.head_constant - fraction;
  return fraction;
}

Complex evaluate(const ContractedFraction& cf, Complex z) {
  if (cf.d.empty()) throw InvalidForm("empty contracted fraction");
  const std::size_t len = cf.d.size();
  auto get = [&](std::size_t i) { return i < len ? cf.d[i] : 0.0; };
  const std::size_t top = (len + 1) / 2;  // number of levels
  Complex tail(0.0, 0.0);
  for (std::size_t j = top; j >= 2; --j) {
    const Complex den = z + get(2 * j - 2) + get(2 * j - 1) - tail;
    if (std::abs(den) < 1e-14 * (1.0 + std::abs(z)))
      throw PoleProximity("fraction denominator vanished during evaluation");
    tail = get(2 * j - 3) * get(2 * j - 2) / den;
  }
  const Complex den = z + get(1) - tail;
  if (std::abs(den) < 1e-14 * (1.0 + std::abs(z)))
    throw PoleProximity("fraction denominator vanished during evaluation");
  return get(0) / den;
}

StieltjesForm build_from_s_fraction(const std::vector<double>& coefficients) {
  require_positive(coefficients);
  // D = c_1 z + 1/(c_2 + 1/(...)) as a rational num/den; F = 1/D = den/num.
  const std::size_t len = coefficients.size();
  Poly num, den{1.0};
  for (std::size_t k = len; k-- > 0;) {
    const bool multiplies_z = (k % 2 == 0);
    const Poly level = multiplies_z ? Poly{0.0, coefficients[k]} : Poly{coefficients[k]};
    if (k + 1 == len) {
      num = level;
    } else {
      Poly next = detail::poly_add(detail::poly_mul(level, num), den);
      den = num;
      num = std::move(next);
    }
  }
  const auto roots = negative_axis_roots(num);
  return StieltjesForm(Matrix::Zero(1, 1), scalar_terms(roots, den, num));
}

SFraction expand_s_fraction(const StieltjesForm& transform) {
  if (!transform.is_scalar()) throw NotScalar("expansion needs a scalar transform");
  double wscale = 0.0;
  for (const auto& t : transform.terms()) wscale = std::max(wscale, std::abs(t.weight(0, 0)));
  if (std::abs(transform.constant_term()(0, 0)) > 1e-12 * std::max(1.0, wscale))
    throw NotMeasureTransform("transform has a constant part");
  if (transform.terms().empty()) throw NotMeasureTransform("transform is identically zero");
  for (const auto& t : transform.terms())
    if (!(t.weight(0, 0).real() > 0.0))
      throw NotMeasureTransform("transform has a nonpositive weight");

  std::vector<StieltjesForm::Term> terms = transform.terms();
  SFraction out;
  const std::size_t max_rounds = 2 * terms.size() + 2;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    // Subtract the pole at infinity: 1/F = a z + b - sum d_j/(z + nu_j).
    const auto inverted = detail::invert_negative_sum(as_poles(terms), /*allow_zero_lambda=*/true);
    const double a = inverted.linear(0, 0).real();
    const double b = inverted.constant(0, 0).real();
    if (!(a > 0.0)) throw ComplexZero("leading coefficient is not positive");
    out.coefficients.push_back(a);
    double lambda_scale = 1.0;
    for (const auto& t : terms) lambda_scale = std::max(lambda_scale, t.lambda);
    if (inverted.poles.empty()) {
      // Remainder b is constant: either the fraction terminates (odd length,
      // point mass at zero) or one final reciprocal closes it.
      if (b > 1e-13 * a * lambda_scale) out.coefficients.push_back(1.0 / b);
      return out;
    }
    if (!(b > 0.0)) throw NotMeasureTransform("transform is not a Stieltjes fraction");
    // Subtract the value at infinity and invert: 1/(b - sum d/(z+nu)) =
    // (1/b) + next measure transform.
    std::vector<double> nus;
    for (const auto& p : inverted.poles) nus.push_back(p.lambda);
    const Poly q = detail::poly_from_negated_roots(nus);
    Poly numerator = q;
    for (double& coefficient : numerator) coefficient *= b;
    for (std::size_t j = 0; j < inverted.poles.size(); ++j) {
      std::vector<double> others;
      for (std::size_t k = 0; k < nus.size(); ++k)
        if (k != j) others.push_back(nus[k]);
      numerator = detail::poly_add(numerator, detail::poly_from_negated_roots(others),
                                   -inverted.poles[j].residue(0, 0).real());
    }
    out.coefficients.push_back(1.0 / b);
    const auto roots = negative_axis_roots(numerator);
    terms = scalar_terms(roots, q, numerator);
    if (terms.empty()) return out;
  }
  throw ComplexZero("expansion failed to terminate");
}

SFraction expand_scalar_stieltjes(const PoleResidueForm& f) {
  if (!f.is_scalar()) throw NotScalar("scheme expansion needs a scalar function");
  require_admissible(f);
  SFraction out;
  out.has_head = true;
  out.head_linear = f.linear_term()(0, 0).real();
  out.head_constant = f.constant_term()(0, 0).real();
  if (!f.poles().empty()) {
    std::vector<StieltjesForm::Term> terms;
    for (const auto& p : f.poles()) terms.push_back({p.lambda, p.residue});
    const SFraction tail = expand_s_fraction(StieltjesForm(Matrix::Zero(1, 1), std::move(terms)));
    out.coefficients = tail.coefficients;
  }
  return out;
}

ContractedFraction contract(const SFraction& s) {
  if (s.has_head && (s.head_linear != 0.0 || s.head_constant != 0.0))
    throw NotMeasureTransform("contraction applies to the measure transform only");
  require_positive(s.coefficients);
  ContractedFraction cf;
  cf.d.push_back(1.0 / s.coefficients[0]);
  for (std::size_t k = 0; k + 1 < s.coefficients.size(); ++k)
    cf.d.push_back(1.0 / (s.coefficients[k] * s.coefficients[k + 1]));
  return cf;
}

std::vector<ScalarJLevel> expand_scalar_j_fraction(const PoleResidueForm& f) {
  if (!f.is_scalar()) throw NotScalar("coefficient expansion needs a scalar function");
  // Levels of f itself in the classical shape are the primal levels of the
  // reflected function: f(z) = z g(1/z) with g = reflect(f).
  const JFraction jf = expand_j_fraction(reflect(f));
  std::vector<ScalarJLevel> levels;
  levels.reserve(jf.levels.size());
  for (std::size_t k = 0; k < jf.levels.size(); ++k) {
    double a = jf.levels[k].constant(0, 0).real();
    double b = jf.levels[k].linear(0, 0).real();
    if (k == 0) {
      a = std::max(a, 0.0);
      b = std::max(b, 0.0);
    } else if (!(a > 0.0) || !(b > 0.0)) {
      throw ComplexZero("interior coefficient lost positivity");
    }
    levels.push_back({a, b});
  }
  return levels;
}

HankelReport hankel_certificates(const StieltjesForm& h, int order, double tolerance) {
  if (!h.is_scalar()) throw NotScalar("Hankel certificates need a scalar transform");
  if (order < 1) throw UsageError("order must be at least 1");
  HankelReport report;
  report.moments.assign(static_cast<std::size_t>(2 * order + 1), 0.0);
  for (const auto& t : h.terms()) {
    double power = 1.0;
    for (int k = 0; k <= 2 * order; ++k) {
      report.moments[static_cast<std::size_t>(k)] += power * t.weight(0, 0).real();
      power *= t.lambda;
    }
  }
  Eigen::MatrixXd hankel(order + 1, order + 1);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; j <= order; ++j)
      hankel(i, j) = report.moments[static_cast<std::size_t>(i + j)];
  Eigen::MatrixXd shifted(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      shifted(i, j) = report.moments[static_cast<std::size_t>(i + j + 1)];
  const auto min_eig = [](const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  };
  report.hankel_min_eig = min_eig(hankel);
  report.shifted_min_eig = min_eig(shifted);
  const double scale_h = std::max(1.0, hankel.norm());
  const double scale_s = std::max(1.0, shifted.norm());
  report.hankel_pass = report.hankel_min_eig >= -tolerance * scale_h;
  report.shifted_pass = report.shifted_min_eig >= -tolerance * scale_s;
  report.pass = report.hankel_pass && report.shifted_pass;
  return report;
}

}  // namespace stieltjescf
