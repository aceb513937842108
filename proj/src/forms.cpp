#include "stieltjescf/forms.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "stieltjescf/certificates.hpp"
#include "stieltjescf/errors.hpp"

namespace stieltjescf {

namespace {

void check_square(const Matrix& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n)
    throw InvalidForm(std::string(what) + ": expected " + std::to_string(n) + "x" +
                      std::to_string(n) + " matrix");
  if (!is_finite(m)) throw InvalidForm(std::string(what) + ": non-finite entries");
}

double residue_scale(const std::vector<Pole>& poles) {
  double s = 0.0;
  for (const auto& p : poles) s = std::max(s, p.residue.norm());
  return s;
}

}  // namespace

PoleResidueForm::PoleResidueForm(Matrix linear, Matrix constant, std::vector<Pole> poles)
    : linear_(std::move(linear)), constant_(std::move(constant)), poles_(std::move(poles)) {
  const Eigen::Index n = linear_.rows();
  if (n == 0) throw InvalidForm("PoleResidueForm: empty matrices");
  check_square(linear_, n, "linear term");
  check_square(constant_, n, "constant term");
  for (auto& p : poles_) {
    check_square(p.residue, n, "residue");
    if (!(p.lambda > 0.0) || !std::isfinite(p.lambda))
      throw InvalidForm("PoleResidueForm: pole locations must be positive reals");
  }

  std::sort(poles_.begin(), poles_.end(),
            [](const Pole& a, const Pole& b) { return a.lambda < b.lambda; });

  // Merge poles within relative distance tol::pole, then drop zero residues.
  std::vector<Pole> merged;
  for (auto& p : poles_) {
    if (!merged.empty() &&
        std::abs(p.lambda - merged.back().lambda) <= tol::pole * std::abs(merged.back().lambda)) {
      merged.back().residue += p.residue;
    } else {
      merged.push_back(std::move(p));
    }
  }
  const double scale = std::max(1.0, residue_scale(merged));
  poles_.clear();
  for (auto& p : merged)
    if (p.residue.norm() > tol::rank * scale) poles_.push_back(std::move(p));
}

PoleResidueForm PoleResidueForm::scalar(double a, double b,
                                        std::vector<std::pair<double, double>> poles) {
  std::vector<Pole> ps;
  ps.reserve(poles.size());
  for (auto& [lambda, c] : poles)
    ps.push_back({lambda, Matrix::Constant(1, 1, Complex(c, 0.0))});
  return PoleResidueForm(Matrix::Constant(1, 1, Complex(a, 0.0)),
                         Matrix::Constant(1, 1, Complex(b, 0.0)), std::move(ps));
}

Matrix PoleResidueForm::value_at_zero() const {
  Matrix v = constant_;
  for (const auto& p : poles_) v -= p.residue / p.lambda;
  return v;
}

Matrix PoleResidueForm::derivative_at_zero() const {
  Matrix v = linear_;
  for (const auto& p : poles_) v += p.residue / (p.lambda * p.lambda);
  return v;
}

StieltjesForm::StieltjesForm(Matrix constant, std::vector<Term> terms)
    : constant_(std::move(constant)), terms_(std::move(terms)) {
  const Eigen::Index n = constant_.rows();
  if (n == 0) throw InvalidForm("StieltjesForm: empty matrices");
  check_square(constant_, n, "constant term");
  for (auto& t : terms_) {
    check_square(t.weight, n, "weight");
    if (t.lambda < 0.0 || !std::isfinite(t.lambda))
      throw InvalidForm("StieltjesForm: term locations must be nonnegative");
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.lambda < b.lambda; });
  std::vector<Term> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && std::abs(t.lambda - merged.back().lambda) <=
                               tol::pole * std::max(1e-300, std::abs(merged.back().lambda))) {
      merged.back().weight += t.weight;
    } else {
      merged.push_back(std::move(t));
    }
  }
  double scale = 1.0;
  for (const auto& t : merged) scale = std::max(scale, t.weight.norm());
  terms_.clear();
  for (auto& t : merged)
    if (t.weight.norm() > tol::rank * scale) terms_.push_back(std::move(t));
}

StieltjesForm StieltjesForm::scalar(double a, std::vector<std::pair<double, double>> terms) {
  std::vector<Term> ts;
  ts.reserve(terms.size());
  for (auto& [lambda, w] : terms) ts.push_back({lambda, Matrix::Constant(1, 1, Complex(w, 0.0))});
  return StieltjesForm(Matrix::Constant(1, 1, Complex(a, 0.0)), std::move(ts));
}

Matrix evaluate(const PoleResidueForm& f, Complex z) {
  for (const auto& p : f.poles())
    if (std::abs(z + Complex(p.lambda, 0.0)) <= tol::pole * (1.0 + std::abs(z)))
      throw PoleProximity("evaluation point within tolerance of pole at -" +
                          std::to_string(p.lambda));
  Matrix v = f.linear_term() * z + f.constant_term();
  for (const auto& p : f.poles()) v -= p.residue / (z + Complex(p.lambda, 0.0));
  return v;
}

Matrix evaluate(const StieltjesForm& h, Complex z) {
  for (const auto& t : h.terms())
    if (std::abs(z + Complex(t.lambda, 0.0)) <= tol::pole * (1.0 + std::abs(z)))
      throw PoleProximity("evaluation point within tolerance of pole at -" +
                          std::to_string(t.lambda));
  Matrix v = h.constant_term();
  for (const auto& t : h.terms()) v += t.weight / (z + Complex(t.lambda, 0.0));
  return v;
}

Matrix evaluate(const RealizationForm& r, Complex z) {
  Matrix inner = r.constant;
  if (r.coupling.rows() > 0) {
    Eigen::VectorXcd diag(r.spectrum.size());
    for (Eigen::Index i = 0; i < r.spectrum.size(); ++i) {
      const Complex d = Complex(r.spectrum[i], 0.0) + z;
      if (std::abs(d) <= tol::pole * (1.0 + std::abs(z)))
        throw PoleProximity("evaluation point within tolerance of realization spectrum");
      diag[i] = 1.0 / d;
    }
    inner += r.coupling.adjoint() * diag.asDiagonal() * r.coupling;
  }
  return z * inner;
}

PoleResidueForm reflect(const PoleResidueForm& f) {
  require_admissible(f);
  Matrix new_linear = f.value_at_zero();
  Matrix new_constant = f.derivative_at_zero();
  std::vector<Pole> new_poles;
  new_poles.reserve(f.poles().size());
  for (const auto& p : f.poles()) {
    const double l3 = p.lambda * p.lambda * p.lambda;
    new_poles.push_back({1.0 / p.lambda, p.residue / l3});
  }
  return PoleResidueForm(std::move(new_linear), std::move(new_constant), std::move(new_poles));
}

PoleResidueForm translate(const PoleResidueForm& f, const Matrix& a1, const Matrix& b1) {
  if (a1.rows() != f.dim() || b1.rows() != f.dim())
    throw InvalidForm("translate: dimension mismatch");
  if (!is_psd(a1)) throw TranslationViolation("linear shift must be PSD");
  if (!is_hermitian(b1)) throw TranslationViolation("constant shift must be Hermitian");
  const Matrix shifted_value = f.value_at_zero() + b1;
  const double scale = std::max(1.0, hermitian_norm(shifted_value));
  if (min_eigenvalue(shifted_value) < -tol::psd * scale)
    throw TranslationViolation("constant shift drives f(0) below zero");
  return PoleResidueForm(f.linear_term() + a1, f.constant_term() + b1, f.poles());
}

StieltjesForm to_stieltjes(const PoleResidueForm& f) {
  require_admissible(f);
  std::vector<StieltjesForm::Term> terms;
  terms.push_back({0.0, f.value_at_zero()});  // dropped by canonicalization when zero
  for (const auto& p : f.poles()) terms.push_back({p.lambda, p.residue / p.lambda});
  return StieltjesForm(f.linear_term(), std::move(terms));
}

PoleResidueForm from_stieltjes(const StieltjesForm& h) {
  Matrix constant = Matrix::Zero(h.dim(), h.dim());
  std::vector<Pole> poles;
  for (const auto& t : h.terms()) {
    constant += t.weight;
    if (t.lambda > 0.0) poles.push_back({t.lambda, t.weight * t.lambda});
  }
  return PoleResidueForm(h.constant_term(), std::move(constant), std::move(poles));
}

MeasureDecomposition decompose_measure(const StieltjesForm& h) {
  MeasureDecomposition d;
  d.constant = h.constant_term();
  d.total_mass = Matrix::Zero(h.dim(), h.dim());
  d.point_mass_at_zero = Matrix::Zero(h.dim(), h.dim());
  for (const auto& t : h.terms()) {
    d.total_mass += t.weight;
    if (t.lambda > 0.0)
      d.shifted.push_back({t.lambda, t.weight * t.lambda});
    else
      d.point_mass_at_zero += t.weight;
  }
  return d;
}

Eigen::Index partial_mcmillan_degree(const PoleResidueForm& f, double rank_cutoff) {
  Eigen::Index degree = 0;
  for (const auto& p : f.poles()) degree += psd_rank(p.residue, rank_cutoff);
  return degree;
}

RealizationForm build_realization(const PoleResidueForm& f) {
  require_admissible(f);
  const StieltjesForm h = to_stieltjes(f);
  std::vector<Matrix> factors;
  std::vector<double> lambdas;
  Eigen::Index m = 0;
  for (const auto& t : h.terms()) {
    Matrix k = psd_factor(t.weight);
    if (k.rows() == 0) continue;
    m += k.rows();
    lambdas.insert(lambdas.end(), static_cast<std::size_t>(k.rows()), t.lambda);
    factors.push_back(std::move(k));
  }
  RealizationForm r;
  r.constant = h.constant_term();
  r.coupling = Matrix(m, f.dim());
  r.spectrum = RealVector(m);
  Eigen::Index row = 0;
  for (const auto& k : factors) {
    r.coupling.middleRows(row, k.rows()) = k;
    row += k.rows();
  }
  for (Eigen::Index i = 0; i < m; ++i) r.spectrum[i] = lambdas[static_cast<std::size_t>(i)];
  return r;
}

}  // namespace stieltjescf
