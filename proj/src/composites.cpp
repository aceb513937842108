#include "stieltjescf/composites.hpp"

#include <array>
#include <cmath>
#include <string>

#include "stieltjescf/certificates.hpp"
#include "stieltjescf/errors.hpp"
#include "stieltjescf/verification.hpp"

namespace stieltjescf {

namespace {

void check_dimension(int dim) {
  if (dim != 2 && dim != 3) throw UsageError("dimension must be 2 or 3");
}

void check_fraction(double c) {
  if (!std::isfinite(c) || c <= 1e-12 || c >= 1.0 - 1e-12)
    throw InvalidForm("core fraction must lie strictly inside (0, 1), got " + std::to_string(c));
}

void check_tensor(const Matrix& t, const char* what) {
  if (t.rows() != 2 || t.cols() != 2) throw InvalidForm(std::string(what) + ": expected 2x2");
  if ((t - t.transpose()).norm() > tol::herm * std::max(1.0, t.norm()))
    throw InvalidForm(std::string(what) + ": tensor must be symmetric");
}

Complex multicoat_by_substitution(Complex z, const CoatingSpec& spec) {
  const std::size_t m = spec.depth();
  Complex value = (m % 2 == 1) ? z : Complex(1.0, 0.0);
  for (std::size_t j = m; j-- > 0;) {
    const Complex outer = (j % 2 == 0) ? Complex(1.0, 0.0) : z;  // phase of shell j+1
    value = hs_nested(value, outer, spec.fractions()[j], spec.dimension());
  }
  return value;
}

bool matches(const std::function<Complex(Complex)>& g, const std::function<Complex(Complex)>& ref,
             double tolerance) {
  static const std::array<Complex, 3> probes = {Complex(0.37, 0.21), Complex(2.1, -0.4),
                                                Complex(4.9, 1.3)};
  for (Complex p : probes)
    if (std::abs(g(p) - ref(p)) > tolerance * (1.0 + std::abs(ref(p)))) return false;
  return true;
}

// z s(1/z), with the value at the origin obtained by Neville extrapolation of
// x s(1/x) through x -> 0 (the handle is black-box, so the limit is numeric).
std::function<Complex(Complex)> reflect_handle(std::function<Complex(Complex)> s) {
  return [s = std::move(s)](Complex z) -> Complex {
    if (std::abs(z) > 1e-9) return z * s(1.0 / z);
    std::array<double, 3> xs = {1e-5, 5e-6, 2.5e-6};
    std::array<Complex, 3> ys;
    for (std::size_t i = 0; i < 3; ++i) ys[i] = xs[i] * s(1.0 / xs[i]);
    for (std::size_t k = 1; k < 3; ++k)
      for (std::size_t i = 0; i + k < 3; ++i)
        ys[i] = (ys[i] * (0.0 - xs[i + k]) - ys[i + 1] * (0.0 - xs[i])) / (xs[i] - xs[i + k]);
    return ys[0];
  };
}

std::function<Complex(Complex)> peel_handle(std::function<Complex(Complex)> g, double c) {
  const double d = (1.0 - c) / 2.0;
  return [g = std::move(g), c, d](Complex z) -> Complex {
    return 1.0 - 1.0 / (d - c / (g(z) - 1.0));
  };
}

}  // namespace

CoatingSpec::CoatingSpec(int dimension, std::vector<double> fractions)
    : dimension_(dimension), fractions_(std::move(fractions)) {
  check_dimension(dimension_);
  for (double c : fractions_) check_fraction(c);
}

LaminateSpec::LaminateSpec(std::vector<double> weights, std::vector<double> proportions)
    : weights_(std::move(weights)), proportions_(std::move(proportions)) {
  if (weights_.size() != proportions_.size() || weights_.empty())
    throw InvalidForm("laminate needs matching, nonempty weight/proportion lists");
  double total = 0.0;
  for (double a : weights_) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw InvalidForm("laminate weights must be >= 0");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidForm("laminate weights must sum to 1, got " + std::to_string(total));
  for (double q : proportions_)
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidForm("laminate proportions must lie in [0, 1]");
}

Complex hs_coated(Complex sigma1, Complex sigma2, double c1, int dim) {
  check_dimension(dim);
  check_fraction(c1);
  const double scale = std::max({std::abs(sigma1), std::abs(sigma2), 1e-300});
  if (std::abs(sigma2 - sigma1) <= 1e-14 * scale) return sigma2;
  const Complex bracket = (1.0 - c1) / static_cast<double>(dim) - sigma2 / (sigma2 - sigma1);
  if (std::abs(bracket) <= 1e-14 * (1.0 + std::abs(sigma2 / (sigma2 - sigma1))))
    throw DegenerateDenominator("coated-inclusion bracket vanished");
  return sigma2 + c1 * sigma2 / bracket;
}

Complex hs_nested(Complex sigma_core, Complex sigma2, double c1, int dim) {
  return hs_coated(sigma_core, sigma2, c1, dim);
}

Complex multicoat(Complex z, const CoatingSpec& spec) {
  if (spec.depth() == 0) return Complex(1.0, 0.0);
  if (std::abs(z - 1.0) <= 1e-9) return multicoat_by_substitution(z, spec);
  Complex inner(0.0, 0.0);
  for (std::size_t j = spec.depth(); j-- > 0;) {
    const double c = spec.fractions()[j];
    const double d = spec.shell_parameter(j);
    Complex den;
    if (j % 2 == 0) {
      den = 1.0 - z - inner;
      if (std::abs(den) <= 1e-13 * (1.0 + std::abs(z)))
        throw PoleProximity("multicoat denominator vanished");
      den = d - 1.0 / den;
      if (std::abs(den) <= 1e-13) throw PoleProximity("multicoat denominator vanished");
      inner = c / den;
    } else {
      den = z - 1.0 - inner;
      if (std::abs(den) <= 1e-13 * (1.0 + std::abs(z)))
        throw PoleProximity("multicoat denominator vanished");
      den = d - z / den;
      if (std::abs(den) <= 1e-13) throw PoleProximity("multicoat denominator vanished");
      inner = c * z / den;
    }
  }
  return 1.0 + inner;
}

Complex keller_residual(const std::function<Complex(Complex, Complex)>& effective, Complex sigma1,
                        Complex sigma2) {
  return effective(sigma1, sigma2) * effective(sigma2, sigma1) - sigma1 * sigma2;
}

Matrix phase_interchange_residual(const Matrix& s12, const Matrix& s21, Complex sigma1,
                                  Complex sigma2) {
  check_tensor(s12, "first tensor");
  check_tensor(s21, "second tensor");
  Matrix rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;
  return s12 * rot * s21 * rot.transpose() - sigma1 * sigma2 * Matrix::Identity(2, 2);
}

Matrix tartar_formula(const Matrix& sigma_star_1, Complex sigma2, double c1,
                      const Eigen::Matrix2d& m1) {
  check_tensor(sigma_star_1, "core tensor");
  check_fraction(c1);
  if (std::abs(m1.trace() - 1.0) > 1e-12) throw BadM1("lamination tensor must have trace 1");
  if ((m1 - m1.transpose()).norm() > 1e-12) throw BadM1("lamination tensor must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m1, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12) throw BadM1("lamination tensor must be PSD");

  const Matrix gap = sigma2 * Matrix::Identity(2, 2) - sigma_star_1;
  const Complex det = gap(0, 0) * gap(1, 1) - gap(0, 1) * gap(1, 0);
  const double scale = std::max(1.0, gap.norm());
  if (std::abs(det) <= 1e-12 * scale * scale)
    throw SingularCore("matrix phase equals the core conductivity");
  const Matrix bracket = (1.0 - c1) * m1.cast<Complex>() - sigma2 * gap.inverse();
  const Complex bdet = bracket(0, 0) * bracket(1, 1) - bracket(0, 1) * bracket(1, 0);
  if (std::abs(bdet) <= 1e-14 * std::max(1.0, bracket.norm()) * std::max(1.0, bracket.norm()))
    throw DegenerateDenominator("lamination bracket is singular");
  return sigma2 * Matrix::Identity(2, 2) + (c1 * sigma2) * bracket.inverse();
}

Complex laminate_parallel(Complex sigma1, Complex sigma2, const LaminateSpec& spec) {
  Complex total(0.0, 0.0);
  for (std::size_t i = 0; i < spec.weights().size(); ++i) {
    const double a = spec.weights()[i];
    if (a == 0.0) continue;
    const double q = spec.proportions()[i];
    Complex layer;
    if (q > 0.0 && std::abs(sigma1) == 0.0) {
      layer = 0.0;  // series with an insulating phase
    } else if (q < 1.0 && std::abs(sigma2) == 0.0) {
      layer = 0.0;
    } else {
      Complex den(0.0, 0.0);
      double den_scale = 0.0;
      if (q > 0.0) {
        den += q / sigma1;
        den_scale += std::abs(q / sigma1);
      }
      if (q < 1.0) {
        den += (1.0 - q) / sigma2;
        den_scale += std::abs((1.0 - q) / sigma2);
      }
      if (std::abs(den) <= 1e-14 * den_scale)
        throw ZeroPhase("harmonic average divides by zero with nonzero weight");
      layer = 1.0 / den;
    }
    total += a * layer;
  }
  return total;
}

Complex laminate_perp(Complex sigma1, Complex sigma2, const LaminateSpec& spec) {
  const Complex swapped = laminate_parallel(sigma2, sigma1, spec);
  const double scale = std::max({std::abs(sigma1), std::abs(sigma2), 1e-300});
  if (std::abs(swapped) <= 1e-14 * scale)
    throw ZeroDenominator("swapped parallel conductivity vanished");
  return sigma1 * sigma2 / swapped;
}

LaminateSpec LaminateSynthesis::spec() const {
  if (!normalized)
    throw InvalidForm("synthesis weights sum to " + std::to_string(total_weight) + ", not 1");
  return LaminateSpec(weights, proportions);
}

LaminateSynthesis synthesize_laminate(const PoleResidueForm& f) {
  if (!f.is_scalar()) throw NotScalar("laminate synthesis needs a scalar function");
  require_admissible(f);
  const StieltjesForm h = to_stieltjes(f);
  LaminateSynthesis out;
  const double head = h.constant_term()(0, 0).real();
  if (head > 0.0) {  // pure phase-1 branch
    out.weights.push_back(head);
    out.proportions.push_back(1.0);
  }
  for (const auto& t : h.terms()) {
    const double r = t.weight(0, 0).real();
    if (t.lambda == 0.0) {  // pure phase-2 branch
      out.weights.push_back(r);
      out.proportions.push_back(0.0);
    } else {
      out.weights.push_back(r / (1.0 + t.lambda));
      out.proportions.push_back(t.lambda / (1.0 + t.lambda));
    }
  }
  out.total_weight = 0.0;
  for (double a : out.weights) out.total_weight += a;
  out.normalized = std::abs(out.total_weight - 1.0) <= 1e-10;
  return out;
}

CoatingSpec extract_coatings(const std::function<Complex(Complex)>& f, int dimension,
                             int max_depth) {
  if (dimension != 2)
    throw UsageError("coating extraction is only available in two dimensions");
  if (max_depth < 0) throw UsageError("max_depth must be nonnegative");

  // The phase-interchange identity in normalized form reads f(z) f(1/z) = 1;
  // probe it before trusting the peeling recursion.
  SplitMix64 rng(kDefaultSeed ^ 0xC0A7ULL);
  for (int i = 0; i < 5; ++i) {
    const Complex z(rng.uniform(0.3, 2.5), rng.uniform(0.2, 1.5));
    if (std::abs(f(z) * f(1.0 / z) - 1.0) > 1e-8)
      throw NotRealizable("phase-interchange probe failed");
  }
  if (std::abs(f(Complex(1.0, 0.0)) - 1.0) > 1e-8)
    throw NotRealizable("effective function is not normalized at equal phases");

  std::function<Complex(Complex)> g = f;
  std::vector<double> fractions;
  for (int depth = 0;; ++depth) {
    if (matches(g, [](Complex) { return Complex(1.0, 0.0); }, 1e-6) ||
        matches(g, [](Complex z) { return z; }, 1e-6))
      return CoatingSpec(2, fractions);
    if (depth >= max_depth)
      throw NotRealizable("no trivial remainder within " + std::to_string(max_depth) + " peels");
    const Complex v = g(Complex(0.0, 0.0));
    const Complex c = (1.0 - v) / (1.0 + v);
    if (std::abs(c.imag()) > 1e-8 * (1.0 + std::abs(c)))
      throw NotRealizable("recovered fraction is not real");
    if (!(c.real() > 1e-12) || !(c.real() < 1.0 - 1e-12))
      throw NotRealizable("recovered fraction leaves (0, 1)");
    fractions.push_back(c.real());
    g = reflect_handle(peel_handle(std::move(g), c.real()));
  }
}

}  // namespace stieltjescf
