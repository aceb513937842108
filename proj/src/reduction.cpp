#include "stieltjescf/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "poly_internal.hpp"
#include "stieltjescf/certificates.hpp"
#include "stieltjescf/errors.hpp"

namespace stieltjescf {

namespace {

using detail::Poly;

struct ZeroCluster {
  double mean = 0.0;
  int count = 0;
};

// Greedy clustering of the (real, ascending) pole locations.
std::vector<ZeroCluster> cluster_zeros(const RealVector& mus, double lambda_scale) {
  std::vector<ZeroCluster> clusters;
  for (Eigen::Index i = 0; i < mus.size(); ++i) {
    const double mu = mus[i];
    bool merged = false;
    if (!clusters.empty()) {
      ZeroCluster& back = clusters.back();
      const double allowed =
          tol::cluster * std::max(std::abs(mu), std::abs(back.mean)) + 1e-12 * lambda_scale;
      if (mu - back.mean <= allowed) {
        back.mean =
            (back.mean * static_cast<double>(back.count) + mu) / static_cast<double>(back.count + 1);
        ++back.count;
        merged = true;
      }
    }
    if (!merged) clusters.push_back({mu, 1});
  }
  return clusters;
}

Matrix compressed_sum(const std::vector<Matrix>& weights, const std::vector<double>& lambdas,
                      double x) {
  Matrix s = Matrix::Zero(weights.front().rows(), weights.front().cols());
  for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] / (x + lambdas[j]);
  return s;
}

Matrix evaluate_compressed(const Matrix& linear, const Matrix& constant,
                           const std::vector<Pole>& poles, double x) {
  Matrix v = linear * x + constant;
  for (const auto& p : poles) v -= p.residue / (x + p.lambda);
  return v;
}

// max over a few positive abscissae of || output(x) * (-S(x)) - I ||_F / sqrt(r)
double product_residual(const Matrix& linear, const Matrix& constant,
                        const std::vector<Pole>& out_poles, const std::vector<Matrix>& weights,
                        const std::vector<double>& lambdas, double lambda_scale) {
  const double base = std::max(1.0, lambda_scale);
  const Eigen::Index r = linear.rows();
  double worst = 0.0;
  for (double factor : {0.31, 1.07, 3.9}) {
    const double x = factor * base;
    const Matrix product =
        evaluate_compressed(linear, constant, out_poles, x) * compressed_sum(weights, lambdas, x);
    worst = std::max(worst, (product - Matrix::Identity(r, r)).norm() /
                                std::sqrt(static_cast<double>(r)));
  }
  return worst;
}

// Least-squares partial-fraction fit of the residues on a fixed pole set.
std::vector<Pole> least_squares_residues(const Matrix& linear, const Matrix& constant,
                                         const std::vector<double>& mus,
                                         const std::vector<Matrix>& weights,
                                         const std::vector<double>& lambdas,
                                         double lambda_scale) {
  const Eigen::Index r = linear.rows();
  const Eigen::Index k = static_cast<Eigen::Index>(mus.size());
  const Eigen::Index samples = std::max<Eigen::Index>(2 * k + 6, 8);
  const double base = std::max(1.0, lambda_scale);
  Eigen::MatrixXd design(samples, k);
  std::vector<Matrix> targets;
  targets.reserve(static_cast<std::size_t>(samples));
  for (Eigen::Index s = 0; s < samples; ++s) {
    const double x =
        base * std::pow(10.0, -1.3 + 2.6 * static_cast<double>(s) / static_cast<double>(samples - 1));
    for (Eigen::Index c = 0; c < k; ++c) design(s, c) = 1.0 / (x + mus[static_cast<std::size_t>(c)]);
    // sum_k D_k/(x+mu_k) = linear x + constant + S(x)^{-1}, S = -(compressed sum)
    const Matrix sx = -compressed_sum(weights, lambdas, x);
    targets.push_back(linear * x + constant + sx.inverse());
  }
  const auto solver = design.colPivHouseholderQr();
  std::vector<Pole> out(static_cast<std::size_t>(k));
  for (Eigen::Index c = 0; c < k; ++c)
    out[static_cast<std::size_t>(c)] = {mus[static_cast<std::size_t>(c)], Matrix::Zero(r, r)};
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      Eigen::VectorXd rhs_re(samples), rhs_im(samples);
      for (Eigen::Index s = 0; s < samples; ++s) {
        rhs_re[s] = targets[static_cast<std::size_t>(s)](i, j).real();
        rhs_im[s] = targets[static_cast<std::size_t>(s)](i, j).imag();
      }
      const Eigen::VectorXd sol_re = solver.solve(rhs_re);
      const Eigen::VectorXd sol_im = solver.solve(rhs_im);
      for (Eigen::Index c = 0; c < k; ++c)
        out[static_cast<std::size_t>(c)].residue(i, j) = Complex(sol_re[c], sol_im[c]);
    }
  }
  return out;
}

}  // namespace

namespace detail {

InvertedSum invert_negative_sum(const std::vector<Pole>& raw_poles, bool allow_zero_lambda) {
  if (raw_poles.empty()) throw NullFunction("inversion of an empty pole sum");
  const Eigen::Index n = raw_poles.front().residue.rows();

  // Canonicalize: sort, merge coincident poles, drop zero residues.
  std::vector<Pole> poles = raw_poles;
  std::sort(poles.begin(), poles.end(),
            [](const Pole& a, const Pole& b) { return a.lambda < b.lambda; });
  double lambda_scale = std::max(1e-300, poles.back().lambda);
  {
    std::vector<Pole> merged;
    for (auto& p : poles) {
      if (!std::isfinite(p.lambda) || p.lambda < 0.0 || (!allow_zero_lambda && p.lambda == 0.0))
        throw InvalidForm("pole locations must be positive");
      if (!merged.empty() &&
          p.lambda - merged.back().lambda <= tol::pole * std::max(p.lambda, lambda_scale * 1e-3))
        merged.back().residue += p.residue;
      else
        merged.push_back(std::move(p));
    }
    double res_scale = 0.0;
    for (const auto& p : merged) res_scale = std::max(res_scale, p.residue.norm());
    if (res_scale == 0.0) throw NullFunction("all residues vanish");
    poles.clear();
    for (auto& p : merged)
      if (p.residue.norm() > tol::rank * res_scale) poles.push_back(std::move(p));
  }
  lambda_scale = poles.back().lambda;

  Matrix total = Matrix::Zero(n, n);
  for (const auto& p : poles) total += p.residue;
  InvertedSum out;
  out.basis = range_basis(total);
  const Eigen::Index r = out.basis.cols();
  if (r == 0) throw NullFunction("all residues vanish");

  const std::size_t d = poles.size();
  std::vector<Matrix> weights(d);
  std::vector<double> lambdas(d);
  Matrix cv = Matrix::Zero(r, r);
  Matrix moment = Matrix::Zero(r, r);
  for (std::size_t j = 0; j < d; ++j) {
    weights[j] = hermitian_part(out.basis.adjoint() * poles[j].residue * out.basis);
    lambdas[j] = poles[j].lambda;
    cv += weights[j];
    moment += lambdas[j] * weights[j];
  }
  cv = hermitian_part(cv);
  const Eigen::LLT<Matrix> cv_llt(cv);
  const Matrix cv_inv = cv_llt.solve(Matrix::Identity(r, r));
  out.linear = hermitian_part(cv_inv);
  out.constant = hermitian_part(cv_inv * moment * cv_inv);

  if (d == 1) return out;  // affine: -S(z)^{-1} = C^{-1} z + lambda C^{-1}

  // Compressed function: S(z) = -M(z)/q(z) with q = prod (z + lambda_j) and
  // M(z) = sum_j weights_j * prod_{k != j} (z + lambda_k), degree d-1, leading
  // coefficient cv (invertible on V).  M supplies residues and invariants.
  const Poly q = detail::poly_from_negated_roots(lambdas);
  std::vector<Matrix> mcoef(d, Matrix::Zero(r, r));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> others;
    for (std::size_t k = 0; k < d; ++k)
      if (k != j) others.push_back(lambdas[k]);
    const Poly pj = detail::poly_from_negated_roots(others);
    for (std::size_t i = 0; i < pj.size(); ++i) mcoef[i] += weights[j] * pj[i];
  }

  // Pole locations of -S^{-1}: write -S(z) = K*(diag(lambda) + z)^{-1}K with
  // K stacking rank factors of the compressed residues.  Its determinant
  // vanishes exactly at the eigenvalues of -Q2* diag(lambda) Q2 where Q2
  // spans ker(K*); a Hermitian eigensolve, so the zeros are real by
  // construction, with exact multiplicities and no spurious copies of the
  // input poles.
  Eigen::Index stacked = 0;
  std::vector<Matrix> factors(d);
  for (std::size_t j = 0; j < d; ++j) {
    factors[j] = psd_factor(weights[j]);
    stacked += factors[j].rows();
  }
  if (stacked == r) return out;  // inverse is affine

  Matrix kmat(stacked, r);
  RealVector stacked_lambdas(stacked);
  Eigen::Index row = 0;
  for (std::size_t j = 0; j < d; ++j) {
    kmat.middleRows(row, factors[j].rows()) = factors[j];
    stacked_lambdas.segment(row, factors[j].rows()).setConstant(lambdas[j]);
    row += factors[j].rows();
  }
  Eigen::JacobiSVD<Matrix> ksvd(kmat, Eigen::ComputeFullU);
  const Matrix null_basis = ksvd.matrixU().rightCols(stacked - r);
  const Matrix pencil = hermitian_part(
      null_basis.adjoint() * stacked_lambdas.asDiagonal().toDenseMatrix().cast<Complex>() *
      null_basis);
  Eigen::SelfAdjointEigenSolver<Matrix> pes(pencil);
  if (pes.info() != Eigen::Success) throw ComplexZero("pole eigensolve failed");

  const double axis_tol = tol::imag_part * std::max(1.0, lambda_scale);
  const auto clusters = cluster_zeros(pes.eigenvalues(), lambda_scale);
  std::vector<double> mus;
  std::vector<Eigen::Index> multiplicities;
  for (const auto& cluster : clusters) {
    if (cluster.mean < -axis_tol)
      throw ComplexZero("computed zero on the positive semi-axis: " +
                        std::to_string(-cluster.mean));
    mus.push_back(std::max(cluster.mean, 0.0));
    multiplicities.push_back(cluster.count);
  }

  // Residues from null-space blocks: at a zero z0 of multiplicity m0,
  // D = -q(z0) V0 (V0* M'(z0) V0)^{-1} V0* with V0 the m0-dimensional
  // near-null eigenspace of the Hermitian matrix M(z0).
  std::vector<Pole> candidates;
  for (std::size_t c = 0; c < mus.size(); ++c) {
    const double z0 = -mus[c];
    Matrix mz = Matrix::Zero(r, r);
    double zp = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      mz += mcoef[i] * zp;
      zp *= z0;
    }
    Matrix mdz = Matrix::Zero(r, r);
    zp = 1.0;
    for (std::size_t i = 1; i < d; ++i) {
      mdz += static_cast<double>(i) * mcoef[i] * zp;
      zp *= z0;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(mz));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(r));
    for (Eigen::Index i = 0; i < r; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(es.eigenvalues()[a]) < std::abs(es.eigenvalues()[b]);
    });
    const Eigen::Index m0 = std::min<Eigen::Index>(multiplicities[c], r);
    Matrix v0(r, m0);
    for (Eigen::Index i = 0; i < m0; ++i)
      v0.col(i) = es.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    const Matrix gate = v0.adjoint() * mdz * v0;
    const Matrix residue =
        -detail::poly_eval(q, z0) * (v0 * gate.inverse() * v0.adjoint());
    candidates.push_back({mus[c], hermitian_part(residue)});
  }

  const double drop_scale = lambda_scale * lambda_scale * out.linear.norm() +
                            lambda_scale * out.constant.norm();

  auto finalize = [&](std::vector<Pole> cand) {
    std::vector<Pole> kept;
    for (auto& p : cand) {
      if (p.residue.norm() <= 1e-11 * drop_scale) continue;
      double worst = 0.0;
      Matrix clipped = psd_clip(p.residue, tol::rank, &worst);
      const double top = hermitian_norm(p.residue);
      if (worst < -1e-6 * std::max(top, 1e-11 * drop_scale))
        throw ComplexZero("inverted residue has a negative direction: " + std::to_string(worst));
      if (p.lambda <= 0.0)
        throw ComplexZero("inverted pole collapsed onto the origin");
      kept.push_back({p.lambda, std::move(clipped)});
    }
    return kept;
  };

  out.poles = finalize(candidates);
  double residual =
      product_residual(out.linear, out.constant, out.poles, weights, lambdas, lambda_scale);
  if (residual > tol::inversion) {
    // Fallback: keep the located pole set, refit the residues.
    auto refit = least_squares_residues(out.linear, out.constant, mus, weights, lambdas,
                                        lambda_scale);
    auto kept = finalize(std::move(refit));
    const double refit_residual =
        product_residual(out.linear, out.constant, kept, weights, lambdas, lambda_scale);
    if (refit_residual < residual) {
      out.poles = std::move(kept);
      residual = refit_residual;
    }
    if (residual > 1e-6)
      throw ComplexZero("inversion product invariant failed (residual " +
                        std::to_string(residual) + ")");
  }
  return out;
}

}  // namespace detail

RangeProjection range_projection(const std::vector<Matrix>& summands, double cutoff) {
  if (summands.empty()) throw InvalidForm("range_projection: no summands");
  const Eigen::Index n = summands.front().rows();
  Matrix total = Matrix::Zero(n, n);
  for (const auto& c : summands) {
    if (c.rows() != n || c.cols() != n) throw InvalidForm("range_projection: dimension mismatch");
    if (!is_psd(c)) throw InvalidForm("range_projection: summand is not PSD");
    total += c;
  }
  RangeProjection out;
  out.basis = range_basis(total, cutoff);
  out.projector = out.basis * out.basis.adjoint();
  return out;
}

PoleResidueForm pseudo_invert_pole_sum(const std::vector<Pole>& poles) {
  for (const auto& p : poles)
    if (!is_psd(p.residue)) throw InvalidForm("pseudo_invert_pole_sum: residues must be PSD");
  const auto core = detail::invert_negative_sum(poles, /*allow_zero_lambda=*/false);
  const Matrix& q = core.basis;
  std::vector<Pole> embedded;
  embedded.reserve(core.poles.size());
  for (const auto& p : core.poles) embedded.push_back({p.lambda, q * p.residue * q.adjoint()});
  return PoleResidueForm(q * core.linear * q.adjoint(), q * core.constant * q.adjoint(),
                         std::move(embedded));
}

ReductionStep reduction_step(const PoleResidueForm& f) {
  if (f.poles().empty()) throw DegreeZero("reduction step needs at least one finite pole");
  std::vector<Pole> scaled;
  scaled.reserve(f.poles().size());
  for (const auto& p : f.poles())
    scaled.push_back({p.lambda, p.residue / (p.lambda * p.lambda)});
  const auto core = detail::invert_negative_sum(scaled, /*allow_zero_lambda=*/false);
  const Matrix& q = core.basis;
  std::vector<Pole> embedded;
  embedded.reserve(core.poles.size());
  for (const auto& p : core.poles) embedded.push_back({p.lambda, q * p.residue * q.adjoint()});
  ReductionStep step{f.value_at_zero(), f.derivative_at_zero(),
                     PoleResidueForm(q * core.linear * q.adjoint(), q * core.constant * q.adjoint(),
                                     std::move(embedded))};
  step.inverted_rank = q.cols();
  return step;
}

JFraction expand_j_fraction(const PoleResidueForm& f, ExpansionTrace* trace) {
  require_admissible(f);
  if (trace) trace->clear();
  JFraction jf;
  jf.layout = JLayout::primal;
  PoleResidueForm g = f;
  Eigen::Index degree = partial_mcmillan_degree(g);
  const Eigen::Index max_levels = degree + 1;
  while (degree > 0) {
    if (static_cast<Eigen::Index>(jf.levels.size()) >= max_levels)
      throw NonDecreasingDegree("expansion exceeded the degree bound");
    ReductionStep step = reduction_step(g);
    const Eigen::Index next_degree = partial_mcmillan_degree(step.next);
    if (trace) trace->push_back({degree, step.inverted_rank, next_degree});
    if (next_degree >= degree)
      throw NonDecreasingDegree("degree did not decrease: " + std::to_string(degree) + " -> " +
                                std::to_string(next_degree));
    jf.levels.push_back({std::move(step.value_at_zero), std::move(step.derivative_at_zero)});
    g = std::move(step.next);
    degree = next_degree;
  }
  jf.levels.push_back({g.constant_term(), g.linear_term()});
  return jf;
}

Matrix evaluate(const JFraction& jf, Complex z) {
  if (jf.levels.empty()) throw InvalidForm("empty continued fraction");
  const Complex numerator = jf.layout == JLayout::primal ? z * z : Complex(1.0, 0.0);
  Matrix value = jf.levels.back().constant + jf.levels.back().linear * z;
  for (std::size_t k = jf.levels.size() - 1; k-- > 0;) {
    // A surviving singular value far below the level's coefficient scale
    // means z sits near a pole of this partial denominator in a direction
    // that carries weight; exact rank deficiencies are dropped cleanly.
    const double level_scale =
        jf.levels[k + 1].constant.norm() + std::abs(z) * jf.levels[k + 1].linear.norm();
    double kept = 0.0;
    const Matrix inverse = pseudo_inverse(value, tol::rank, &kept);
    if (kept < 1e-8 * std::max(level_scale, value.norm()))
      throw PoleProximity("inner denominator nearly singular in a weighted direction");
    value = jf.levels[k].constant + jf.levels[k].linear * z - numerator * inverse;
  }
  return value;
}

JFraction classical_form(const JFraction& jf) {
  JFraction out;
  out.layout = jf.layout == JLayout::primal ? JLayout::classical : JLayout::primal;
  out.levels.reserve(jf.levels.size());
  for (const auto& level : jf.levels) out.levels.push_back({level.linear, level.constant});
  return out;
}

}  // namespace stieltjescf
