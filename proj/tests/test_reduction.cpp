#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stieltjescf/certificates.hpp"
#include "stieltjescf/errors.hpp"
#include "stieltjescf/reduction.hpp"
#include "stieltjescf/verification.hpp"
#include "support/random_forms.hpp"
#include "support/rational_oracle.hpp"

using namespace stieltjescf;
using doctest::Approx;
using testsupport::random_admissible;

namespace {

Matrix scalar1(double v) { return Matrix::Constant(1, 1, Complex(v, 0.0)); }

double rel_diff(const Matrix& a, const Matrix& b) {
  const double scale = std::max(1.0, b.norm());
  return (a - b).norm() / scale;
}

}  // namespace

TEST_CASE("rational oracle for the two-pole scalar inversion") {
  // R(z) = -1/(z+1) - 1/(z+2).  The oracle divides exactly:
  // -1/R = z/2 + 3/4 - (1/8)/(z + 3/2).
  const auto inv = oracle::invert_two_pole({1}, {1}, {1}, {2});
  CHECK(inv.linear == oracle::Rat(1, 2));
  CHECK(inv.constant == oracle::Rat(3, 4));
  CHECK(inv.mu == oracle::Rat(3, 2));
  CHECK(inv.residue == oracle::Rat(1, 8));
  // Cross check by evaluation: -1/R(1) = (2*3)/5.
  const double direct = -1.0 / (-1.0 / 2.0 - 1.0 / 3.0);
  const double form = inv.linear.value() + inv.constant.value() -
                      inv.residue.value() / (1.0 + inv.mu.value());
  CHECK(form == Approx(direct).epsilon(1e-15));
}

TEST_CASE("range projection") {
  const Matrix id = Matrix::Identity(2, 2);
  auto rp = range_projection({id});
  CHECK(rel_diff(rp.projector, id) < 1e-12);

  Matrix d10 = Matrix::Zero(2, 2);
  d10(0, 0) = 1.0;
  rp = range_projection({d10});
  CHECK(rel_diff(rp.projector, d10) < 1e-12);
  CHECK(rp.basis.cols() == 1);

  Matrix d02 = Matrix::Zero(2, 2);
  d02(1, 1) = 2.0;
  rp = range_projection({d10, d02});
  CHECK(rel_diff(rp.projector, id) < 1e-12);

  // Projector properties and compression identity on random PSD summands.
  SplitMix64 rng(11);
  for (int i = 0; i < 10; ++i) {
    std::vector<Matrix> cs;
    for (int j = 0; j < 3; ++j)
      cs.push_back(testsupport::random_psd(rng, 4, 1 + static_cast<Eigen::Index>(rng.next() % 2)));
    rp = range_projection(cs);
    CHECK(rel_diff(rp.projector * rp.projector, rp.projector) < 1e-10);
    CHECK(rel_diff(rp.projector.adjoint(), rp.projector) < 1e-12);
    for (const auto& c : cs) CHECK(rel_diff(rp.projector * c * rp.projector, c) < 1e-10);
  }

  rp = range_projection({Matrix::Zero(2, 2)});
  CHECK(rp.basis.cols() == 0);
  CHECK(rp.projector.norm() == Approx(0.0));
}

TEST_CASE("pseudo inversion: single scalar pole") {
  // R(z) = -1/(z+1)  ->  z + 1.
  const auto out = pseudo_invert_pole_sum({{1.0, scalar1(1.0)}});
  CHECK(out.linear_term()(0, 0).real() == Approx(1.0));
  CHECK(out.constant_term()(0, 0).real() == Approx(1.0));
  CHECK(out.poles().empty());
}

TEST_CASE("pseudo inversion: rank-deficient matrix pole") {
  // R(z) = -diag(1,0)/(z+1)  ->  diag(z+1, 0).
  Matrix c = Matrix::Zero(2, 2);
  c(0, 0) = 1.0;
  const auto out = pseudo_invert_pole_sum({{1.0, c}});
  CHECK(out.linear_term()(0, 0).real() == Approx(1.0));
  CHECK(out.linear_term()(1, 1).real() == Approx(0.0));
  CHECK(out.constant_term()(0, 0).real() == Approx(1.0));
  CHECK(out.constant_term()(1, 1).real() == Approx(0.0));
  CHECK(out.poles().empty());
}

TEST_CASE("pseudo inversion: two scalar poles against the oracle") {
  const auto inv = oracle::invert_two_pole({1}, {1}, {1}, {2});
  const auto out = pseudo_invert_pole_sum({{1.0, scalar1(1.0)}, {2.0, scalar1(1.0)}});
  CHECK(out.linear_term()(0, 0).real() == Approx(inv.linear.value()).epsilon(1e-12));
  CHECK(out.constant_term()(0, 0).real() == Approx(inv.constant.value()).epsilon(1e-12));
  REQUIRE(out.poles().size() == 1);
  CHECK(out.poles()[0].lambda == Approx(inv.mu.value()).epsilon(1e-12));
  CHECK(out.poles()[0].residue(0, 0).real() == Approx(inv.residue.value()).epsilon(1e-12));
}

TEST_CASE("pseudo inversion: rational oracle sweep over two-pole data") {
  SplitMix64 rng(17);
  for (int i = 0; i < 12; ++i) {
    const long long c1 = 1 + static_cast<long long>(rng.next() % 5);
    const long long c2 = 1 + static_cast<long long>(rng.next() % 5);
    const long long l1 = 1 + static_cast<long long>(rng.next() % 3);
    const long long l2 = l1 + 1 + static_cast<long long>(rng.next() % 3);
    const auto expected = oracle::invert_two_pole({c1}, {l1}, {c2}, {l2});
    const auto out = pseudo_invert_pole_sum({{static_cast<double>(l1), scalar1(static_cast<double>(c1))},
                                             {static_cast<double>(l2), scalar1(static_cast<double>(c2))}});
    CHECK(out.linear_term()(0, 0).real() == Approx(expected.linear.value()).epsilon(1e-11));
    CHECK(out.constant_term()(0, 0).real() == Approx(expected.constant.value()).epsilon(1e-11));
    REQUIRE(out.poles().size() == 1);
    CHECK(out.poles()[0].lambda == Approx(expected.mu.value()).epsilon(1e-11));
    CHECK(out.poles()[0].residue(0, 0).real() == Approx(expected.residue.value()).epsilon(1e-11));
  }
}

TEST_CASE("pseudo inversion: errors") {
  CHECK_THROWS_AS(pseudo_invert_pole_sum({}), NullFunction);
  CHECK_THROWS_AS(pseudo_invert_pole_sum({{1.0, Matrix::Zero(2, 2)}}), NullFunction);
}

TEST_CASE("pseudo inversion invariants on random pole sets") {
  SplitMix64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next() % 4);
    const int d = 1 + static_cast<int>(rng.next() % 4);
    const auto lambdas = testsupport::separated_lambdas(rng, d);
    std::vector<Pole> poles;
    Eigen::Index degree_in = 0;
    Matrix total = Matrix::Zero(n, n);
    for (double lambda : lambdas) {
      const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng.next() % n);
      Matrix c = testsupport::random_psd(rng, n, rank);
      degree_in += psd_rank(c);
      total += c;
      poles.push_back({lambda, std::move(c)});
    }
    const auto out = pseudo_invert_pole_sum(poles);

    // Degree law: delta(input) = rank(sum C) + delta(output), exactly.
    CHECK(degree_in == psd_rank(total) + partial_mcmillan_degree(out));

    // Output is admissible.
    CHECK(certify(out, 1e-8).pass);

    const auto rp = range_projection(total.size() ? std::vector<Matrix>{total} : std::vector<Matrix>{});

    // Product identity -[R]^{-1}(x) * (-Pi R(x) Pi) = Pi on positive points.
    for (double x : {0.4, 1.3, 3.7}) {
      Matrix rsum = Matrix::Zero(n, n);
      for (const auto& p : poles) rsum += p.residue / (x + p.lambda);
      const Matrix lhs = evaluate(out, Complex(x, 0.0)) * (rp.projector * rsum * rp.projector);
      CHECK((lhs - rp.projector).norm() < 1e-8 * std::max(1.0, rp.projector.norm()));
    }

    // Value at zero equals the inverse of the compressed moment sum.
    Matrix weighted = Matrix::Zero(n, n);
    for (const auto& p : poles) weighted += p.residue / p.lambda;
    const Matrix compressed = rp.basis.adjoint() * weighted * rp.basis;
    const Matrix value0 = rp.basis.adjoint() * evaluate(out, Complex(0.0, 0.0)) * rp.basis;
    CHECK(rel_diff(value0, compressed.inverse()) < 1e-8);
  }
}

TEST_CASE("reduction step") {
  // f(z) = z/(z+1): A0 = 0, B0 = 1, next = z + 1.
  const auto mobius = PoleResidueForm::scalar(0.0, 1.0, {{1.0, 1.0}});
  auto step = reduction_step(mobius);
  CHECK(step.value_at_zero(0, 0).real() == Approx(0.0));
  CHECK(step.derivative_at_zero(0, 0).real() == Approx(1.0));
  CHECK(step.next.linear_term()(0, 0).real() == Approx(1.0));
  CHECK(step.next.constant_term()(0, 0).real() == Approx(1.0));
  CHECK(step.next.poles().empty());

  // f(z) = z + 1 - 1/(z+1): f(0) = 0, f'(0) = 2, next = z + 1.
  const auto f = PoleResidueForm::scalar(1.0, 1.0, {{1.0, 1.0}});
  step = reduction_step(f);
  CHECK(step.value_at_zero(0, 0).real() == Approx(0.0));
  CHECK(step.derivative_at_zero(0, 0).real() == Approx(2.0));
  CHECK(step.next.linear_term()(0, 0).real() == Approx(1.0));
  CHECK(step.next.constant_term()(0, 0).real() == Approx(1.0));

  CHECK_THROWS_AS(reduction_step(PoleResidueForm::scalar(1.0, 0.0)), DegreeZero);
}

TEST_CASE("expansion of the golden scalar chain") {
  const auto mobius = PoleResidueForm::scalar(0.0, 1.0, {{1.0, 1.0}});
  const auto jf = expand_j_fraction(mobius);
  REQUIRE(jf.levels.size() == 2);
  CHECK(jf.levels[0].constant(0, 0).real() == Approx(0.0));
  CHECK(jf.levels[0].linear(0, 0).real() == Approx(1.0));
  CHECK(jf.levels[1].constant(0, 0).real() == Approx(1.0));
  CHECK(jf.levels[1].linear(0, 0).real() == Approx(1.0));

  // Affine input: a single terminal level, zero inversions.
  const auto identity = PoleResidueForm::scalar(1.0, 0.0);
  const auto affine = expand_j_fraction(identity);
  REQUIRE(affine.levels.size() == 1);
  CHECK(affine.levels[0].constant(0, 0).real() == Approx(0.0));
  CHECK(affine.levels[0].linear(0, 0).real() == Approx(1.0));
}

TEST_CASE("j-fraction evaluation") {
  JFraction jf;
  jf.levels.push_back({scalar1(0.0), scalar1(1.0)});
  jf.levels.push_back({scalar1(1.0), scalar1(1.0)});
  CHECK(evaluate(jf, Complex(1.0, 0.0))(0, 0).real() == Approx(0.5));

  JFraction affine;
  affine.levels.push_back({scalar1(0.0), scalar1(1.0)});
  CHECK(evaluate(affine, Complex(7.0, 0.0))(0, 0).real() == Approx(7.0));

  // Singular inner level with a zero-residue direction: the pseudo-inverse
  // drops the null direction and matches the direct evaluation.
  Matrix c = Matrix::Zero(2, 2);
  c(0, 0) = 1.0;
  Matrix b = Matrix::Identity(2, 2) + c;  // f(0) = I
  PoleResidueForm f(Matrix::Zero(2, 2), b, {{1.0, c}});
  const auto expanded = expand_j_fraction(f);
  for (Complex z : verification_points(10))
    CHECK(rel_diff(evaluate(expanded, z), evaluate(f, z)) < 1e-10);

  // Near-singular inner level in a direction that carries weight.
  CHECK_THROWS_AS(evaluate(jf, Complex(-1.0 + 1e-9, 0.0)), PoleProximity);
}

TEST_CASE("round trip on random instances") {
  SplitMix64 rng(31);
  const auto points = verification_points(25);
  for (int i = 0; i < 25; ++i) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next() % 4);
    const int d = 1 + static_cast<int>(rng.next() % 5);
    const auto f = random_admissible(rng, n, d);
    ExpansionTrace trace;
    const auto jf = expand_j_fraction(f, &trace);
    CHECK(static_cast<Eigen::Index>(jf.levels.size()) <= partial_mcmillan_degree(f) + 1);
    for (const auto& step : trace) {
      CHECK(step.degree_before == step.inverted_rank + step.degree_after);  // exact degree law
      CHECK(step.degree_after < step.degree_before);
    }
    for (const auto& level : jf.levels) {
      CHECK(is_psd(level.constant, 1e-8));
      CHECK(is_psd(level.linear, 1e-8));
    }
    for (Complex z : points) {
      const Matrix direct = evaluate(f, z);
      CHECK((evaluate(jf, z) - direct).norm() <= 1e-6 * std::max(1.0, direct.norm()));
    }
  }
}

TEST_CASE("classical form") {
  const auto mobius = PoleResidueForm::scalar(0.0, 1.0, {{1.0, 1.0}});
  const auto jf = expand_j_fraction(mobius);
  const auto classical = classical_form(jf);
  CHECK(classical.layout == JLayout::classical);
  // z f(1/z) at z = 2 for the reflection fixed point: 2/3.
  CHECK(evaluate(classical, Complex(2.0, 0.0))(0, 0).real() == Approx(2.0 / 3.0));

  // Affine-only fraction: z f(1/z) = 1 for f(z) = z.
  JFraction affine;
  affine.levels.push_back({scalar1(0.0), scalar1(1.0)});
  const auto cf = classical_form(affine);
  CHECK(evaluate(cf, Complex(3.0, 0.0))(0, 0).real() == Approx(1.0));

  // Double application returns an evaluation-equivalent fraction.
  const auto twice = classical_form(classical);
  CHECK(twice.layout == JLayout::primal);
  for (Complex z : verification_points(10))
    CHECK(rel_diff(evaluate(twice, z), evaluate(jf, z)) < 1e-12);
}

TEST_CASE("classical form evaluation identity on random instances") {
  SplitMix64 rng(47);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next() % 3);
    const auto f = random_admissible(rng, n, 1 + static_cast<int>(rng.next() % 4));
    const auto jf = expand_j_fraction(f);
    const auto classical = classical_form(jf);
    for (Complex z : verification_points(12)) {
      const Matrix lhs = static_cast<Matrix>(z * evaluate(jf, 1.0 / z));
      CHECK(rel_diff(evaluate(classical, z), lhs) < 1e-8);
    }
    // Reflection route: expanding the reflected function evaluates equally.
    const auto reflected = expand_j_fraction(reflect(f));
    for (Complex z : verification_points(8)) {
      CHECK(rel_diff(evaluate(reflected, z), evaluate(classical, z)) < 1e-6);
    }
  }
}
