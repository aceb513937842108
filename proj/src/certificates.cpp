#include "stieltjescf/certificates.hpp"

#include <algorithm>
#include <cmath>

#include "stieltjescf/errors.hpp"

namespace stieltjescf {

namespace {

CertificateCheck psd_check(std::string name, const Matrix& m, double tolerance) {
  const double mineig = min_eigenvalue(m);
  const double scale = std::max(1.0, hermitian_norm(m));
  return {std::move(name), mineig, mineig >= -tolerance * scale};
}

}  // namespace

CertificateReport certify(const PoleResidueForm& f, double tolerance) {
  CertificateReport report;
  report.checks.push_back(psd_check("linear term", f.linear_term(), tolerance));
  report.checks.push_back(psd_check("constant term", f.constant_term(), tolerance));
  std::size_t j = 0;
  for (const auto& p : f.poles()) {
    report.checks.push_back(psd_check("residue[" + std::to_string(j) + "]", p.residue, tolerance));
    report.checks.push_back({"pole[" + std::to_string(j) + "] > 0", p.lambda, p.lambda > 0.0});
    ++j;
  }
  report.checks.push_back(psd_check("value at zero", f.value_at_zero(), tolerance));
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CertificateCheck& c) { return c.pass; });
  return report;
}

KernelReport kernel_certificates(const PoleResidueForm& f, const std::vector<Complex>& points,
                                 double tolerance) {
  KernelReport report;
  report.pass = true;
  for (Complex z : points) {
    if (z.imag() == 0.0) throw RealAxisPoint("kernel certificates need Im z != 0");
    const Matrix fz = evaluate(f, z);
    const Complex denom = z - std::conj(z);
    const Matrix difference = (fz - fz.adjoint()) / denom;
    const Matrix product = (std::conj(z) * fz - z * fz.adjoint()) / denom;
    KernelSample sample;
    sample.z = z;
    sample.difference_kernel_min = min_eigenvalue(difference);
    sample.product_kernel_max = max_eigenvalue(product);
    const double scale_d = std::max(1.0, hermitian_norm(difference));
    const double scale_p = std::max(1.0, hermitian_norm(product));
    sample.pass = sample.difference_kernel_min >= -tolerance * scale_d &&
                  sample.product_kernel_max <= tolerance * scale_p;
    report.pass = report.pass && sample.pass;
    report.samples.push_back(sample);
  }
  return report;
}

void require_admissible(const PoleResidueForm& f, double tolerance) {
  const CertificateReport report = certify(f, tolerance);
  if (!report.pass) {
    for (const auto& c : report.checks)
      if (!c.pass)
        throw NotAdmissible("certification failed: " + c.name +
                            " (min eigenvalue " + std::to_string(c.min_eigenvalue) + ")");
  }
}

}  // namespace stieltjescf
