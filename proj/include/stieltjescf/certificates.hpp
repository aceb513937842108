#pragma once

#include <string>
#include <vector>

#include "stieltjescf/forms.hpp"

namespace stieltjescf {

struct CertificateCheck {
  std::string name;
  double min_eigenvalue = 0.0;
  bool pass = false;
};

// One entry per condition: A >= 0, B >= 0, each C_j >= 0, lambda_j > 0,
// f(0) >= 0.  Failures are reported, never thrown.
struct CertificateReport {
  std::vector<CertificateCheck> checks;
  bool pass = false;
};

CertificateReport certify(const PoleResidueForm& f, double tolerance = tol::psd);

struct KernelSample {
  Complex z;
  double difference_kernel_min = 0.0;  // (f(z) - f(z)*) / (z - conj z), must be >= -tol*scale
  double product_kernel_max = 0.0;     // (conj(z) f(z) - z f(z)*) / (z - conj z), must be <= tol*scale
  bool pass = false;
};

struct KernelReport {
  std::vector<KernelSample> samples;
  bool pass = false;
};

// Pointwise positivity certificates at points off the real axis.  Throws
// RealAxisPoint if any sample has Im z == 0.
KernelReport kernel_certificates(const PoleResidueForm& f, const std::vector<Complex>& points,
                                 double tolerance = tol::psd);

// Convenience used as a precondition by the transforms.
void require_admissible(const PoleResidueForm& f, double tolerance = tol::psd);

}  // namespace stieltjescf
