#pragma once

// Internal helpers for small real polynomials, ascending coefficient order.
// Degrees stay tiny (bounded by pole counts), so no attention to asymptotics.

#include <complex>
#include <cstddef>
#include <vector>

namespace stieltjescf::detail {

using Poly = std::vector<double>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly poly_add(const Poly& a, const Poly& b, double scale = 1.0) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += scale * b[i];
  return out;
}

template <typename Scalar>
Scalar poly_eval(const Poly& p, Scalar z) {
  Scalar acc = Scalar(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + Scalar(p[i]);
  return acc;
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = static_cast<double>(i) * p[i];
  return out;
}

// prod_j (z + roots[j])
inline Poly poly_from_negated_roots(const std::vector<double>& roots) {
  Poly out{1.0};
  for (double r : roots) out = poly_mul(out, Poly{r, 1.0});
  return out;
}

}  // namespace stieltjescf::detail
