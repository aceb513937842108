#include "stieltjescf/verification.hpp"

#include <cmath>

namespace stieltjescf {

std::vector<std::complex<double>> verification_points(std::size_t count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::complex<double>> pts;
  pts.reserve(count);
  const double pi = 3.14159265358979323846;
  for (std::size_t i = 0; i < count; ++i) {
    const double radius = std::pow(10.0, rng.uniform(-1.0, 1.0));
    const double arg = rng.uniform(-(pi - 0.1), pi - 0.1);
    pts.emplace_back(radius * std::cos(arg), radius * std::sin(arg));
  }
  return pts;
}

std::vector<std::complex<double>> half_plane_points(std::size_t count, std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0x5bf0a8b1ULL);
  std::vector<std::complex<double>> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double re = rng.uniform(-5.0, 5.0);
    const double im = rng.uniform(0.05, 5.0);
    pts.emplace_back(re, (i % 2 == 0) ? im : -im);
  }
  return pts;
}

}  // namespace stieltjescf
