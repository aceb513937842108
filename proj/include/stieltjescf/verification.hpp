#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace stieltjescf {

// SplitMix64: tiny deterministic generator for verification grids and sample
// sweeps.  Reports embed the seed, so identical inputs + seed reproduce
// byte-identical output.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 20177;

// Fixed evaluation grid: |z| log-uniform in [0.1, 10], argument kept at least
// 0.1 rad away from the negative real axis so no admissible form has a pole
// nearby.
std::vector<std::complex<double>> verification_points(std::size_t count = 20,
                                                      std::uint64_t seed = kDefaultSeed);

// Points off the real axis (|Im| bounded away from 0) for kernel sampling;
// alternates upper and lower half-plane.
std::vector<std::complex<double>> half_plane_points(std::size_t count,
                                                    std::uint64_t seed = kDefaultSeed);

}  // namespace stieltjescf
