#pragma once

#include "pervcheck/cyclotomic.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace pervcheck {

/// Seeded generator with a platform-independent integer mapping (the standard
/// distributions are not portable across library implementations).
class SampleRng {
public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform integer in [lo, hi], by rejection.
  long uniform(long lo, long hi);

private:
  std::mt19937_64 engine_;
};

/// Coordinates +-a/b with 1 <= a, b <= 9.
TorsionPoint random_rational_point(int n, SampleRng& rng);
/// Modulus 1 (or a random rational when `mixed`), angles k/d with d | 12.
TorsionPoint random_torsion_point(int n, SampleRng& rng, bool mixed);
/// Every point with coordinates e^{2 pi i k/order}.
std::vector<TorsionPoint> torsion_grid(int n, int order);
/// `count` points alternating between the two random families.
std::vector<TorsionPoint> sample_points(int n, std::uint64_t seed, int count);

} // namespace pervcheck
