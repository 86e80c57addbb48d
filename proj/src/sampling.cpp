#include "pervcheck/sampling.hpp"

#include <stdexcept>

namespace pervcheck {

long SampleRng::uniform(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

TorsionPoint random_rational_point(int n, SampleRng& rng) {
  std::vector<TorsionCoord> c;
  for (int i = 0; i < n; ++i) {
    Rational q(rng.uniform(1, 9), rng.uniform(1, 9));
    q.canonicalize();
    if (rng.uniform(0, 1)) q = -q;
    c.emplace_back(q, Rational(0));
  }
  return TorsionPoint(std::move(c));
}

TorsionPoint random_torsion_point(int n, SampleRng& rng, bool mixed) {
  static const long orders[] = {1, 2, 3, 4, 6, 12};
  std::vector<TorsionCoord> c;
  for (int i = 0; i < n; ++i) {
    const long d = orders[rng.uniform(0, 5)];
    Rational theta(rng.uniform(0, d - 1), d);
    theta.canonicalize();
    Rational q(1);
    if (mixed && rng.uniform(0, 1)) {
      q = Rational(rng.uniform(1, 5), rng.uniform(1, 5));
      q.canonicalize();
    }
    c.emplace_back(q, theta);
  }
  return TorsionPoint(std::move(c));
}

std::vector<TorsionPoint> torsion_grid(int n, int order) {
  std::vector<TorsionPoint> out;
  std::vector<int> k(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<TorsionCoord> c;
    for (int x : k) {
      Rational theta(x, order);
      theta.canonicalize();
      c.emplace_back(Rational(1), theta);
    }
    out.emplace_back(std::move(c));
    int pos = 0;
    while (pos < n && ++k[static_cast<std::size_t>(pos)] == order) k[static_cast<std::size_t>(pos++)] = 0;
    if (pos == n) break;
  }
  return out;
}

std::vector<TorsionPoint> sample_points(int n, std::uint64_t seed, int count) {
  SampleRng rng(seed);
  std::vector<TorsionPoint> out;
  for (int i = 0; i < count; ++i)
    out.push_back(i % 2 == 0 ? random_rational_point(n, rng) : random_torsion_point(n, rng, i % 4 == 3));
  return out;
}

} // namespace pervcheck
