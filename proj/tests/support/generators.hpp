#pragma once

// Seeded random instances on exact rationals.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "mmspace/moduli.hpp"
#include "mmspace/space.hpp"

namespace mmspace {

/// n/d in lowest terms; the two-argument mpq_class constructor leaves the
/// fraction as given.
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace mmspace

namespace mmspace::testing {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng, long lo_num, long hi_num, long den) {
  return frac(uniform_int(rng, lo_num, hi_num), den);
}

/// Every off-diagonal entry in [a, 2a], so all triangles hold.
inline FiniteMetricSpace random_band_metric(Rng& rng, std::size_t n) {
  const long den = uniform_int(rng, 1, 10);
  const long a = uniform_int(rng, 1, 10);
  Matrix<Rational> d(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = frac(uniform_int(rng, a, 2 * a), den);
  return FiniteMetricSpace(std::move(d));
}

/// Distinct points on a line with small rational coordinates.
inline FiniteMetricSpace random_line_metric(Rng& rng, std::size_t n) {
  std::vector<long> xs;
  while (xs.size() < n) {
    long x = uniform_int(rng, 0, 12);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  const long den = uniform_int(rng, 1, 4);
  Matrix<Rational> d(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = frac(std::abs(xs[i] - xs[j]), den);
  return FiniteMetricSpace(std::move(d));
}

inline FiniteMetricSpace random_metric(Rng& rng, std::size_t n) {
  return uniform_int(rng, 0, 1) ? random_band_metric(rng, n) : random_line_metric(rng, n);
}

inline std::vector<Rational> random_masses(Rng& rng, std::size_t n) {
  std::vector<long> w(n);
  for (auto& x : w) x = uniform_int(rng, 1, 6);
  const long total = std::accumulate(w.begin(), w.end(), 0L);
  std::vector<Rational> out;
  for (long x : w) out.emplace_back(x, total);
  for (auto& q : out) q.canonicalize();
  return out;
}

inline FiniteMMSpace random_mm_space(Rng& rng, std::size_t n) {
  return FiniteMMSpace(random_metric(rng, n), random_masses(rng, n));
}

inline Permutation random_permutation(Rng& rng, std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// X relabeled by sigma with every distance nudged by at most `jitter`,
/// redrawn until the result is a metric.
inline FiniteMetricSpace perturbed_copy(Rng& rng, const FiniteMetricSpace& X, std::span<const std::size_t> sigma,
                                        const Rational& jitter) {
  const std::size_t n = X.size();
  for (;;) {
    Matrix<Rational> d(n, n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        d(i, j) = d(j, i) = X.d(sigma[i], sigma[j]) + jitter * frac(uniform_int(rng, -4, 4), 4);
    if (validate(SpaceData{X.labels(), d, std::nullopt}).empty()) return FiniteMetricSpace(std::move(d));
  }
}

/// Masses of X relabeled by sigma, each scaled by a factor in [0.9, 1.1] and
/// renormalized.
inline std::vector<Rational> perturbed_masses(Rng& rng, std::span<const Rational> mass,
                                              std::span<const std::size_t> sigma) {
  std::vector<Rational> out;
  Rational total = 0;
  for (std::size_t v : sigma) {
    Rational q = mass[v] * frac(uniform_int(rng, 18, 22), 20);
    total += q;
    out.push_back(q);
  }
  for (auto& q : out) q /= total;
  return out;
}

/// A near mm-isomorphic copy of X: the case where the box witness tends to
/// satisfy the injection hypotheses.
inline FiniteMMSpace perturbed_mm_copy(Rng& rng, const FiniteMMSpace& X, const Rational& jitter) {
  const auto sigma = random_permutation(rng, X.size());
  return FiniteMMSpace(perturbed_copy(rng, X.space(), sigma, jitter), perturbed_masses(rng, X.mass(), sigma));
}

/// A point of R_n: entries in [a, 2a].
inline MetricVector random_metric_vector(Rng& rng, std::size_t n) {
  return metric_vector_of(random_band_metric(rng, n));
}

/// A nearby point of R_n (each entry moved by at most `step`), retried until
/// it satisfies the triangle inequalities.
inline MetricVector nearby_metric_vector(Rng& rng, const MetricVector& r, const Rational& step) {
  for (;;) {
    std::vector<Rational> v = r.values();
    for (auto& x : v) x += step * frac(uniform_int(rng, -3, 3), 3);
    bool ok = std::all_of(v.begin(), v.end(), [](const Rational& x) { return x > 0; });
    if (ok) {
      try {
        return MetricVector(r.points(), std::move(v));
      } catch (const std::exception&) {
      }
    }
  }
}

inline WeightVector random_weight_vector(Rng& rng, std::size_t n) { return WeightVector(random_masses(rng, n)); }

inline WeightVector nearby_weight_vector(Rng& rng, const WeightVector& s) {
  Permutation identity(s.points());
  std::iota(identity.begin(), identity.end(), 0);
  return WeightVector(perturbed_masses(rng, s.values(), identity));
}

}  // namespace mmspace::testing
