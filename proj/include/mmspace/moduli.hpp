#pragma once

// Coordinates on the moduli of n-point spaces: an n-point metric is a vector
// r of positive pair lengths obeying the triangle inequalities, a fully
// supported measure is a weight vector s in the open simplex. Relabeling
// points by a permutation sigma acts by (r o sigma)({i,j}) = r({sigma(i),
// sigma(j)}) and (s o sigma)(i) = s(sigma(i)).
//
// Pair order (the linearization used for comparisons and canonical forms):
// {i,j} with i < j, lexicographic in (i, j): (0,1), (0,2), ..., (n-2,n-1).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mmspace/space.hpp"

namespace mmspace {

using Permutation = std::vector<std::size_t>;

class MetricVector {
 public:
  /// `values` in pair order. Throws InvalidInput on a non-positive entry,
  /// a wrong length, or a violated triangle inequality.
  MetricVector(std::size_t n, std::vector<Rational> values);

  static std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }
  /// Position of {i, j} (i != j) in pair order.
  static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);

  std::size_t points() const noexcept { return n_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& at(std::size_t i, std::size_t j) const { return values_[pair_index(i, j, n_)]; }

  MetricVector permuted(std::span<const std::size_t> sigma) const;

  friend bool operator==(const MetricVector&, const MetricVector&) = default;
  friend bool operator<(const MetricVector& a, const MetricVector& b) { return a.values_ < b.values_; }

 private:
  std::size_t n_;
  std::vector<Rational> values_;
};

class WeightVector {
 public:
  /// Throws InvalidInput unless every entry is positive and they sum to 1.
  explicit WeightVector(std::vector<Rational> values);

  std::size_t points() const noexcept { return values_.size(); }
  const std::vector<Rational>& values() const noexcept { return values_; }
  WeightVector permuted(std::span<const std::size_t> sigma) const;

  /// The barycenter (1/n, ..., 1/n).
  static WeightVector barycenter(std::size_t n);

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<Rational> values_;
};

FiniteMetricSpace phi_gh(const MetricVector& r);
/// Throws InvalidInput when r and s disagree on n.
FiniteMMSpace phi_b(const MetricVector& r, const WeightVector& s);

MetricVector metric_vector_of(const FiniteMetricSpace& X);
WeightVector weight_vector_of(const FiniteMMSpace& X);

/// Point i of the result is point sigma[i] of X (labels travel along).
FiniteMetricSpace relabel(const FiniteMetricSpace& X, std::span<const std::size_t> sigma);
FiniteMMSpace relabel(const FiniteMMSpace& X, std::span<const std::size_t> sigma);

/// max |a - b| over coordinates.
Rational sup_distance(const MetricVector& a, const MetricVector& b);
Rational sup_distance(const WeightVector& a, const WeightVector& b);

struct CanonicalOptions {
  /// Largest accepted n; the search visits all n! relabelings.
  std::size_t max_points = 8;
  int threads = 0;
};

struct CanonicalForm {
  MetricVector r;
  std::optional<WeightVector> s;
  /// The lexicographically smallest sigma carrying the input onto this form:
  /// input r o sigma == r (and input s o sigma == s).
  Permutation sigma;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.r == b.r && a.s == b.s;
  }
};

/// The lexicographically least r o sigma (least (r o sigma, s o sigma) with
/// weights) over all sigma. Two inputs are relabelings of each other iff
/// their canonical forms agree. Throws GuardExceeded past max_points.
CanonicalForm canonical_form(const MetricVector& r, const CanonicalOptions& options = {});
CanonicalForm canonical_form(const MetricVector& r, const WeightVector& s,
                             const CanonicalOptions& options = {});

/// All distinct relabelings r o sigma, sorted. At most n! of them.
std::vector<MetricVector> orbit(const MetricVector& r, std::size_t max_points = 8);

/// min over sigma of sup_distance(a, b o sigma): the quotient distance.
Rational orbit_distance(const MetricVector& a, const MetricVector& b, std::size_t max_points = 8);
Rational orbit_distance(const MetricVector& a, const WeightVector& as, const MetricVector& b,
                        const WeightVector& bs, std::size_t max_points = 8);

/// Given dis S < sep X and S a correspondence, returns f: X -> Y injective
/// with graph f inside S, choosing f(x) as the least y related to x. When
/// |X| = |Y| also confirms S == graph f, so f is a bijection.
/// Throws HypothesisViolation naming the failed conditions.
Permutation relation_to_injection(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                  const Relation& S);

/// Measured variant: the second hypothesis may instead be
/// pi(S) > 1 - (least atom of X) for the given coupling pi.
Permutation relation_to_injection(const FiniteMMSpace& X, const FiniteMMSpace& Y, const Relation& S,
                                  const std::optional<Coupling>& pi);

/// For a bijection f with 1 - pi(graph f) < delta, returns whether
/// max_x |mu_X(x) - mu_Y(f(x))| < delta (expected true). Throws
/// NotApplicable when 1 - pi(graph f) >= delta and InvalidInput when f is not
/// a bijection or pi is not a coupling.
bool mass_closeness(std::span<const std::size_t> f, const Coupling& pi, const FiniteMMSpace& X,
                    const FiniteMMSpace& Y, const Rational& delta);

/// Attaches mass 1/|X| to every point.
FiniteMMSpace uniform_lift(const FiniteMetricSpace& X);

namespace serial {

/// Single-threaded std::next_permutation sweep; same result as canonical_form.
CanonicalForm canonical_form(const MetricVector& r, const std::optional<WeightVector>& s,
                             std::size_t max_points = 8);

}  // namespace serial

}  // namespace mmspace
