#include "mmspace/moduli.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mmspace/errors.hpp"
#include "mmspace/transport.hpp"

namespace mmspace {

namespace {

void check_permutation(std::span<const std::size_t> sigma, std::size_t n) {
  if (sigma.size() != n) throw InvalidInput("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t v : sigma) {
    if (v >= n || seen[v]) throw InvalidInput("not a permutation");
    seen[v] = true;
  }
}

void check_guard(std::size_t n, std::size_t max_points, const char* what) {
  if (n > max_points) {
    mpz_class perms;
    mpz_fac_ui(perms.get_mpz_t(), n);
    throw GuardExceeded(std::string(what) + ": n = " + std::to_string(n) + " exceeds the limit " +
                            std::to_string(max_points),
                        perms.get_str());
  }
}

std::vector<std::uint32_t> ranks_of(const std::vector<Rational>& values) {
  std::vector<Rational> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::uint32_t> out;
  out.reserve(values.size());
  for (const auto& v : values)
    out.push_back(static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
  return out;
}

// Integer image of (r o sigma, s o sigma); lexicographic order on keys is the
// order on the rational vectors since ranks are order-preserving per block.
class RelabelKey {
 public:
  RelabelKey(const MetricVector& r, const std::optional<WeightVector>& s)
      : n_(r.points()), r_rank_(ranks_of(r.values())) {
    if (s) s_rank_ = ranks_of(s->values());
  }

  void fill(std::span<const std::size_t> sigma, std::vector<std::uint32_t>& key) const {
    key.clear();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        key.push_back(r_rank_[MetricVector::pair_index(sigma[i], sigma[j], n_)]);
    for (std::size_t i = 0; i < s_rank_.size(); ++i) key.push_back(s_rank_[sigma[i]]);
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> r_rank_;
  std::vector<std::uint32_t> s_rank_;
};

struct Best {
  std::vector<std::uint32_t> key;
  Permutation sigma;

  void offer(const std::vector<std::uint32_t>& k, const Permutation& s) {
    if (sigma.empty() || k < key || (k == key && s < sigma)) {
      key = k;
      sigma = s;
    }
  }
};

CanonicalForm finish(const MetricVector& r, const std::optional<WeightVector>& s, Permutation sigma) {
  std::optional<WeightVector> ws;
  if (s) ws = s->permuted(sigma);
  return {r.permuted(sigma), std::move(ws), std::move(sigma)};
}

CanonicalForm canonical_parallel(const MetricVector& r, const std::optional<WeightVector>& s,
                                 const CanonicalOptions& options) {
  const std::size_t n = r.points();
  check_guard(n, options.max_points, "canonical_form");
  if (s && s->points() != n) throw InvalidInput("canonical_form: r and s disagree on n");
  const RelabelKey keys(r, s);
  Best best;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

  // One task per choice of sigma(0); each sweeps the remaining (n-1)! tails.
#pragma omp parallel num_threads(threads)
  {
    Best local;
    std::vector<std::uint32_t> key;
#pragma omp for schedule(dynamic)
    for (std::size_t head = 0; head < n; ++head) {
      Permutation sigma(n);
      sigma[0] = head;
      std::size_t k = 1;
      for (std::size_t v = 0; v < n; ++v)
        if (v != head) sigma[k++] = v;
      do {
        keys.fill(sigma, key);
        local.offer(key, sigma);
      } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
    }
#pragma omp critical(mmspace_canonical_reduce)
    {
      if (!local.sigma.empty()) best.offer(local.key, local.sigma);
    }
  }
  return finish(r, s, std::move(best.sigma));
}

std::string describe_failures(const std::vector<std::string>& failed) {
  std::string out = "relation_to_injection hypotheses fail:";
  for (const auto& f : failed) out += " [" + f + "]";
  return out;
}

Permutation injection_from(const Relation& S, std::size_t n, std::size_t m) {
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  Permutation f(n, none);
  for (auto [x, y] : S)
    if (f[x] == none) f[x] = y;  // pairs are sorted, so this is the least y
  std::vector<bool> hit(m, false);
  for (std::size_t x = 0; x < n; ++x) {
    if (f[x] == none) throw std::logic_error("relation_to_injection: some x has no partner");
    if (hit[f[x]]) throw std::logic_error("relation_to_injection: choice is not injective");
    hit[f[x]] = true;
  }
  if (n == m && S != Relation::graph(f))
    throw std::logic_error("relation_to_injection: S differs from the graph of the bijection");
  return f;
}

}  // namespace

MetricVector::MetricVector(std::size_t n, std::vector<Rational> values) : n_(n), values_(std::move(values)) {
  if (n_ == 0) throw InvalidInput("metric vector needs at least one point");
  for (auto& v : values_) v.canonicalize();
  if (values_.size() != pair_count(n_))
    throw InvalidInput("metric vector for n = " + std::to_string(n_) + " needs " +
                       std::to_string(pair_count(n_)) + " entries, got " + std::to_string(values_.size()));
  for (std::size_t p = 0; p < values_.size(); ++p)
    if (values_[p] <= 0) throw InvalidInput("metric vector entry " + std::to_string(p) + " is not positive");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        if (i == j || j == k || i == k) continue;
        if (at(i, k) > at(i, j) + at(j, k))
          throw InvalidInput("metric vector violates the triangle inequality at (" + std::to_string(i) +
                             "," + std::to_string(j) + "," + std::to_string(k) + ")");
      }
}

std::size_t MetricVector::pair_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j) std::swap(i, j);
  // Pairs before row i: (n-1) + (n-2) + ... + (n-i).
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

MetricVector MetricVector::permuted(std::span<const std::size_t> sigma) const {
  check_permutation(sigma, n_);
  std::vector<Rational> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back(at(sigma[i], sigma[j]));
  return MetricVector(n_, std::move(out));
}

WeightVector::WeightVector(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidInput("weight vector needs at least one entry");
  for (auto& v : values_) v.canonicalize();
  Rational total = 0;
  for (const auto& v : values_) {
    if (v <= 0) throw InvalidInput("weight vector entries must be positive");
    total += v;
  }
  if (total != 1) throw InvalidInput("weight vector must sum to 1 (sum " + to_exact_string(total) + ")");
}

WeightVector WeightVector::permuted(std::span<const std::size_t> sigma) const {
  check_permutation(sigma, values_.size());
  std::vector<Rational> out;
  for (std::size_t v : sigma) out.push_back(values_[v]);
  return WeightVector(std::move(out));
}

WeightVector WeightVector::barycenter(std::size_t n) {
  return WeightVector(std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n))));
}

FiniteMetricSpace phi_gh(const MetricVector& r) {
  const std::size_t n = r.points();
  Matrix<Rational> d(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) d(i, j) = r.at(i, j);
  return FiniteMetricSpace(std::move(d));
}

FiniteMMSpace phi_b(const MetricVector& r, const WeightVector& s) {
  if (r.points() != s.points())
    throw InvalidInput("phi_b: r has " + std::to_string(r.points()) + " points, s has " +
                       std::to_string(s.points()));
  return FiniteMMSpace(phi_gh(r), s.values());
}

MetricVector metric_vector_of(const FiniteMetricSpace& X) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j) v.push_back(X.d(i, j));
  return MetricVector(X.size(), std::move(v));
}

WeightVector weight_vector_of(const FiniteMMSpace& X) { return WeightVector(X.mass()); }

FiniteMetricSpace relabel(const FiniteMetricSpace& X, std::span<const std::size_t> sigma) {
  check_permutation(sigma, X.size());
  const std::size_t n = X.size();
  Matrix<Rational> d(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(X.labels()[sigma[i]]);
    for (std::size_t j = 0; j < n; ++j) d(i, j) = X.d(sigma[i], sigma[j]);
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

FiniteMMSpace relabel(const FiniteMMSpace& X, std::span<const std::size_t> sigma) {
  std::vector<Rational> mass;
  for (std::size_t v : sigma) mass.push_back(X.mass().at(v));
  return FiniteMMSpace(relabel(X.space(), sigma), std::move(mass));
}

Rational sup_distance(const MetricVector& a, const MetricVector& b) {
  if (a.points() != b.points()) throw InvalidInput("sup_distance: point counts differ");
  Rational worst = 0;
  for (std::size_t p = 0; p < a.values().size(); ++p)
    worst = std::max(worst, abs_diff(a.values()[p], b.values()[p]));
  return worst;
}

Rational sup_distance(const WeightVector& a, const WeightVector& b) {
  if (a.points() != b.points()) throw InvalidInput("sup_distance: point counts differ");
  Rational worst = 0;
  for (std::size_t p = 0; p < a.values().size(); ++p)
    worst = std::max(worst, abs_diff(a.values()[p], b.values()[p]));
  return worst;
}

CanonicalForm canonical_form(const MetricVector& r, const CanonicalOptions& options) {
  return canonical_parallel(r, std::nullopt, options);
}

CanonicalForm canonical_form(const MetricVector& r, const WeightVector& s, const CanonicalOptions& options) {
  return canonical_parallel(r, s, options);
}

std::vector<MetricVector> orbit(const MetricVector& r, std::size_t max_points) {
  check_guard(r.points(), max_points, "orbit");
  Permutation sigma(r.points());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<MetricVector> out;
  do {
    out.push_back(r.permuted(sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational orbit_distance(const MetricVector& a, const MetricVector& b, std::size_t max_points) {
  if (a.points() != b.points()) throw InvalidInput("orbit_distance: point counts differ");
  check_guard(a.points(), max_points, "orbit_distance");
  Permutation sigma(a.points());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::optional<Rational> best;
  do {
    Rational d = sup_distance(a, b.permuted(sigma));
    if (!best || d < *best) best = d;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return *best;
}

Rational orbit_distance(const MetricVector& a, const WeightVector& as, const MetricVector& b,
                        const WeightVector& bs, std::size_t max_points) {
  if (a.points() != b.points() || as.points() != a.points() || bs.points() != b.points())
    throw InvalidInput("orbit_distance: point counts differ");
  check_guard(a.points(), max_points, "orbit_distance");
  Permutation sigma(a.points());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::optional<Rational> best;
  do {
    Rational d = std::max(sup_distance(a, b.permuted(sigma)), sup_distance(as, bs.permuted(sigma)));
    if (!best || d < *best) best = d;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return *best;
}

Permutation relation_to_injection(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const Relation& S) {
  S.check_bounds(X.size(), Y.size());
  std::vector<std::string> failed;
  const Rational dis = distortion(S, X, Y);
  if (!(dis < separation(X))) failed.push_back("dis S < sep X");
  if (!is_correspondence(S, X, Y)) failed.push_back("S is a correspondence");
  if (!failed.empty()) throw HypothesisViolation(describe_failures(failed));
  return injection_from(S, X.size(), Y.size());
}

Permutation relation_to_injection(const FiniteMMSpace& X, const FiniteMMSpace& Y, const Relation& S,
                                  const std::optional<Coupling>& pi) {
  S.check_bounds(X.size(), Y.size());
  std::vector<std::string> failed;
  const Rational dis = distortion(S, X.space(), Y.space());
  if (!(dis < separation(X.space()))) failed.push_back("dis S < sep X");
  const bool correspondence = is_correspondence(S, X.size(), Y.size());
  bool heavy = false;
  if (pi) {
    if (!is_coupling(*pi, X.mass(), Y.mass()))
      throw InvalidInput("relation_to_injection: pi is not a coupling of the two measures");
    heavy = mass_on(*pi, S) > 1 - X.min_atom();
  }
  if (!correspondence && !heavy) {
    failed.push_back(pi ? "S is a correspondence, or pi(S) > 1 - min atom of X"
                        : "S is a correspondence (no coupling given)");
  }
  if (!failed.empty()) throw HypothesisViolation(describe_failures(failed));
  return injection_from(S, X.size(), Y.size());
}

bool mass_closeness(std::span<const std::size_t> f, const Coupling& pi, const FiniteMMSpace& X,
                    const FiniteMMSpace& Y, const Rational& delta) {
  if (X.size() != Y.size()) throw InvalidInput("mass_closeness: |X| != |Y|");
  check_permutation(f, X.size());
  if (!is_coupling(pi, X.mass(), Y.mass())) throw InvalidInput("mass_closeness: pi is not a coupling");
  const Rational off_graph = 1 - mass_on(pi, Relation::graph(f));
  if (off_graph >= delta)
    throw NotApplicable("mass_closeness: 1 - pi(graph f) = " + to_exact_string(off_graph) +
                        " is not below delta = " + to_exact_string(delta));
  Rational worst = 0;
  for (std::size_t x = 0; x < X.size(); ++x) worst = std::max(worst, abs_diff(X.mass()[x], Y.mass()[f[x]]));
  return worst < delta;
}

FiniteMMSpace uniform_lift(const FiniteMetricSpace& X) {
  return FiniteMMSpace(X, std::vector<Rational>(X.size(), Rational(1, static_cast<unsigned long>(X.size()))));
}

namespace serial {

CanonicalForm canonical_form(const MetricVector& r, const std::optional<WeightVector>& s, std::size_t max_points) {
  const std::size_t n = r.points();
  check_guard(n, max_points, "canonical_form");
  if (s && s->points() != n) throw InvalidInput("canonical_form: r and s disagree on n");
  Permutation sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::optional<std::pair<std::vector<Rational>, Permutation>> best;
  do {
    std::vector<Rational> v = r.permuted(sigma).values();
    if (s) {
      auto w = s->permuted(sigma).values();
      v.insert(v.end(), w.begin(), w.end());
    }
    // next_permutation visits sigma in increasing order, so strict < keeps the least sigma.
    if (!best || v < best->first) best.emplace(std::move(v), sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return finish(r, s, std::move(best->second));
}

}  // namespace serial

}  // namespace mmspace
