#include "mmspace/space.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mmspace/errors.hpp"

namespace mmspace {

namespace {

std::string join_indices(const std::vector<std::size_t>& idx) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k];
  os << ")";
  return os.str();
}

std::string violation_list(const std::vector<Violation>& v) {
  std::string out;
  for (const auto& x : v) out += "\n  " + x.describe();
  return out;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

std::string Violation::describe() const {
  const std::string at = join_indices(indices);
  switch (kind) {
    case Kind::Empty: return "space has no points";
    case Kind::Shape: return "dist is not a square matrix matching the label count";
    case Kind::DuplicateLabel: return "duplicate label at " + at;
    case Kind::NonzeroDiagonal: return "nonzero diagonal at " + at;
    case Kind::Asymmetry: return "asymmetry at " + at;
    case Kind::NonPositiveDistance: return "non-positive distance between distinct points at " + at;
    case Kind::Triangle: return "triangle inequality violated at " + at + " (d[i][k] > d[i][j] + d[j][k])";
    case Kind::MassShape: return "mass vector length differs from the point count";
    case Kind::NonPositiveMass: return "non-positive mass at " + at;
    case Kind::MassSum: return "masses do not sum to 1";
  }
  return "unknown violation";
}

std::vector<Violation> validate(const SpaceData& data) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const std::size_t n = data.labels.size();
  if (n == 0) {
    out.push_back({K::Empty, {}});
    return out;
  }
  if (data.dist.rows() != n || data.dist.cols() != n) {
    out.push_back({K::Shape, {}});
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (data.labels[i] == data.labels[j]) out.push_back({K::DuplicateLabel, {i, j}});
    }
  }
  const auto& d = data.dist;
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0) out.push_back({K::NonzeroDiagonal, {i, i}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) != d(j, i)) out.push_back({K::Asymmetry, {i, j}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && d(i, j) <= 0) out.push_back({K::NonPositiveDistance, {i, j}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i >= k) continue;
        if (d(i, k) > d(i, j) + d(j, k) || d(k, i) > d(k, j) + d(j, i)) out.push_back({K::Triangle, {i, j, k}});
      }
    }
  }
  if (data.mass) {
    const auto& mass = *data.mass;
    if (mass.size() != n) {
      out.push_back({K::MassShape, {}});
    } else {
      Rational total = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mass[i] <= 0) out.push_back({K::NonPositiveMass, {i}});
        total += mass[i];
      }
      if (abs_diff(total, 1) > kMassTolerance) out.push_back({K::MassSum, {}});
    }
  }
  return out;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, Matrix<Rational> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  for (std::size_t i = 0; i < dist_.rows(); ++i)
    for (std::size_t j = 0; j < dist_.cols(); ++j) dist_(i, j).canonicalize();
  auto v = validate(SpaceData{labels_, dist_, std::nullopt});
  if (!v.empty()) throw InvalidInput("invalid metric space:" + violation_list(v));
}

FiniteMetricSpace::FiniteMetricSpace(Matrix<Rational> dist)
    : FiniteMetricSpace(default_labels(dist.rows()), std::move(dist)) {}

FiniteMMSpace::FiniteMMSpace(FiniteMetricSpace space, std::vector<Rational> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  for (auto& m : mass_) m.canonicalize();
  auto v = validate(SpaceData{space_.labels(), space_.dist(), mass_});
  if (!v.empty()) throw InvalidInput("invalid metric measure space:" + violation_list(v));
  Rational total = 0;
  for (const auto& m : mass_) total += m;
  if (total != 1) {
    for (auto& m : mass_) m /= total;
  }
}

Rational FiniteMMSpace::max_atom() const { return *std::max_element(mass_.begin(), mass_.end()); }
Rational FiniteMMSpace::min_atom() const { return *std::min_element(mass_.begin(), mass_.end()); }

FiniteMetricSpace to_metric_space(const SpaceData& data) {
  return FiniteMetricSpace(data.labels, data.dist);
}

FiniteMMSpace to_mm_space(const SpaceData& data) {
  if (!data.mass) throw InvalidInput("space has no mass vector; a metric measure space is required");
  return FiniteMMSpace(to_metric_space(data), *data.mass);
}

SpaceData to_space_data(const FiniteMetricSpace& X) { return {X.labels(), X.dist(), std::nullopt}; }

SpaceData to_space_data(const FiniteMMSpace& X) {
  return {X.space().labels(), X.space().dist(), X.mass()};
}

Relation::Relation(std::vector<Cell> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

Relation Relation::full(std::size_t n, std::size_t m) {
  std::vector<Cell> p;
  p.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) p.emplace_back(i, j);
  return Relation(std::move(p));
}

Relation Relation::identity(std::size_t n) {
  std::vector<Cell> p;
  for (std::size_t i = 0; i < n; ++i) p.emplace_back(i, i);
  return Relation(std::move(p));
}

Relation Relation::graph(std::span<const std::size_t> f) {
  std::vector<Cell> p;
  for (std::size_t i = 0; i < f.size(); ++i) p.emplace_back(i, f[i]);
  return Relation(std::move(p));
}

void Relation::insert(Cell c) {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), c);
  if (it == pairs_.end() || *it != c) pairs_.insert(it, c);
}

bool Relation::contains(Cell c) const { return std::binary_search(pairs_.begin(), pairs_.end(), c); }

Relation Relation::transpose() const {
  std::vector<Cell> p;
  p.reserve(pairs_.size());
  for (auto [i, j] : pairs_) p.emplace_back(j, i);
  return Relation(std::move(p));
}

Relation Relation::complement(std::size_t n, std::size_t m) const {
  std::vector<Cell> p;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!contains({i, j})) p.emplace_back(i, j);
  return Relation(std::move(p));
}

bool Relation::is_subset_of(const Relation& other) const {
  return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
}

void Relation::check_bounds(std::size_t n, std::size_t m) const {
  for (auto [i, j] : pairs_) {
    if (i >= n || j >= m) {
      throw InvalidInput("relation pair (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of range for spaces of size " + std::to_string(n) + " and " +
                         std::to_string(m));
    }
  }
}

ExtendedRational separation(const FiniteMetricSpace& X) {
  ExtendedRational best;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j)
      if (X.d(i, j) < best) best = ExtendedRational(X.d(i, j));
  return best;
}

Rational diameter(const FiniteMetricSpace& X) {
  Rational best = 0;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j)
      if (X.d(i, j) > best) best = X.d(i, j);
  return best;
}

Rational distortion(const Relation& R, const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  R.check_bounds(X.size(), Y.size());
  Rational worst = 0;
  const auto& p = R.pairs();
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      Rational gap = abs_diff(X.d(p[a].first, p[b].first), Y.d(p[a].second, p[b].second));
      if (gap > worst) worst = gap;
    }
  }
  return worst;
}

bool is_correspondence(const Relation& R, std::size_t n, std::size_t m) {
  std::vector<bool> seen_x(n, false), seen_y(m, false);
  for (auto [i, j] : R) {
    if (i < n) seen_x[i] = true;
    if (j < m) seen_y[j] = true;
  }
  return std::all_of(seen_x.begin(), seen_x.end(), [](bool b) { return b; }) &&
         std::all_of(seen_y.begin(), seen_y.end(), [](bool b) { return b; });
}

Rational mass_on(const Coupling& pi, const Relation& S) {
  S.check_bounds(pi.rows(), pi.cols());
  Rational total = 0;
  for (auto [i, j] : S) total += pi(i, j);
  return total;
}

}  // namespace mmspace
