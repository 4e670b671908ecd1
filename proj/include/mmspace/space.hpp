#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmspace/rational.hpp"

namespace mmspace {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// One failed invariant. `indices` names the points (or entries) involved.
struct Violation {
  enum class Kind {
    Empty,
    Shape,
    DuplicateLabel,
    NonzeroDiagonal,
    Asymmetry,
    NonPositiveDistance,
    Triangle,
    MassShape,
    NonPositiveMass,
    MassSum,
  };

  Kind kind;
  std::vector<std::size_t> indices;

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Unvalidated contents of a space file.
struct SpaceData {
  std::vector<std::string> labels;
  Matrix<Rational> dist;
  std::optional<std::vector<Rational>> mass;
};

/// Mass totals within this distance of 1 are accepted at ingestion and
/// renormalized exactly; anything further off is a MassSum violation.
inline const Rational kMassTolerance{1, 1000000000};

/// Every violated invariant, in a fixed order (empty means valid).
/// Violations are data: this never throws.
std::vector<Violation> validate(const SpaceData& data);

class FiniteMetricSpace {
 public:
  /// Throws InvalidInput listing the violations when the data is not a metric.
  FiniteMetricSpace(std::vector<std::string> labels, Matrix<Rational> dist);

  /// Labels default to "0", "1", ...
  explicit FiniteMetricSpace(Matrix<Rational> dist);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Matrix<Rational>& dist() const noexcept { return dist_; }
  const Rational& d(std::size_t i, std::size_t j) const { return dist_(i, j); }

  friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;

 private:
  std::vector<std::string> labels_;
  Matrix<Rational> dist_;
};

/// A finite metric space carrying a fully supported probability measure.
class FiniteMMSpace {
 public:
  /// Masses must be positive; a total within kMassTolerance of 1 is rescaled
  /// to exactly 1. Throws InvalidInput otherwise.
  FiniteMMSpace(FiniteMetricSpace space, std::vector<Rational> mass);

  std::size_t size() const noexcept { return space_.size(); }
  const FiniteMetricSpace& space() const noexcept { return space_; }
  const std::vector<Rational>& mass() const noexcept { return mass_; }
  const Rational& d(std::size_t i, std::size_t j) const { return space_.d(i, j); }

  Rational max_atom() const;
  Rational min_atom() const;

  friend bool operator==(const FiniteMMSpace&, const FiniteMMSpace&) = default;

 private:
  FiniteMetricSpace space_;
  std::vector<Rational> mass_;
};

/// Builds a metric space (and measure, when the file has one) from parsed
/// data; throws InvalidInput with the violation list.
FiniteMetricSpace to_metric_space(const SpaceData& data);
FiniteMMSpace to_mm_space(const SpaceData& data);
SpaceData to_space_data(const FiniteMetricSpace& X);
SpaceData to_space_data(const FiniteMMSpace& X);

using Cell = std::pair<std::size_t, std::size_t>;

/// A set of cross-space index pairs, kept sorted and duplicate-free so that
/// lexicographic comparison is comparison of sorted pair lists.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::vector<Cell> pairs);

  static Relation full(std::size_t n, std::size_t m);
  static Relation identity(std::size_t n);
  static Relation graph(std::span<const std::size_t> f);

  void insert(Cell c);
  bool contains(Cell c) const;
  bool empty() const noexcept { return pairs_.empty(); }
  std::size_t size() const noexcept { return pairs_.size(); }
  const std::vector<Cell>& pairs() const noexcept { return pairs_; }

  Relation transpose() const;
  /// Complement inside the n x m product.
  Relation complement(std::size_t n, std::size_t m) const;
  bool is_subset_of(const Relation& other) const;

  /// Throws InvalidInput when a pair falls outside n x m.
  void check_bounds(std::size_t n, std::size_t m) const;

  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation&, const Relation&) = default;

 private:
  std::vector<Cell> pairs_;
};

/// A nonnegative |X| x |Y| matrix of joint mass. Whether it is a coupling of
/// two given measures is a property checked by is_coupling (transport.hpp).
using Coupling = Matrix<Rational>;

/// min over distinct pairs; +infinity for a single point.
ExtendedRational separation(const FiniteMetricSpace& X);
Rational diameter(const FiniteMetricSpace& X);

/// max over (x1,y1),(x2,y2) in R of |d_X(x1,x2) - d_Y(y1,y2)|; 0 for R empty.
/// Throws InvalidInput on an out-of-range index.
Rational distortion(const Relation& R, const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

bool is_correspondence(const Relation& R, std::size_t n, std::size_t m);
inline bool is_correspondence(const Relation& R, const FiniteMetricSpace& X,
                              const FiniteMetricSpace& Y) {
  return is_correspondence(R, X.size(), Y.size());
}

/// Total mass of pi over the cells of S.
Rational mass_on(const Coupling& pi, const Relation& S);

}  // namespace mmspace
