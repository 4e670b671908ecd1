#include "mmspace/box.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "mmspace/clique.hpp"
#include "mmspace/distortion_lattice.hpp"
#include "mmspace/errors.hpp"
#include "mmspace/transport.hpp"

namespace mmspace {

namespace {

constexpr std::size_t kMaxCellsCeiling = 64;

std::vector<std::size_t> cells_of(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (; mask; mask &= mask - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
  return out;
}

class BoxProblem {
 public:
  BoxProblem(const FiniteMMSpace& X, const FiniteMMSpace& Y)
      : X_(X), Y_(Y), lattice_(X.space(), Y.space()), n_(X.size()), m_(Y.size()) {}

  const std::vector<Rational>& levels() const { return lattice_.levels(); }

  std::vector<std::uint64_t> adjacency(std::size_t level) const {
    const std::size_t cells = n_ * m_;
    std::vector<std::uint64_t> adj(cells, 0);
    for (std::size_t a = 0; a < cells; ++a) {
      for (std::size_t b = 0; b < cells; ++b) {
        if (a == b) continue;
        if (lattice_.rank(a / m_, a % m_, b / m_, b % m_) <= level) adj[a] |= std::uint64_t{1} << b;
      }
    }
    return adj;
  }

  Rational clique_mass(std::uint64_t clique) const {
    return max_mass_value(X_.mass(), Y_.mass(), clique);
  }

  Rational best_mass(std::size_t level) const {
    auto adj = adjacency(level);
    Rational best = 0;
    for_each_maximal_clique(std::span<const std::uint64_t>(adj), [&](std::uint64_t clique) {
      Rational v = clique_mass(clique);
      if (v > best) best = v;
    });
    return best;
  }

  Rational objective(std::size_t level) const {
    Rational uncovered = 1 - best_mass(level);
    return std::max(levels()[level], uncovered);
  }

  BoxResult witness(std::size_t level, const Rational& value) const {
    auto adj = adjacency(level);
    std::optional<std::vector<std::size_t>> chosen;
    for_each_maximal_clique(std::span<const std::uint64_t>(adj), [&](std::uint64_t clique) {
      if (1 - clique_mass(clique) > value) return;
      auto cells = cells_of(clique);
      if (!chosen || cells < *chosen) chosen = std::move(cells);
    });
    std::vector<Cell> pairs;
    for (std::size_t c : *chosen) pairs.emplace_back(c / m_, c % m_);
    Relation S(std::move(pairs));
    auto mm = max_mass_coupling(X_.mass(), Y_.mass(), S);
    return {value, std::move(mm.coupling), std::move(S), levels()[level]};
  }

 private:
  const FiniteMMSpace& X_;
  const FiniteMMSpace& Y_;
  DistortionLattice lattice_;
  std::size_t n_;
  std::size_t m_;
};

void check_guard(const FiniteMMSpace& X, const FiniteMMSpace& Y, std::size_t max_cells) {
  const std::size_t cells = X.size() * Y.size();
  if (cells > std::min(max_cells, kMaxCellsCeiling)) {
    throw GuardExceeded("box: |X| * |Y| = " + std::to_string(cells) + " exceeds the cell limit " +
                            std::to_string(std::min(max_cells, kMaxCellsCeiling)),
                        box_search_space_size(X.size(), Y.size()));
  }
}

// Smallest level whose objective equals the minimum; unevaluated levels are
// skipped (they are provably not minimal).
BoxResult select(const BoxProblem& problem, const std::vector<std::optional<Rational>>& objective) {
  std::optional<Rational> best;
  std::size_t best_level = 0;
  for (std::size_t e = 0; e < objective.size(); ++e) {
    if (objective[e] && (!best || *objective[e] < *best)) {
      best = objective[e];
      best_level = e;
    }
  }
  return problem.witness(best_level, *best);
}

}  // namespace

std::string box_search_space_size(std::size_t n, std::size_t m) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, n * m);
  return r.get_str();
}

BoxResult box_exact(const FiniteMMSpace& X, const FiniteMMSpace& Y, const BoxOptions& options) {
  check_guard(X, Y, options.max_cells);
  const BoxProblem problem(X, Y);
  const auto& levels = problem.levels();
  const std::size_t count = levels.size();
  std::vector<std::optional<Rational>> objective(count);
  std::optional<Rational> best;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

  // A level at or above the best objective seen cannot improve it, and
  // cannot be the smallest minimizing level either (levels increase).
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t e = 0; e < count; ++e) {
    bool skip = false;
#pragma omp critical(mmspace_box_best)
    skip = best && levels[e] >= *best;
    if (skip) continue;
    Rational o = problem.objective(e);
#pragma omp critical(mmspace_box_best)
    {
      objective[e] = o;
      if (!best || o < *best) best = o;
    }
  }
  return select(problem, objective);
}

Rational box_atom_bound(const FiniteMMSpace& X, const FiniteMMSpace& Y) {
  const Rational largest = std::min(X.max_atom(), Y.max_atom());
  return 1 - largest;
}

Rational two_point_box_oracle(const Rational& s, const Rational& t) {
  if (s < 0 || t < 0) throw InvalidInput("two-point oracle: gaps must be nonnegative");
  return std::min(abs_diff(s, t), Rational(1, 2));
}

FiniteMMSpace two_point_space(const Rational& s) {
  if (s < 0) throw InvalidInput("two-point space: gap must be nonnegative");
  if (s == 0) return FiniteMMSpace(FiniteMetricSpace(Matrix<Rational>(1, 1, 0)), {Rational(1)});
  Matrix<Rational> d(2, 2, 0);
  d(0, 1) = d(1, 0) = s;
  return FiniteMMSpace(FiniteMetricSpace(std::move(d)), {Rational(1, 2), Rational(1, 2)});
}

bool cardinality_floor_check(const FiniteMMSpace& X, const FiniteMMSpace& Y, const BoxOptions& options) {
  const Rational box = box_exact(X, Y, options).value;
  const ExtendedRational sep = separation(X.space());
  const bool below = box < sep && box < X.min_atom();
  return !below || Y.size() >= X.size();
}

CertificateCheck check_certificate(const Certificate& cert, const FiniteMMSpace& X,
                                   const FiniteMMSpace& Y) {
  if (cert.pi.rows() != X.size() || cert.pi.cols() != Y.size())
    throw InvalidInput("certificate shape " + std::to_string(cert.pi.rows()) + "x" +
                       std::to_string(cert.pi.cols()) + " does not match spaces of size " +
                       std::to_string(X.size()) + " and " + std::to_string(Y.size()));
  cert.S.check_bounds(X.size(), Y.size());
  CertificateCheck check;
  check.coupling_valid = is_coupling(cert.pi, X.mass(), Y.mass());
  check.recomputed = std::max(Rational(1 - mass_on(cert.pi, cert.S)), distortion(cert.S, X.space(), Y.space()));
  check.holds = check.coupling_valid && check.recomputed <= cert.claimed_value;
  return check;
}

namespace serial {

BoxResult box_exact(const FiniteMMSpace& X, const FiniteMMSpace& Y, std::size_t max_cells) {
  check_guard(X, Y, max_cells);
  const BoxProblem problem(X, Y);
  std::vector<std::optional<Rational>> objective(problem.levels().size());
  for (std::size_t e = 0; e < objective.size(); ++e) objective[e] = problem.objective(e);
  return select(problem, objective);
}

}  // namespace serial

}  // namespace mmspace
