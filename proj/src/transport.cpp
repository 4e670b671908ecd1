#include "mmspace/transport.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "mmspace/errors.hpp"

namespace mmspace {

namespace {

// Bipartite transportation max-flow. Nodes: X rows and Y columns; source
// edges carry supply_left, sink edges demand_left, allowed cells are
// uncapacitated, and flow(x, y) > 0 admits a backward step from y to x.
class TransportFlow {
 public:
  TransportFlow(std::span<const Rational> muX, std::span<const Rational> muY,
                std::function<bool(std::size_t, std::size_t)> allowed)
      : n_(muX.size()), m_(muY.size()), allowed_(std::move(allowed)),
        supply_(muX.begin(), muX.end()), demand_(muY.begin(), muY.end()), flow_(n_, m_) {}

  void solve() {
    while (augment()) {
    }
  }

  Rational value() const {
    Rational total = 0;
    for (const auto& f : flow_.data()) total += f;
    return total;
  }

  // Completes the sub-coupling with the leftover marginals, northwest-corner.
  Coupling completed() const {
    Coupling pi = flow_;
    auto r = supply_;
    auto c = demand_;
    std::size_t i = 0, j = 0;
    while (i < n_ && j < m_) {
      Rational t = std::min(r[i], c[j]);
      pi(i, j) += t;
      r[i] -= t;
      c[j] -= t;
      if (r[i] == 0) ++i;
      if (c[j] == 0 && j < m_) ++j;
    }
    return pi;
  }

 private:
  bool augment() {
    // parent of a column: the row it was reached from; parent of a row: the
    // column it was reached from backwards (npos marks a source row).
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> row_parent(n_, npos), col_parent(m_, npos);
    std::vector<bool> row_seen(n_, false), col_seen(m_, false);
    std::deque<std::size_t> rows;
    for (std::size_t x = 0; x < n_; ++x) {
      if (supply_[x] > 0) {
        row_seen[x] = true;
        rows.push_back(x);
      }
    }
    std::optional<std::size_t> sink_col;
    while (!rows.empty() && !sink_col) {
      std::size_t x = rows.front();
      rows.pop_front();
      for (std::size_t y = 0; y < m_ && !sink_col; ++y) {
        if (col_seen[y] || !allowed_(x, y)) continue;
        col_seen[y] = true;
        col_parent[y] = x;
        if (demand_[y] > 0) {
          sink_col = y;
          break;
        }
        for (std::size_t x2 = 0; x2 < n_; ++x2) {
          if (!row_seen[x2] && flow_(x2, y) > 0) {
            row_seen[x2] = true;
            row_parent[x2] = y;
            rows.push_back(x2);
          }
        }
      }
    }
    if (!sink_col) return false;

    Rational bottleneck = demand_[*sink_col];
    std::size_t y = *sink_col;
    std::size_t x = col_parent[y];
    while (true) {
      if (row_parent[x] == npos) {
        bottleneck = std::min(bottleneck, supply_[x]);
        break;
      }
      std::size_t y_back = row_parent[x];
      bottleneck = std::min(bottleneck, flow_(x, y_back));
      x = col_parent[y_back];
    }

    y = *sink_col;
    demand_[y] -= bottleneck;
    x = col_parent[y];
    flow_(x, y) += bottleneck;
    while (row_parent[x] != npos) {
      std::size_t y_back = row_parent[x];
      flow_(x, y_back) -= bottleneck;
      x = col_parent[y_back];
      flow_(x, y_back) += bottleneck;
    }
    supply_[x] -= bottleneck;
    return true;
  }

  std::size_t n_;
  std::size_t m_;
  std::function<bool(std::size_t, std::size_t)> allowed_;
  std::vector<Rational> supply_;
  std::vector<Rational> demand_;
  Coupling flow_;
};

void check_masses(std::span<const Rational> mu, const char* what) {
  for (const auto& v : mu)
    if (v < 0) throw InvalidInput(std::string(what) + " has a negative entry");
}

std::vector<Rational> normalized(std::span<const Rational> mu, std::size_t n, const char* what) {
  if (mu.size() != n)
    throw InvalidInput(std::string(what) + " has " + std::to_string(mu.size()) +
                       " entries; the space has " + std::to_string(n) + " points");
  check_masses(mu, what);
  Rational total = 0;
  for (const auto& v : mu) total += v;
  if (abs_diff(total, 1) > kMassTolerance)
    throw InvalidInput(std::string(what) + " does not sum to 1 (sum " + to_exact_string(total) + ")");
  std::vector<Rational> out(mu.begin(), mu.end());
  if (total != 1)
    for (auto& v : out) v /= total;
  return out;
}

}  // namespace

MaxMassCoupling max_mass_coupling(std::span<const Rational> muX, std::span<const Rational> muY,
                                  const Relation& S) {
  check_masses(muX, "muX");
  check_masses(muY, "muY");
  S.check_bounds(muX.size(), muY.size());
  Rational tx = 0, ty = 0;
  for (const auto& v : muX) tx += v;
  for (const auto& v : muY) ty += v;
  if (tx != ty) throw InvalidInput("max_mass_coupling: marginals have different total mass");

  TransportFlow flow(muX, muY, [&S](std::size_t x, std::size_t y) { return S.contains({x, y}); });
  flow.solve();
  return {flow.completed(), flow.value()};
}

Rational max_mass_value(std::span<const Rational> muX, std::span<const Rational> muY,
                        std::uint64_t cells) {
  const std::size_t m = muY.size();
  TransportFlow flow(muX, muY, [cells, m](std::size_t x, std::size_t y) {
    return (cells >> (x * m + y)) & 1U;
  });
  flow.solve();
  return flow.value();
}

bool is_coupling(const Coupling& pi, std::span<const Rational> muX, std::span<const Rational> muY,
                 const Rational& tolerance) {
  if (pi.rows() != muX.size() || pi.cols() != muY.size()) return false;
  for (const auto& v : pi.data())
    if (v < 0) return false;
  for (std::size_t i = 0; i < pi.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < pi.cols(); ++j) s += pi(i, j);
    if (abs_diff(s, muX[i]) > tolerance) return false;
  }
  for (std::size_t j = 0; j < pi.cols(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < pi.rows(); ++i) s += pi(i, j);
    if (abs_diff(s, muY[j]) > tolerance) return false;
  }
  return true;
}

Coupling product_coupling(std::span<const Rational> muX, std::span<const Rational> muY) {
  Coupling pi(muX.size(), muY.size());
  for (std::size_t i = 0; i < muX.size(); ++i)
    for (std::size_t j = 0; j < muY.size(); ++j) pi(i, j) = muX[i] * muY[j];
  return pi;
}

Rational prokhorov(std::span<const Rational> mu_in, std::span<const Rational> nu_in,
                   const FiniteMetricSpace& Z, std::size_t max_points) {
  const std::size_t n = Z.size();
  if (n > max_points) {
    mpz_class subsets;
    mpz_ui_pow_ui(subsets.get_mpz_t(), 2, n);
    throw GuardExceeded("prokhorov: |Z| = " + std::to_string(n) + " exceeds the limit " +
                            std::to_string(max_points),
                        subsets.get_str());
  }
  const auto mu = normalized(mu_in, n, "mu");
  const auto nu = normalized(nu_in, n, "nu");

  // d_0 = 0 < d_1 < ... < d_K: the distinct distances of Z.
  std::vector<Rational> levels{0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) levels.push_back(Z.d(i, j));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Rational> mu_of(subsets), nu_of(subsets);
  for (std::size_t A = 1; A < subsets; ++A) {
    std::size_t low = static_cast<std::size_t>(__builtin_ctzll(A));
    mu_of[A] = mu_of[A & (A - 1)] + mu[low];
    nu_of[A] = nu_of[A & (A - 1)] + nu[low];
  }

  // excess[k] = max_A mu(A) - nu(A^eps) for eps in (d_k, d_{k+1}], where the
  // blow-up is {z : d(z, A) <= d_k}.
  std::vector<Rational> excess(levels.size(), Rational(0));
  std::vector<Rational> to_set(n);
  for (std::size_t A = 1; A < subsets; ++A) {
    for (std::size_t z = 0; z < n; ++z) {
      std::optional<Rational> best;
      for (std::size_t a = 0; a < n; ++a)
        if (((A >> a) & 1U) && (!best || Z.d(z, a) < *best)) best = Z.d(z, a);
      to_set[z] = *best;
    }
    for (std::size_t k = 0; k < levels.size(); ++k) {
      std::size_t blow = 0;
      for (std::size_t z = 0; z < n; ++z)
        if (to_set[z] <= levels[k]) blow |= std::size_t{1} << z;
      Rational gap = mu_of[A] - nu_of[blow];
      if (gap > excess[k]) excess[k] = gap;
    }
  }

  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (excess[k] <= levels[k]) return levels[k];
    if (k + 1 == levels.size() || excess[k] <= levels[k + 1]) return excess[k];
  }
  return 1;  // unreachable: the last interval is unbounded above
}

}  // namespace mmspace
