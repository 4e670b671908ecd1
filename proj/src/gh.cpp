#include "mmspace/gh.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "mmspace/distortion_lattice.hpp"
#include "mmspace/errors.hpp"

namespace mmspace {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

struct Candidate {
  std::uint32_t rank = kUnset;
  std::vector<Cell> pairs;

  bool better_than(const Candidate& other) const {
    if (rank != other.rank) return rank < other.rank;
    return pairs < other.pairs;
  }
};

void check_guard(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::size_t max_points) {
  if (X.size() > max_points || Y.size() > max_points) {
    throw GuardExceeded("gh: |X| = " + std::to_string(X.size()) + ", |Y| = " +
                            std::to_string(Y.size()) + " exceeds the per-side limit " +
                            std::to_string(max_points),
                        gh_search_space_size(X.size(), Y.size()));
  }
}

// Slots 0..n-1 fix f(x) for x = slot; slots n..n+m-1 fix g(y) for y = slot - n.
class CorrespondenceSearch {
 public:
  CorrespondenceSearch(const DistortionLattice& lattice, bool prune, std::atomic<std::uint32_t>& bound)
      : L_(lattice), n_(lattice.rows()), m_(lattice.cols()), prune_(prune), bound_(bound),
        slots_(n_ + m_) {}

  std::size_t choices(std::size_t slot) const { return slot < n_ ? m_ : n_; }

  Cell cell(std::size_t slot, std::size_t choice) const {
    return slot < n_ ? Cell{slot, choice} : Cell{choice, slot - n_};
  }

  // Places `choice` in `slot` and returns the running distortion rank.
  std::uint32_t place(std::size_t slot, std::size_t choice, std::uint32_t current) {
    const Cell c = cell(slot, choice);
    slots_[slot] = c;
    for (std::size_t l = 0; l < slot; ++l) {
      current = std::max(current, L_.rank(slots_[l].first, slots_[l].second, c.first, c.second));
    }
    return current;
  }

  void run(std::size_t slot, std::uint32_t current) {
    if (slot == n_ + m_) {
      record(current);
      return;
    }
    for (std::size_t choice = 0; choice < choices(slot); ++choice) {
      std::uint32_t next = place(slot, choice, current);
      if (prune_ && next > bound_.load(std::memory_order_relaxed)) continue;
      run(slot + 1, next);
    }
  }

  const Candidate& best() const { return best_; }

 private:
  void record(std::uint32_t rank) {
    if (rank > best_.rank) return;
    Candidate cand{rank, slots_};
    std::sort(cand.pairs.begin(), cand.pairs.end());
    cand.pairs.erase(std::unique(cand.pairs.begin(), cand.pairs.end()), cand.pairs.end());
    if (cand.better_than(best_)) best_ = std::move(cand);
    std::uint32_t seen = bound_.load(std::memory_order_relaxed);
    while (rank < seen && !bound_.compare_exchange_weak(seen, rank, std::memory_order_relaxed)) {
    }
  }

  const DistortionLattice& L_;
  std::size_t n_;
  std::size_t m_;
  bool prune_;
  std::atomic<std::uint32_t>& bound_;
  std::vector<Cell> slots_;
  Candidate best_;
};

}  // namespace

std::string gh_search_space_size(std::size_t n, std::size_t m) {
  mpz_class a, b;
  mpz_ui_pow_ui(a.get_mpz_t(), m, n);
  mpz_ui_pow_ui(b.get_mpz_t(), n, m);
  return mpz_class(a * b).get_str();
}

GhResult gh_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const GhOptions& options) {
  check_guard(X, Y, options.max_points);
  const DistortionLattice lattice(X, Y);
  const std::size_t n = X.size();
  const std::size_t slots = n + Y.size();

  // Split the tree on its first two slots; each prefix is an independent task.
  const std::size_t depth = std::min<std::size_t>(2, slots);
  std::vector<std::size_t> radix(depth);
  std::size_t tasks = 1;
  for (std::size_t s = 0; s < depth; ++s) {
    radix[s] = s < n ? Y.size() : n;
    tasks *= radix[s];
  }

  std::atomic<std::uint32_t> bound{kUnset};
  Candidate best;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

#pragma omp parallel num_threads(threads)
  {
    CorrespondenceSearch search(lattice, options.prune, bound);
#pragma omp for schedule(dynamic)
    for (std::size_t task = 0; task < tasks; ++task) {
      std::size_t code = task;
      std::uint32_t current = 0;
      bool viable = true;
      for (std::size_t s = 0; s < depth; ++s) {
        current = search.place(s, code % radix[s], current);
        code /= radix[s];
        if (options.prune && current > bound.load(std::memory_order_relaxed)) viable = false;
      }
      if (viable) search.run(depth, current);
    }
#pragma omp critical(mmspace_gh_reduce)
    {
      if (search.best().better_than(best)) best = search.best();
    }
  }

  return {lattice.levels()[best.rank] / 2, Relation(best.pairs)};
}

Rational gh_upper_from_relation(const Relation& R, const FiniteMetricSpace& X,
                                const FiniteMetricSpace& Y) {
  R.check_bounds(X.size(), Y.size());
  if (!is_correspondence(R, X, Y)) throw InvalidInput("gh upper bound: relation is not a correspondence");
  return distortion(R, X, Y) / 2;
}

namespace serial {

GhResult gh_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::size_t max_points) {
  check_guard(X, Y, max_points);
  const std::size_t n = X.size();
  const std::size_t m = Y.size();
  // Odometer over f (digits 0..n-1, base m) followed by g (digits n.., base n).
  std::vector<std::size_t> digit(n + m, 0);
  auto base = [&](std::size_t k) { return k < n ? m : n; };

  std::optional<GhResult> best;
  while (true) {
    std::vector<Cell> pairs;
    for (std::size_t k = 0; k < n + m; ++k)
      pairs.push_back(k < n ? Cell{k, digit[k]} : Cell{digit[k], k - n});
    Relation R(std::move(pairs));
    Rational value = distortion(R, X, Y) / 2;
    if (!best || value < best->distance || (value == best->distance && R < best->witness)) {
      best = GhResult{value, std::move(R)};
    }

    std::size_t k = 0;
    while (k < n + m && ++digit[k] == base(k)) digit[k++] = 0;
    if (k == n + m) break;
  }
  return *best;
}

}  // namespace serial

}  // namespace mmspace
