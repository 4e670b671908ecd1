#pragma once

#include <cstddef>
#include <string>

#include "mmspace/space.hpp"

namespace mmspace {

struct GhOptions {
  /// Largest accepted |X| and |Y|.
  std::size_t max_points = 7;
  /// Skip partial assignments whose distortion already exceeds the best
  /// complete one. Never changes the result, only the work done.
  bool prune = true;
  /// OpenMP team size; 0 leaves it to the runtime.
  int threads = 0;
};

struct GhResult {
  Rational distance;
  /// A correspondence attaining 2 * distance.
  Relation witness;
};

/// Exact Gromov-Hausdorff distance: half the least distortion over all
/// correspondences.
///
/// Only relations graph(f) U graph(g)^T with f: X -> Y, g: Y -> X are
/// searched. That is exhaustive: every correspondence R admits such f and g
/// with graph(f) U graph(g)^T contained in R (pick f(x) from the row of x,
/// g(y) from the column of y), and distortion is monotone under inclusion,
/// so the minimum over this family is the minimum over all correspondences.
///
/// Among minimizers the lexicographically smallest sorted pair list is
/// returned, independent of thread count and pruning.
///
/// Throws GuardExceeded when |X| or |Y| exceeds options.max_points.
GhResult gh_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                  const GhOptions& options = {});

/// 1/2 dis R for a correspondence R, an upper bound on gh_exact.
/// Throws InvalidInput when R is not a correspondence.
Rational gh_upper_from_relation(const Relation& R, const FiniteMetricSpace& X,
                                const FiniteMetricSpace& Y);

/// |Y|^|X| * |X|^|Y|, the number of (f, g) pairs, in decimal.
std::string gh_search_space_size(std::size_t n, std::size_t m);

namespace serial {

/// Reference implementation: plain enumeration of every (f, g) pair with the
/// distortion evaluated by mm-core on rationals. Same tie-break as gh_exact.
GhResult gh_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                  std::size_t max_points = 7);

}  // namespace serial

}  // namespace mmspace
