#pragma once

#include <cstddef>
#include <string>

#include "mmspace/io.hpp"
#include "mmspace/space.hpp"

namespace mmspace {

struct BoxOptions {
  /// Largest accepted |X| * |Y| (hard ceiling 64).
  std::size_t max_cells = 36;
  /// OpenMP team size; 0 leaves it to the runtime.
  int threads = 0;
};

struct BoxResult {
  /// min over couplings pi and relations S of max{1 - pi(S), dis S}.
  Rational value;
  Coupling coupling;
  Relation relation;
  /// The distortion level at which the witness was found; dis S <= epsilon.
  Rational epsilon;
};

/// Exact box distance between finite mm-spaces.
///
/// For a level eps in D = {0} u {|d_X(x,x') - d_Y(y,y')|}, the relations with
/// dis S <= eps are exactly the cliques of the graph on X x Y joining two
/// cells whose two-element relation has distortion <= eps. pi(S) only grows
/// with S, so the best coupling mass at eps is attained on a maximal clique;
/// the objective at eps is max{eps, 1 - best mass}. Some minimizer has
/// dis S in D, so the minimum over D is the box distance.
///
/// Witness: the smallest eps attaining the minimum, then the
/// lexicographically smallest maximal clique there. Deterministic at any
/// thread count. Throws GuardExceeded past options.max_cells.
BoxResult box_exact(const FiniteMMSpace& X, const FiniteMMSpace& Y, const BoxOptions& options = {});

/// 1 - min{largest atom of X, largest atom of Y}; never below box_exact.
Rational box_atom_bound(const FiniteMMSpace& X, const FiniteMMSpace& Y);

/// Closed form for two uniform two-point spaces with gaps s and t
/// (gap 0 meaning the one-point space): min{|t - s|, 1/2}.
/// Throws InvalidInput for negative gaps.
Rational two_point_box_oracle(const Rational& s, const Rational& t);

/// The space with two points at distance s and uniform mass; s = 0 gives
/// the one-point space.
FiniteMMSpace two_point_space(const Rational& s);

/// Checks: box(X, Y) < min{sep X, min atom of X} implies |Y| >= |X|.
/// Always expected to hold.
bool cardinality_floor_check(const FiniteMMSpace& X, const FiniteMMSpace& Y,
                             const BoxOptions& options = {});

struct CertificateCheck {
  bool coupling_valid = false;
  /// max{1 - pi(S), dis S} recomputed from the spaces.
  Rational recomputed;
  /// coupling_valid and recomputed <= claimed_value.
  bool holds = false;
};

/// Verifies a (pi, S) certificate against two spaces. Throws InvalidInput
/// when the certificate's shape does not match the spaces.
CertificateCheck check_certificate(const Certificate& cert, const FiniteMMSpace& X,
                                   const FiniteMMSpace& Y);

std::string box_search_space_size(std::size_t n, std::size_t m);

namespace serial {

/// Reference: the same clique formulation evaluated level by level on one
/// thread, with no early exit.
BoxResult box_exact(const FiniteMMSpace& X, const FiniteMMSpace& Y, std::size_t max_cells = 36);

}  // namespace serial

}  // namespace mmspace
