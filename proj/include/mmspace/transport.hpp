#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "mmspace/space.hpp"

namespace mmspace {

struct MaxMassCoupling {
  Coupling coupling;
  /// pi(S) for the returned coupling, the largest value any coupling attains.
  Rational value;
};

/// Maximizes pi(S) over couplings of muX and muY.
///
/// Solved as a transportation flow: supplies muX, demands muY, flow allowed
/// on the cells of S only, augmenting shortest paths on exact rationals. The
/// leftover marginals are then placed northwest-corner; no leftover can land
/// on S, since that would be an augmenting path. Only pi(S) is meaningful.
///
/// Throws InvalidInput on mismatched masses or out-of-range cells.
MaxMassCoupling max_mass_coupling(std::span<const Rational> muX, std::span<const Rational> muY,
                                  const Relation& S);

/// Value-only variant used inside the box search. Cells are bit x * |Y| + y
/// of `cells`, so |X| * |Y| <= 64.
Rational max_mass_value(std::span<const Rational> muX, std::span<const Rational> muY,
                        std::uint64_t cells);

/// Nonnegative entries and row/column sums within `tolerance` of the
/// marginals (exact equality by default).
bool is_coupling(const Coupling& pi, std::span<const Rational> muX, std::span<const Rational> muY,
                 const Rational& tolerance = 0);

/// The product coupling muX (x) muY.
Coupling product_coupling(std::span<const Rational> muX, std::span<const Rational> muY);

/// Prokhorov distance inf{eps > 0 : mu(A) <= nu(A^eps) + eps for all A} on
/// the points of Z, with A^eps = {z : d(z, A) < eps} (open blow-up).
///
/// Only the one-sided condition is checked; symmetry is not assumed. Between
/// consecutive distances of Z the blow-ups are constant, so on each such
/// interval the feasible set is [max_A(mu(A) - nu(A^eps)), upper end]; the
/// first nonempty interval yields the infimum, which need not be attained.
///
/// Zero entries are allowed. Throws InvalidInput when a vector has a negative
/// entry, the wrong length, or does not sum to 1 (within kMassTolerance,
/// after which it is rescaled exactly), and GuardExceeded past max_points.
Rational prokhorov(std::span<const Rational> mu, std::span<const Rational> nu,
                   const FiniteMetricSpace& Z, std::size_t max_points = 16);

}  // namespace mmspace
