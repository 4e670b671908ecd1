#pragma once

// Finite discretizations of planar comb spaces with the l1 metric.
//
// For a coordinate sequence t in [0,1]^depth, tooth i (1-based) is the
// vertical segment {2^(2-i)} x [0, 2^(-i) (1 + t(i))] carrying mass 2^(-i)
// spread uniformly along it. A discretization splits each tooth into `mesh`
// equal blocks and keeps one sample per block with the block's mass
// 2^(-i) / mesh. The basepoint (0, 0) collects the tail mass 2^(-depth) of
// the teeth beyond `depth`, so the total is exactly 1. Points are ordered
// basepoint first, then tooth-major, block-minor.

#include <cstddef>
#include <optional>
#include <vector>

#include "mmspace/io.hpp"
#include "mmspace/space.hpp"

namespace mmspace {

enum class ToothSampling {
  Midpoint,       ///< block j sampled at (j + 1/2) / mesh of the tooth length
  RightEndpoint,  ///< block j sampled at (j + 1) / mesh; the last one is the tip
};

struct CombParams {
  std::vector<Rational> t;  ///< one coordinate per tooth, each in [0, 1]
  std::size_t mesh = 1;     ///< samples (blocks) per tooth
  ToothSampling sampling = ToothSampling::Midpoint;

  std::size_t depth() const noexcept { return t.size(); }
  /// Throws InvalidInput on an empty t, a coordinate outside [0,1], or mesh 0.
  void validate() const;
};

struct CombSpace {
  FiniteMMSpace space;
  std::vector<Point2> coords;
};

CombSpace build_comb(const CombParams& p);

/// x-position 2^(2-i) and length 2^(-i)(1 + t(i)) of tooth i (1-based).
Rational tooth_position(std::size_t i);
Rational tooth_length(std::size_t i, const Rational& t_i);

Rational l1_distance(const Point2& a, const Point2& b);

/// Hausdorff distance between two planar point sets under the l1 metric.
/// Throws InvalidInput when either set is empty.
Rational hausdorff_l1(const std::vector<Point2>& A, const std::vector<Point2>& B);

struct CombWitness {
  CombSpace source;  ///< discretization of s
  CombSpace target;  ///< discretization of t
  Coupling pi;       ///< block-diagonal coupling, pi(S) = 1
  Relation S;        ///< basepoint pair plus block (i, j) of s to block (i, j) of t
  Rational distortion;  ///< dis S, computed
  /// 4 * max{2^(-depth), 1/mesh, max_i 2^i |s(i) - t(i)|}, or the requested
  /// epsilon when one was given and all three terms sit strictly below it / 4.
  Rational epsilon;

  Rational covered_mass() const;
  /// max{1 - pi(S), dis S}: what the certificate claims about the box distance.
  Rational objective() const;
  Certificate certificate() const;
};

/// Builds the block-matching certificate between the discretizations of
/// `source` (coordinates s) and `target` (coordinates t), which must agree on
/// depth, mesh and sampling (InvalidInput otherwise). When
/// `requested_epsilon` is given, each of the three terms must sit strictly
/// below it / 4; otherwise InvalidInput names the offending term (mesh too
/// coarse, depth too shallow, coordinates too far apart).
CombWitness comb_witness(const CombParams& source, const CombParams& target,
                         const std::optional<Rational>& requested_epsilon = std::nullopt);

/// The distances from the basepoint to every point, sorted.
std::vector<Rational> basepoint_distances(const CombSpace& c);

}  // namespace mmspace
