#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mmspace/space.hpp"

namespace mmspace {

/// The finite set D = {|d_X(x,x') - d_Y(y,y')|} (always containing 0) in
/// increasing order, plus a rank table so that solvers compare pairwise
/// distortions as integers. rank(c1, c2) indexes into levels().
class DistortionLattice {
 public:
  DistortionLattice(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return m_; }
  const std::vector<Rational>& levels() const noexcept { return levels_; }

  std::uint32_t rank(std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2) const {
    return ranks_[((x1 * n_ + x2) * m_ + y1) * m_ + y2];
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<Rational> levels_;
  std::vector<std::uint32_t> ranks_;
};

}  // namespace mmspace
