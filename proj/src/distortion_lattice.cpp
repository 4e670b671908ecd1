#include "mmspace/distortion_lattice.hpp"

#include <algorithm>

namespace mmspace {

DistortionLattice::DistortionLattice(const FiniteMetricSpace& X, const FiniteMetricSpace& Y)
    : n_(X.size()), m_(Y.size()) {
  std::vector<Rational> gaps;
  gaps.reserve(n_ * n_ * m_ * m_);
  for (std::size_t x1 = 0; x1 < n_; ++x1)
    for (std::size_t x2 = 0; x2 < n_; ++x2)
      for (std::size_t y1 = 0; y1 < m_; ++y1)
        for (std::size_t y2 = 0; y2 < m_; ++y2) gaps.push_back(abs_diff(X.d(x1, x2), Y.d(y1, y2)));

  levels_ = gaps;
  levels_.push_back(0);
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());

  ranks_.resize(gaps.size());
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    auto it = std::lower_bound(levels_.begin(), levels_.end(), gaps[k]);
    ranks_[k] = static_cast<std::uint32_t>(it - levels_.begin());
  }
}

}  // namespace mmspace
