#include "mmspace/comb.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "mmspace/errors.hpp"

namespace mmspace {

namespace {

Rational power_of_two(long e) {
  Rational r(1);
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

Rational sample_height(const Rational& length, std::size_t block, std::size_t mesh, ToothSampling sampling) {
  const Rational m(static_cast<unsigned long>(mesh));
  switch (sampling) {
    case ToothSampling::Midpoint:
      return length * (Rational(static_cast<unsigned long>(block)) + Rational(1, 2)) / m;
    case ToothSampling::RightEndpoint:
      return length * Rational(static_cast<unsigned long>(block + 1)) / m;
  }
  return 0;
}

}  // namespace

void CombParams::validate() const {
  if (t.empty()) throw InvalidInput("comb: depth must be at least 1");
  if (mesh == 0) throw InvalidInput("comb: mesh must be at least 1");
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || t[i] > 1)
      throw InvalidInput("comb: coordinate " + std::to_string(i + 1) + " = " + to_exact_string(t[i]) +
                         " is outside [0,1]");
}

Rational tooth_position(std::size_t i) { return power_of_two(2 - static_cast<long>(i)); }

Rational tooth_length(std::size_t i, const Rational& t_i) {
  return power_of_two(-static_cast<long>(i)) * (1 + t_i);
}

Rational l1_distance(const Point2& a, const Point2& b) {
  return abs_diff(a.first, b.first) + abs_diff(a.second, b.second);
}

CombSpace build_comb(const CombParams& p) {
  p.validate();
  std::vector<Point2> coords{{Rational(0), Rational(0)}};
  std::vector<std::string> labels{"o"};
  std::vector<Rational> mass{power_of_two(-static_cast<long>(p.depth()))};
  const Rational m(static_cast<unsigned long>(p.mesh));

  for (std::size_t i = 1; i <= p.depth(); ++i) {
    const Rational x = tooth_position(i);
    const Rational length = tooth_length(i, p.t[i - 1]);
    const Rational block_mass = power_of_two(-static_cast<long>(i)) / m;
    for (std::size_t j = 0; j < p.mesh; ++j) {
      coords.emplace_back(x, sample_height(length, j, p.mesh, p.sampling));
      labels.push_back("t" + std::to_string(i) + "." + std::to_string(j));
      mass.push_back(block_mass);
    }
  }

  const std::size_t n = coords.size();
  Matrix<Rational> d(n, n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) d(a, b) = d(b, a) = l1_distance(coords[a], coords[b]);

  return {FiniteMMSpace(FiniteMetricSpace(std::move(labels), std::move(d)), std::move(mass)),
          std::move(coords)};
}

Rational hausdorff_l1(const std::vector<Point2>& A, const std::vector<Point2>& B) {
  if (A.empty() || B.empty()) throw InvalidInput("hausdorff_l1: empty point set");
  auto directed = [](const std::vector<Point2>& P, const std::vector<Point2>& Q) {
    Rational worst = 0;
    for (const auto& p : P) {
      std::optional<Rational> nearest;
      for (const auto& q : Q) {
        Rational d = l1_distance(p, q);
        if (!nearest || d < *nearest) nearest = std::move(d);
      }
      if (*nearest > worst) worst = *nearest;
    }
    return worst;
  };
  return std::max(directed(A, B), directed(B, A));
}

Rational CombWitness::covered_mass() const { return mass_on(pi, S); }

Rational CombWitness::objective() const {
  Rational uncovered = 1 - covered_mass();
  return std::max(uncovered, distortion);
}

Certificate CombWitness::certificate() const { return {pi, S, objective(), epsilon}; }

CombWitness comb_witness(const CombParams& source, const CombParams& target,
                         const std::optional<Rational>& requested_epsilon) {
  source.validate();
  target.validate();
  if (source.depth() != target.depth())
    throw InvalidInput("comb witness: s has " + std::to_string(source.depth()) + " coordinates, t has " +
                       std::to_string(target.depth()));
  if (source.mesh != target.mesh || source.sampling != target.sampling)
    throw InvalidInput("comb witness: both combs must share mesh and sampling");

  const std::size_t depth = source.depth();
  const Rational tail_term = power_of_two(-static_cast<long>(depth));
  const Rational mesh_term(1, static_cast<unsigned long>(source.mesh));
  Rational gap_term = 0;
  for (std::size_t i = 1; i <= depth; ++i)
    gap_term = std::max(gap_term, Rational(power_of_two(static_cast<long>(i)) *
                                           abs_diff(source.t[i - 1], target.t[i - 1])));

  Rational epsilon;
  if (requested_epsilon) {
    const Rational quarter = *requested_epsilon / 4;
    if (!(mesh_term < quarter))
      throw InvalidInput("comb witness: mesh too coarse for epsilon (need 1/mesh < epsilon/4)");
    if (!(tail_term < quarter))
      throw InvalidInput("comb witness: depth too shallow for epsilon (need 2^-depth < epsilon/4)");
    if (!(gap_term < quarter))
      throw InvalidInput("comb witness: coordinates too far apart for epsilon (need 2^i |s(i)-t(i)| < epsilon/4)");
    epsilon = *requested_epsilon;
  } else {
    epsilon = 4 * std::max({tail_term, mesh_term, gap_term});
  }

  CombSpace cs = build_comb(source);
  CombSpace ct = build_comb(target);
  const std::size_t n = cs.space.size();

  // Same point order on both sides, and block masses depend only on (i, j),
  // so the block product couplings assemble into the diagonal.
  Coupling pi(n, n, Rational(0));
  std::vector<Cell> pairs;
  for (std::size_t k = 0; k < n; ++k) {
    pi(k, k) = cs.space.mass()[k];
    pairs.emplace_back(k, k);
  }
  Relation S(std::move(pairs));
  Rational dis = mmspace::distortion(S, cs.space.space(), ct.space.space());
  return {std::move(cs), std::move(ct), std::move(pi), std::move(S), std::move(dis), std::move(epsilon)};
}

std::vector<Rational> basepoint_distances(const CombSpace& c) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < c.space.size(); ++k) out.push_back(c.space.d(0, k));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mmspace
