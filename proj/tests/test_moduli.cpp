#include <gtest/gtest.h>

#include <set>

#include "mmspace/box.hpp"
#include "mmspace/errors.hpp"
#include "mmspace/gh.hpp"
#include "mmspace/transport.hpp"
#include "mmspace/moduli.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace mmspace {
namespace {

std::vector<Rational> q(std::initializer_list<Rational> v) { return v; }

TEST(MetricVector, PairOrder) {
  EXPECT_EQ(MetricVector::pair_index(0, 1, 4), 0u);
  EXPECT_EQ(MetricVector::pair_index(0, 3, 4), 2u);
  EXPECT_EQ(MetricVector::pair_index(1, 2, 4), 3u);
  EXPECT_EQ(MetricVector::pair_index(2, 1, 4), 3u);
  EXPECT_EQ(MetricVector::pair_index(2, 3, 4), 5u);
}

TEST(MetricVector, Validation) {
  EXPECT_THROW(MetricVector(3, q({1, 1, 3})), InvalidInput);
  EXPECT_THROW(MetricVector(2, q({0})), InvalidInput);
  EXPECT_THROW(MetricVector(3, q({1, 1})), InvalidInput);
  EXPECT_NO_THROW(MetricVector(3, q({1, 1, 2})));
  EXPECT_THROW(WeightVector(q({frac(1, 2), frac(1, 3)})), InvalidInput);
  EXPECT_THROW(WeightVector(q({1, 0})), InvalidInput);
}

TEST(PhiGh, Examples) {
  const auto X = phi_gh(MetricVector(2, q({1})));
  EXPECT_EQ(X.d(0, 1), 1);
  const auto E = phi_gh(MetricVector(3, q({1, 1, 1})));
  EXPECT_EQ(separation(E).value(), diameter(E));
  const auto T = phi_gh(MetricVector(3, q({1, 2, frac(5, 2)})));
  EXPECT_EQ(T.d(0, 1), 1);
  EXPECT_EQ(T.d(0, 2), 2);
  EXPECT_EQ(T.d(1, 2), frac(5, 2));
  EXPECT_EQ(metric_vector_of(T), MetricVector(3, q({1, 2, frac(5, 2)})));
}

TEST(PhiB, Examples) {
  const auto X1 = phi_b(MetricVector(2, q({1})), WeightVector::barycenter(2));
  EXPECT_EQ(X1, two_point_space(1));
  const MetricVector r(3, q({1, 2, frac(5, 2)}));
  EXPECT_EQ(phi_b(r, WeightVector::barycenter(3)), uniform_lift(phi_gh(r)));
  const auto E = phi_b(MetricVector(3, q({1, 1, 1})), WeightVector(q({frac(1, 5), frac(3, 10), frac(1, 2)})));
  EXPECT_EQ(E.mass()[2], frac(1, 2));
  EXPECT_THROW(phi_b(r, WeightVector::barycenter(2)), InvalidInput);
}

TEST(Canonical, SmallExamples) {
  const MetricVector two(2, q({frac(7, 3)}));
  EXPECT_EQ(canonical_form(two).r, two);
  const auto c = canonical_form(MetricVector(3, q({3, 1, 2})));
  EXPECT_EQ(c.r, MetricVector(3, q({1, 2, 3})));
  EXPECT_EQ(MetricVector(3, q({3, 1, 2})).permuted(c.sigma), c.r);
}

TEST(Canonical, GuardRefusesLargeN) {
  Matrix<Rational> d(9, 9, 1);
  for (std::size_t i = 0; i < 9; ++i) d(i, i) = 0;
  EXPECT_THROW(canonical_form(metric_vector_of(FiniteMetricSpace(d))), GuardExceeded);
}

TEST(OrbitDistance, Examples) {
  EXPECT_EQ(orbit_distance(MetricVector(2, q({1})), MetricVector(2, q({frac(7, 5)}))), frac(2, 5));
  const MetricVector r(3, q({3, 4, 5}));
  EXPECT_EQ(orbit_distance(r, r.permuted(std::vector<std::size_t>{2, 0, 1})), 0);
}

TEST(Orbit, SizeBoundedByFactorial) {
  EXPECT_EQ(orbit(MetricVector(3, q({1, 1, 1}))).size(), 1u);
  EXPECT_EQ(orbit(MetricVector(3, q({3, 4, 5}))).size(), 6u);
}

TEST(Injection, AntidiagonalGivesTheSwap) {
  const auto X = two_point_space(1);
  const Relation anti({{0, 1}, {1, 0}});
  EXPECT_EQ(distortion(anti, X.space(), X.space()), 0);
  EXPECT_EQ(relation_to_injection(X.space(), X.space(), anti), (Permutation{1, 0}));
}

TEST(Injection, IdentityGraph) {
  const auto X = phi_gh(MetricVector(3, q({3, 4, 5})));
  EXPECT_EQ(relation_to_injection(X, X, Relation::identity(3)), (Permutation{0, 1, 2}));
}

TEST(Injection, EmptyRelationViolatesHypothesis) {
  const auto X = two_point_space(1);
  try {
    relation_to_injection(X.space(), X.space(), Relation{});
    FAIL() << "expected HypothesisViolation";
  } catch (const HypothesisViolation& e) {
    EXPECT_NE(std::string(e.what()).find("correspondence"), std::string::npos);
  }
  EXPECT_THROW(relation_to_injection(X, X, Relation{}, std::nullopt), HypothesisViolation);
}

TEST(Injection, DistortionAtSeparationIsRejected) {
  const auto X = two_point_space(1);
  const auto Y = two_point_space(2);
  EXPECT_THROW(relation_to_injection(X.space(), Y.space(), Relation::identity(2)), HypothesisViolation);
}

TEST(Injection, MassConditionSuffices) {
  // Not a correspondence, but pi(S) = 1 > 1 - 1/2.
  const auto X = two_point_space(1);
  const auto Y = phi_b(MetricVector(3, q({1, 5, 5})), WeightVector(q({frac(1, 2), frac(1, 2) - frac(1, 100), frac(1, 100)})));
  Coupling pi(2, 3, 0);
  pi(0, 0) = frac(1, 2);
  pi(1, 1) = frac(1, 2) - frac(1, 100);
  pi(1, 2) = frac(1, 100);
  const Relation S({{0, 0}, {1, 1}});
  EXPECT_THROW(relation_to_injection(X, Y, S, std::nullopt), HypothesisViolation);
  EXPECT_EQ(relation_to_injection(X, Y, S, pi), (Permutation{0, 1}));
}

TEST(MassCloseness, Examples) {
  const auto X = two_point_space(1);
  Coupling diag(2, 2, 0);
  diag(0, 0) = diag(1, 1) = frac(1, 2);
  const Permutation id{0, 1};
  EXPECT_TRUE(mass_closeness(id, diag, X, X, frac(1, 1000)));
  EXPECT_TRUE(mass_closeness(id, diag, X, X, frac(3, 2)));

  const FiniteMMSpace Y(X.space(), {frac(45, 100), frac(55, 100)});
  Coupling pi(2, 2, 0);
  pi(0, 0) = frac(43, 100);
  pi(0, 1) = frac(7, 100);
  pi(1, 0) = frac(2, 100);
  pi(1, 1) = frac(48, 100);
  EXPECT_TRUE(is_coupling(pi, X.mass(), Y.mass()));
  EXPECT_EQ(1 - mass_on(pi, Relation::graph(id)), frac(9, 100));
  EXPECT_TRUE(mass_closeness(id, pi, X, Y, frac(1, 10)));
  EXPECT_THROW(mass_closeness(id, pi, X, Y, frac(9, 100)), NotApplicable);
  EXPECT_THROW(mass_closeness(Permutation{0, 0}, pi, X, Y, frac(1, 2)), InvalidInput);
}

TEST(UniformLift, Examples) {
  const auto X = uniform_lift(phi_gh(MetricVector(3, q({1, 3, 2}))));
  EXPECT_EQ(X.mass(), std::vector<Rational>(3, frac(1, 3)));
  EXPECT_EQ(uniform_lift(two_point_space(0).space()).mass(), std::vector<Rational>{1});
  const auto E = uniform_lift(phi_gh(MetricVector(4, q({1, 1, 1, 1, 1, 1}))));
  EXPECT_EQ(E.mass(), std::vector<Rational>(4, frac(1, 4)));
}

class ModuliRandom : public ::testing::TestWithParam<int> {};

TEST_P(ModuliRandom, CanonicalFormMatchesPermutationOracle) {
  testing::Rng rng(GetParam());
  const std::size_t n = testing::uniform_int(rng, 2, 5);
  const auto X = testing::random_mm_space(rng, n);
  const auto r = metric_vector_of(X.space());
  const auto s = weight_vector_of(X);
  std::vector<Rational> key = canonical_form(r).r.values();
  EXPECT_EQ(key, oracle::canonical_key(X.space().dist(), nullptr));
  const auto cs = canonical_form(r, s);
  key = cs.r.values();
  key.insert(key.end(), cs.s->values().begin(), cs.s->values().end());
  EXPECT_EQ(key, oracle::canonical_key(X.space().dist(), &X.mass()));
}

TEST_P(ModuliRandom, CanonicalFormIsOrbitInvariant) {
  testing::Rng rng(GetParam() + 100);
  const std::size_t n = testing::uniform_int(rng, 1, 6);
  const auto X = testing::random_mm_space(rng, n);
  const auto sigma = testing::random_permutation(rng, n);
  const auto Y = relabel(X, sigma);
  EXPECT_EQ(canonical_form(metric_vector_of(X.space()), weight_vector_of(X)),
            canonical_form(metric_vector_of(Y.space()), weight_vector_of(Y)));
  EXPECT_EQ(canonical_form(metric_vector_of(X.space())), canonical_form(metric_vector_of(Y.space())));
}

TEST_P(ModuliRandom, ParallelAndSerialAgree) {
  testing::Rng rng(GetParam() + 200);
  const std::size_t n = testing::uniform_int(rng, 1, 6);
  const auto X = testing::random_mm_space(rng, n);
  const auto r = metric_vector_of(X.space());
  const auto s = weight_vector_of(X);
  for (int threads : {1, 2, 3}) {
    CanonicalOptions o;
    o.threads = threads;
    const auto a = canonical_form(r, s, o);
    const auto b = serial::canonical_form(r, s);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.sigma, b.sigma);
    const auto c = canonical_form(r, o);
    const auto d = serial::canonical_form(r, std::nullopt);
    EXPECT_EQ(c, d);
    EXPECT_EQ(c.sigma, d.sigma);
  }
}

TEST_P(ModuliRandom, OrbitDistanceMatchesPermutationOracle) {
  testing::Rng rng(GetParam() + 300);
  const std::size_t n = testing::uniform_int(rng, 2, 3);
  const auto a = testing::random_metric_vector(rng, n);
  const auto b = testing::random_metric_vector(rng, n);
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::optional<Rational> best;
  do {
    Rational worst = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        worst = std::max(worst, oracle::absdiff(a.at(i, j), b.at(sigma[i], sigma[j])));
    if (!best || worst < *best) best = worst;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  EXPECT_EQ(orbit_distance(a, b), *best);
}

TEST_P(ModuliRandom, FiberLaw) {
  testing::Rng rng(GetParam() + 400);
  const std::size_t n = testing::uniform_int(rng, 2, 4);
  const auto a = testing::random_metric_vector(rng, n);
  const auto b = testing::uniform_int(rng, 0, 1) ? a.permuted(testing::random_permutation(rng, n))
                                                  : testing::random_metric_vector(rng, n);
  EXPECT_EQ(canonical_form(a) == canonical_form(b), gh_exact(phi_gh(a), phi_gh(b)).distance == 0);

  const auto s = testing::random_weight_vector(rng, n);
  const auto sigma = testing::random_permutation(rng, n);
  const bool same_orbit = testing::uniform_int(rng, 0, 1);
  const auto t = same_orbit ? s.permuted(sigma) : testing::random_weight_vector(rng, n);
  const auto bt = same_orbit ? a.permuted(sigma) : b;
  EXPECT_EQ(canonical_form(a, s) == canonical_form(bt, t), box_exact(phi_b(a, s), phi_b(bt, t)).value == 0);
}

TEST_P(ModuliRandom, OrbitSizeAtMostFactorial) {
  testing::Rng rng(GetParam() + 500);
  const std::size_t n = testing::uniform_int(rng, 1, 5);
  const auto r = metric_vector_of(testing::random_line_metric(rng, n));
  const auto o = orbit(r);
  std::size_t factorial = 1;
  for (std::size_t k = 2; k <= n; ++k) factorial *= k;
  EXPECT_LE(o.size(), factorial);
  EXPECT_TRUE(std::is_sorted(o.begin(), o.end()));
  std::set<std::vector<Rational>> distinct;
  for (const auto& v : o) distinct.insert(v.values());
  EXPECT_EQ(distinct.size(), o.size());
}

TEST_P(ModuliRandom, MassClosenessHolds) {
  testing::Rng rng(GetParam() + 600);
  const std::size_t n = testing::uniform_int(rng, 2, 4);
  const auto X = testing::random_mm_space(rng, n);
  const auto Y = testing::perturbed_mm_copy(rng, X, frac(1, 50));
  const auto r = box_exact(X, Y);
  const bool hypotheses = distortion(r.relation, X.space(), Y.space()) < separation(X.space()) &&
                          mass_on(r.coupling, r.relation) > 1 - X.min_atom();
  if (!hypotheses) GTEST_SKIP();
  const auto f = relation_to_injection(X, Y, r.relation, r.coupling);
  const Rational uncovered = 1 - mass_on(r.coupling, Relation::graph(f));
  EXPECT_TRUE(mass_closeness(f, r.coupling, X, Y, uncovered + frac(1, 1000)));
}

INSTANTIATE_TEST_SUITE_P(Seeds, ModuliRandom, ::testing::Range(0, 30));

}  // namespace
}  // namespace mmspace
