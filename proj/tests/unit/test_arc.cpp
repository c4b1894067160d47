#include <gtest/gtest.h>

#include <cmath>

#include "fractarc/arc.hpp"
#include "fractarc/errors.hpp"
#include "oracles.hpp"

using namespace fractarc;

namespace {

ArcApproximation reference_arc(int depth) {
  ArcApproximation arc(RatioCantorSet(RatioSequence::dyadic()), SelfSimilarCantor(make_rational(1, 3)), 1);
  arc.build_through(depth);
  return arc;
}

std::size_t pow2(int e) { return std::size_t{1} << e; }

}  // namespace

TEST(FirstGeneration, DistanceOrder) {
  const auto complex = build_first_generation(RatioCantorSet(RatioSequence::dyadic()),
                                              SelfSimilarCantor(make_rational(1, 3)), 1);
  ASSERT_EQ(complex.cells.size(), 4u);
  const ExactPoint lo[] = {{Rational(0), Rational(0)},
                           {Rational(0), make_rational(2, 3)},
                           {make_rational(3, 4), Rational(0)},
                           {make_rational(3, 4), make_rational(2, 3)}};
  for (std::size_t s = 0; s < 4; ++s) {
    EXPECT_EQ(complex.cells[s].box.lo, lo[s]) << s;
    EXPECT_EQ(complex.cells[s].rank, s + 1);
    EXPECT_EQ(complex.cells[s].box.hi[0] - complex.cells[s].box.lo[0], make_rational(1, 4));
    EXPECT_EQ(complex.cells[s].box.hi[1] - complex.cells[s].box.lo[1], make_rational(1, 3));
  }
  EXPECT_EQ(squared_norm(complex.cells[0].near_corner()), 0);
}

TEST(FirstGeneration, OrderMatchesSquaredDistanceOracle) {
  for (int n : {1, 2, 3}) {
    const auto y = product_for_dimension(n - 0.5);
    const auto complex = build_first_generation(RatioCantorSet(RatioSequence::harmonic()), y.factor, n);
    ASSERT_EQ(complex.cells.size(), pow2(n + 1));
    for (std::size_t s = 1; s < complex.cells.size(); ++s) {
      EXPECT_LE(squared_norm(complex.cells[s - 1].box.lo), squared_norm(complex.cells[s].box.lo));
      for (std::size_t t = 0; t < s; ++t) EXPECT_FALSE(complex.cells[s].box.intersects(complex.cells[t].box));
    }
    for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
      EXPECT_EQ(complex.cells.back().box.hi[i], 1);
    }
  }
}

TEST(ParamIntervals, Subdivision) {
  ParamInterval root{0, 0, Rational(0), Rational(1), ParamStatus::neglected, 0};
  const auto kids = subdivide_param_interval(root, 1);
  ASSERT_EQ(kids.size(), 7u);
  for (std::size_t p = 0; p < 7; ++p) {
    EXPECT_EQ(kids[p].hi - kids[p].lo, make_rational(1, 7));
    EXPECT_EQ(kids[p].status, p % 2 == 0 ? ParamStatus::neglected : ParamStatus::used);
    EXPECT_EQ(kids[p].link, p % 2 == 0 ? p / 2 : (p - 1) / 2);
  }
  const auto n2 = subdivide_param_interval(root, 2);
  EXPECT_EQ(n2.size(), 15u);
  std::size_t neglected = 0;
  for (const auto& k : n2) neglected += k.status == ParamStatus::neglected;
  EXPECT_EQ(neglected, 8u);
  ParamInterval used{1, 1, make_rational(1, 7), make_rational(2, 7), ParamStatus::used, 0};
  EXPECT_THROW(subdivide_param_interval(used, 1), std::invalid_argument);
}

TEST(Routing, SingleCellNeedsNothing) {
  const auto complex = build_first_generation(RatioCantorSet(RatioSequence::dyadic()),
                                              SelfSimilarCantor(make_rational(1, 3)), 1);
  Box unit{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}};
  EXPECT_TRUE(route_connectors(std::span<const Cell>(complex.cells.data(), 1), unit).empty());
  const auto routes = route_connectors(complex.cells, unit);
  ASSERT_EQ(routes.size(), 3u);
  for (std::size_t s = 0; s < 3; ++s) {
    EXPECT_EQ(routes[s].front(), complex.cells[s].far_corner());
    EXPECT_EQ(routes[s].back(), complex.cells[s + 1].near_corner());
  }
}

TEST(Routing, DetourWhenStraightIsForbidden) {
  const auto complex = build_first_generation(RatioCantorSet(RatioSequence::dyadic()),
                                              SelfSimilarCantor(make_rational(1, 3)), 1);
  Box unit{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}};
  RoutingPolicy policy;
  policy.prefer_straight = false;
  const auto routes = route_connectors(complex.cells, unit, policy);
  ASSERT_EQ(routes.size(), 3u);
  std::vector<std::vector<ExactPoint>> placed;
  for (std::size_t s = 0; s < 3; ++s) {
    EXPECT_GT(routes[s].size(), 2u);
    EXPECT_FALSE(connector_conflict(routes[s], complex.cells, s, unit, placed));
    placed.push_back(routes[s]);
  }
  policy.clearance_schedule.clear();
  EXPECT_THROW(route_connectors(complex.cells, unit, policy), RoutingFailed);
}

TEST(Routing, ConflictDetection) {
  const auto complex = build_first_generation(RatioCantorSet(RatioSequence::dyadic()),
                                              SelfSimilarCantor(make_rational(1, 3)), 1);
  Box unit{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}};
  std::vector<ExactPoint> through{complex.cells[1].far_corner(), {make_rational(1, 8), make_rational(1, 8)},
                                  complex.cells[2].near_corner()};
  EXPECT_TRUE(connector_conflict(through, complex.cells, 1, unit, {}));
  std::vector<ExactPoint> outside{complex.cells[1].far_corner(), {Rational(2), Rational(2)},
                                  complex.cells[2].near_corner()};
  EXPECT_TRUE(connector_conflict(outside, complex.cells, 1, unit, {}));
}

TEST(ArcBuild, CountsPerGeneration) {
  const auto arc = reference_arc(3);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(arc.cells(k).cells.size(), pow2(2 * k));
    EXPECT_EQ(arc.cumulative_connectors(k), pow2(2 * k) - 1);
    EXPECT_EQ(arc.param_intervals(k).size(), pow2(2 * (k - 1)) * 7);
    std::size_t used = 0;
    for (const auto& p : arc.param_intervals(k)) used += p.status == ParamStatus::used;
    EXPECT_EQ(used, pow2(2 * (k - 1)) * 3);
  }
  EXPECT_EQ(arc.connectors(1).size(), 3u);
  EXPECT_TRUE(verify_counting(arc).pass);
}

TEST(ArcBuild, NeglectedLengthAndTiling) {
  const auto arc = reference_arc(3);
  for (int k = 1; k <= 3; ++k) {
    Rational neglected = 0;
    for (const auto& c : arc.cells(k).cells) neglected += c.param_hi - c.param_lo;
    EXPECT_EQ(neglected, power(make_rational(4, 7), static_cast<unsigned>(k)));
  }
}

TEST(ArcBuild, BudgetExceeded) {
  ArcApproximation arc(RatioCantorSet(RatioSequence::dyadic()), SelfSimilarCantor(make_rational(1, 3)), 1, {}, 5);
  arc.build_through(2);
  EXPECT_THROW(arc.build_generation(), BudgetExceeded);
}

TEST(ArcBuild, HigherDimensionRoutes) {
  const auto y = product_for_dimension(1.0);
  ASSERT_EQ(y.copies, 2);
  ArcApproximation arc(RatioCantorSet(RatioSequence::dyadic()), y.factor, y.copies);
  arc.build_through(2);
  EXPECT_EQ(arc.cells(2).cells.size(), 64u);
  EXPECT_EQ(arc.cumulative_connectors(2), 63u);
  EXPECT_TRUE(verify_injectivity(arc, 2).pass);
  EXPECT_TRUE(verify_counting(arc).pass);
}

TEST(Injectivity, PassesAndCatchesCorruption) {
  auto arc = reference_arc(2);
  EXPECT_TRUE(verify_injectivity(arc, 1).pass);
  EXPECT_TRUE(verify_injectivity(arc, 2).pass);
  EXPECT_TRUE(verify_injectivity(arc, 0).pass);
  auto& joins = arc.mutable_connectors(2);
  const ExactPoint via = joins[1].vertices.front();
  joins[0].vertices.insert(joins[0].vertices.begin() + 1, via);
  const auto report = verify_injectivity(arc, 2);
  EXPECT_FALSE(report.pass);
  ASSERT_TRUE(report.crossing);
  EXPECT_EQ(report.crossing->first, 3u);
  EXPECT_EQ(report.crossing->second, 4u);
}

TEST(Injectivity, PairwiseOracleAtDepthTwo) {
  const auto arc = reference_arc(2);
  std::vector<const Connector*> all;
  for (int g = 1; g <= 2; ++g) {
    for (const auto& c : arc.connectors(g)) all.push_back(&c);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      for (std::size_t a = 0; a + 1 < all[i]->vertices.size(); ++a) {
        for (std::size_t b = 0; b + 1 < all[j]->vertices.size(); ++b) {
          EXPECT_FALSE(oracle::segments_meet_2d(all[i]->vertices[a], all[i]->vertices[a + 1], all[j]->vertices[b],
                                                all[j]->vertices[b + 1]));
        }
      }
    }
  }
}

TEST(Evaluate, SpecExamples) {
  const auto arc = reference_arc(3);
  const auto& first = arc.connectors(1)[0];
  const double mid = (first.param_lo.get_d() + first.param_hi.get_d()) / 2.0;
  const auto p = evaluate(arc, mid, 3);
  EXPECT_TRUE(p.exact);
  const auto a = to_doubles(first.vertices.front());
  const auto b = to_doubles(first.vertices.back());
  ASSERT_EQ(first.vertices.size(), 2u);
  EXPECT_NEAR(p.point[0], (a[0] + b[0]) / 2, 1e-12);
  EXPECT_NEAR(p.point[1], (a[1] + b[1]) / 2, 1e-12);
  for (int k = 0; k <= 3; ++k) {
    const auto z = evaluate(arc, 0.0, k);
    EXPECT_FALSE(z.exact);
    EXPECT_EQ(z.point, std::vector<double>({0.0, 0.0}));
    EXPECT_DOUBLE_EQ(z.error_bound, arc.cell_diameter(k));
  }
  EXPECT_THROW(evaluate(arc, 1.5, 1), std::invalid_argument);
  EXPECT_THROW(evaluate(arc, 0.5, 4), InsufficientDepth);
}

TEST(Evaluate, NestedResolutionsStayWithinDiameter) {
  const auto arc = reference_arc(4);
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    for (int k = 1; k < 4; ++k) {
      const auto a = evaluate(arc, t, k);
      const auto b = evaluate(arc, t, k + 1);
      EXPECT_LE(oracle::euclid(a.point, b.point), arc.cell_diameter(k) * (1 + 1e-12)) << t << " " << k;
    }
  }
}

TEST(Modulus, VacuousAndCoarse) {
  const auto arc = reference_arc(3);
  const auto vac = modulus_of_continuity(arc, std::sqrt(2.0));
  EXPECT_TRUE(vac.vacuous);
  EXPECT_EQ(vac.delta, 1.0);
  const double eps = arc.cell_diameter(1) * (1 + 1e-9);
  const auto m = modulus_of_continuity(arc, eps);
  EXPECT_EQ(m.coarse_generation, 1);
  EXPECT_DOUBLE_EQ(m.delta_prime, 1.0 / 98.0);
  double lipschitz = 0.0;
  for (const auto& c : arc.connectors(1)) lipschitz = std::max(lipschitz, c.length * 7.0);
  EXPECT_NEAR(m.lipschitz, lipschitz, 1e-12);
  EXPECT_DOUBLE_EQ(m.delta, std::min(1.0 / 98.0, eps / (2 * lipschitz)));
  EXPECT_THROW(modulus_of_continuity(arc, 0.01), InsufficientDepth);
}

TEST(Modulus, SampledPairsRespectEpsilon) {
  const auto arc = reference_arc(4);
  Sampler sampler(12);
  for (double eps : {0.5, 0.2, 0.1}) {
    const auto m = modulus_of_continuity(arc, eps);
    const auto check = check_modulus(arc, m, 10000, sampler, 4);
    EXPECT_EQ(check.pairs, 10000u);
    EXPECT_EQ(check.violations, 0u) << eps;
    EXPECT_LT(check.max_separation, m.delta);
  }
}

TEST(Containment, CornersAndRandomAddresses) {
  const auto arc = reference_arc(4);
  std::vector<Address> corners{Address::zeros(2, 24), Address::ones(2, 24)};
  double previous = INFINITY;
  Sampler sampler(77);
  std::vector<Address> random;
  for (int i = 0; i < 100; ++i) random.push_back(Address::random(2, 24, sampler));
  for (int k = 1; k <= 4; ++k) {
    const auto c = verify_containment(arc, k, corners);
    EXPECT_TRUE(c.pass);
    const auto zero = verify_containment(arc, k, std::span<const Address>(corners.data(), 1));
    EXPECT_EQ(zero.max_distance, 0.0);
    const auto r = verify_containment(arc, k, random);
    EXPECT_TRUE(r.pass) << k;
    EXPECT_LT(r.bound, previous);
    previous = r.bound;
  }
}

TEST(Convergence, VertexCloudHausdorff) {
  const auto arc = reference_arc(4);
  for (int k = 1; k < 4; ++k) EXPECT_LE(vertex_cloud_hausdorff(arc, k), arc.cell_diameter(k) * (1 + 1e-12));
}

TEST(Counting, DetectsBrokenParameters) {
  auto arc = reference_arc(2);
  arc.mutable_connectors(2)[0].param_hi += make_rational(1, 1000);
  const auto report = verify_counting(arc);
  EXPECT_FALSE(report.pass);
  EXPECT_FALSE(report.failures.empty());
}
