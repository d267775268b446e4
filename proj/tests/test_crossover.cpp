#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "tspga/crossover.hpp"

using namespace tspga;

namespace {

Tour t1(std::string_view text) { return parse_tour(text); }

Instance paper8() { return *fixture("paper8"); }

// 1-based symmetric matrix from the upper triangle, row by row.
Instance matrix_instance(int n, const std::vector<int>& upper) {
  std::vector<int> w(static_cast<std::size_t>(n * n), 0);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      w[i * n + j] = w[j * n + i] = upper[k++];
    }
  }
  return Instance::from_matrix("m" + std::to_string(n), n, std::move(w));
}

std::vector<int> one_based(const std::vector<int>& cities) {
  std::vector<int> out;
  for (int c : cities) out.push_back(c + 1);
  return out;
}

std::multiset<int> bag(const std::vector<int>& v) { return {v.begin(), v.end()}; }

const Tour kTraceFather = parse_tour("4-5-7-3-1-2-6-8");
const Tour kTraceMother = parse_tour("3-1-7-5-6-4-2-8");

}  // namespace

TEST(CrossoverSpec, NamesAndParsing) {
  const auto set = CrossoverSpec::benchmark_set();
  std::vector<std::string> names;
  for (const auto& s : set) names.push_back(s.name());
  EXPECT_EQ(names, (std::vector<std::string>{"PMX", "EPMX", "GSX-2", "GX[2]", "GX[3][4]", "GX[5]",
                                              "VGX", "UHX", "DPX"}));
  for (const auto& s : set) EXPECT_EQ(CrossoverSpec::parse(s.name()), s);
  EXPECT_EQ(CrossoverSpec::parse("gx34"), CrossoverSpec::gx(GxVariant::kGx34));
  EXPECT_EQ(CrossoverSpec::parse("Gsx-0"), CrossoverSpec::gsx(0));
  EXPECT_EQ(CrossoverSpec::parse("uhx").kind(), CrossoverKind::kUhx);
  EXPECT_FALSE(CrossoverSpec::uhx().gx_variant().has_value());
  EXPECT_EQ(CrossoverSpec::gsx(1).gsx_version(), 1);
  EXPECT_TRUE(CrossoverSpec::pmx().produces_two_children());
  EXPECT_FALSE(CrossoverSpec::dpx().produces_two_children());
  EXPECT_THROW(CrossoverSpec::parse("OX"), std::invalid_argument);
  EXPECT_THROW(CrossoverSpec::gsx(3), std::invalid_argument);
}

TEST(Pmx, HandTracedCuts) {
  const auto f = t1("1-2-3-4-5-6-7-8");
  const auto m = t1("1-4-8-6-2-3-5-7");
  auto [c1, c2] = pmx(f, m, 3, 6);
  EXPECT_EQ(format_tour(c1), "1-5-4-6-2-3-7-8");
  EXPECT_EQ(format_tour(c2), "1-3-8-4-5-6-2-7");
}

TEST(Pmx, CityInBothSegments) {
  // City 4 lies in the father's segment (2,3,4) and the mother's (4,8,6).
  const auto f = t1("1-2-3-4-5-6-7-8");
  const auto m = t1("1-4-8-6-2-3-5-7");
  auto [c1, c2] = pmx(f, m, 1, 4);
  EXPECT_EQ(format_tour(c1), "1-4-8-6-5-2-7-3");
  EXPECT_EQ(format_tour(c2), "1-2-3-4-6-8-5-7");
  EXPECT_FALSE(validate_tour(c1, 8));
  EXPECT_FALSE(validate_tour(c2, 8));
}

TEST(Pmx, IdenticalParentsAndBadCuts) {
  const auto f = t1("3-1-4-2-5-8-7-6");
  for (int a = 0; a < 8; ++a) {
    for (int b = a + 1; b <= 8; ++b) {
      auto [c1, c2] = pmx(f, f, a, b);
      EXPECT_EQ(c1, f);
      EXPECT_EQ(c2, f);
    }
  }
  EXPECT_THROW(pmx(f, f, 3, 3), std::invalid_argument);
  EXPECT_THROW(pmx(f, f, -1, 3), std::invalid_argument);
  EXPECT_THROW(pmx(f, f, 2, 9), std::invalid_argument);
}

TEST(Epmx, WorkedExample) {
  auto [c1, c2] = epmx(t1("1-2-3-4-5-6-7-8"), t1("1-4-8-6-2-3-5-7"), 4);
  EXPECT_EQ(format_tour(c1), "1-4-8-6-5-3-7-2");
  EXPECT_EQ(format_tour(c2), "1-2-3-4-8-6-5-7");
}

TEST(Epmx, PointNIsIdentityAndIdenticalParents) {
  const auto f = t1("1-2-3-4-5-6-7-8");
  const auto m = t1("1-4-8-6-2-3-5-7");
  auto [c1, c2] = epmx(f, m, 8);
  EXPECT_EQ(c1, m);
  EXPECT_EQ(c2, f);
  for (int p = 1; p <= 8; ++p) {
    auto [d1, d2] = epmx(f, f, p);
    EXPECT_EQ(d1, f);
    EXPECT_EQ(d2, f);
  }
  EXPECT_THROW(epmx(f, m, 0), std::invalid_argument);
  EXPECT_THROW(epmx(f, m, 9), std::invalid_argument);
}

TEST(Gx, VgxSecondCityOnTraceParents) {
  const auto inst = paper8();
  RandomStream rng(1);
  Trace trace;
  const auto child = gx(GxVariant::kVgx, kTraceFather, kTraceMother, 6, inst, rng, &trace);
  EXPECT_EQ(child[0], 6);
  EXPECT_EQ(child[1], 0);
  ASSERT_GE(trace.size(), 2u);
  EXPECT_EQ(bag(one_based(trace[1].candidates)), (std::multiset<int>{5, 3, 1, 5}));
  EXPECT_EQ(inst.distance(6, 0), 23);
  EXPECT_FALSE(validate_tour(child, 8));
}

TEST(Gx, IdenticalParentsGiveRotation) {
  const auto inst = paper8();
  const auto p = t1("4-5-7-3-1-2-6-8");
  for (int start = 0; start < 8; ++start) {
    RandomStream rng(3);
    EXPECT_EQ(gx(GxVariant::kGx2, p, p, start, inst, rng), rotate_to(p, start));
  }
}

TEST(Gx, Gx2RandomFallbackFourCities) {
  // d12 = d24 = d34 = 1, others 5. From 1 the walk takes 2, then 4; at 4
  // both parental successors are city 1 and only 3 remains.
  const auto inst = matrix_instance(4, {1, 5, 5, 5, 1, 1});
  RandomStream rng(7);
  Trace trace;
  const auto child = gx(GxVariant::kGx2, t1("1-2-3-4"), t1("1-3-2-4"), 0, inst, rng, &trace);
  EXPECT_EQ(format_tour(child), "1-2-4-3");
  EXPECT_NE(trace.back().note.find("random"), std::string::npos);
}

TEST(Gx, Gx2RandomFallbackUsesSeededDraw) {
  // d12 = d25 = d34 = 1, others 9. The walk 1, 2, 5 then meets two visited
  // successors with {3, 4} left; the fallback takes the k-th of them.
  std::vector<int> upper(10, 9);
  upper[0] = 1;  // 1-2
  upper[6] = 1;  // 2-5
  upper[7] = 1;  // 3-4
  const auto inst = matrix_instance(5, upper);
  ASSERT_EQ(inst.distance(1, 4), 1);
  ASSERT_EQ(inst.distance(2, 3), 1);
  std::set<std::string> seen;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomStream rng(seed);
    const auto child = gx(GxVariant::kGx2, t1("1-2-3-4-5"), t1("1-3-4-2-5"), 0, inst, rng);
    const int k = RandomStream(seed).index(2);
    EXPECT_EQ(format_tour(child), k == 0 ? "1-2-5-3-4" : "1-2-5-4-3");
    seen.insert(format_tour(child));
  }
  EXPECT_EQ(seen.size(), 2u);
}

TEST(Gx, Gx34FallsBackToNearest) {
  std::vector<int> upper(10, 9);
  upper[0] = 1;
  upper[6] = 1;
  upper[7] = 1;
  upper[9] = 2;  // 4-5 nearer than 3-5
  const auto inst = matrix_instance(5, upper);
  RandomStream rng(1);
  const auto child = gx(GxVariant::kGx34, t1("1-2-3-4-5"), t1("1-3-4-2-5"), 0, inst, rng);
  EXPECT_EQ(format_tour(child), "1-2-5-4-3");
}

TEST(Uhx, EightCityTrace) {
  const auto inst = paper8();
  Trace trace;
  const auto child = uhx(kTraceFather, kTraceMother, 6, inst, &trace);
  EXPECT_EQ(format_tour(child), "7-1-3-8-2-5-4-6");
  EXPECT_EQ(tour_length(child, inst), 163);
  ASSERT_EQ(trace.size(), 8u);
  EXPECT_EQ(one_based(trace[1].candidates), (std::vector<int>{5, 3, 1, 5}));
  EXPECT_EQ(one_based(trace[2].candidates), (std::vector<int>{5, 3, 3, 5}));
  EXPECT_EQ(bag(one_based(trace[3].candidates)), (std::multiset<int>{5, 1, 5, 8}));
  EXPECT_EQ(trace[1].chosen, 0);
  EXPECT_EQ(trace[2].chosen, 2);
  EXPECT_EQ(trace[3].chosen, 7);
  EXPECT_NE(format_trace(trace).find("{5,3,1,5}"), std::string::npos);
}

TEST(Uhx, ThreeCitiesGiveTheOnlyCycle) {
  RandomStream rng(2);
  const auto inst = oracle::random_euclidean(3, rng);
  for (int s = 0; s < 3; ++s) {
    const auto child = uhx(t1("1-2-3"), t1("2-1-3"), s, inst);
    EXPECT_FALSE(validate_tour(child, 3));
    EXPECT_EQ(child[0], s);
  }
}

TEST(Gsx, IdenticalParentsAnyVersion) {
  RandomStream rng(4);
  const auto p = Tour::random(12, rng);
  for (int version = 0; version <= 2; ++version) {
    for (int s = 0; s < 12; ++s) {
      EXPECT_TRUE(cyclically_equal(gsx(version, p, p, s, rng), p));
    }
  }
}

TEST(Gsx, Gsx1ReproducesFather) {
  const auto father = t1("7-3-1-4-6-8-2-5");
  const auto mother = t1("1-2-3-5-6-4-7-8");  // left neighbour of 4 is 6
  RandomStream rng(1);
  const auto one = gsx(1, father, mother, 3, rng);
  EXPECT_EQ(format_tour(one), "4-6-8-2-5-7-3-1");
  EXPECT_TRUE(cyclically_equal(one, father));
  const auto two = gsx(2, father, mother, 3, rng);
  EXPECT_EQ(format_tour(two), "7-4-6-8-2-5-3-1");
  EXPECT_FALSE(cyclically_equal(two, father));
}

TEST(Gsx, Gsx0SeedPinned) {
  RandomStream rng(1);
  Trace trace;
  // The subtour closes at 3-1-2, leaving 4 and 5 to the shuffle.
  const auto child = gsx(0, t1("1-2-3-4-5"), t1("2-3-1-4-5"), 0, rng, &trace);
  EXPECT_FALSE(validate_tour(child, 5));
  EXPECT_EQ(format_tour(child).substr(0, 5), "3-1-2");
  EXPECT_EQ(format_tour(child), "3-1-2-5-4");
  EXPECT_NE(trace.back().note.find("random"), std::string::npos);
}

TEST(Dpx, Paper8Regression) {
  const auto inst = paper8();
  const auto f = t1("1-2-3-4-5-6-7-8");
  const auto m = t1("1-2-3-5-4-6-8-7");
  const auto child = dpx(f, m, inst);
  EXPECT_EQ(format_tour(child), "1-2-3-8-7-6-4-5");
  EXPECT_EQ(tour_length(child, inst), 141);
  const auto edges = tour_edges(child);
  for (const auto& e : common_edges(f, m)) {
    EXPECT_TRUE(std::binary_search(edges.begin(), edges.end(), e));
  }
}

TEST(Dpx, EdgeDisjointParentsGiveNearestNeighbour) {
  const auto inst =
      Instance::from_coordinates("five", {{0, 0}, {8, 1}, {2, 1}, {9, 6}, {3, 8}});
  const auto child = dpx(t1("1-2-3-4-5"), t1("1-3-5-2-4"), inst);
  EXPECT_EQ(child.cities(), oracle::nearest_neighbour(inst, 0));
  EXPECT_EQ(format_tour(child), "1-3-2-4-5");
}

TEST(Dpx, IdenticalParents) {
  const auto inst = paper8();
  const auto p = t1("4-5-7-3-1-2-6-8");
  EXPECT_TRUE(cyclically_equal(dpx(p, p, inst), p));
}

TEST(Crossover, PreconditionsThrow) {
  const auto inst = paper8();
  RandomStream rng(1);
  const auto f = Tour::identity(8);
  EXPECT_THROW(uhx(f, Tour::identity(7), 0, inst), std::invalid_argument);
  EXPECT_THROW(uhx(f, f, 8, inst), std::invalid_argument);
  EXPECT_THROW(gx(GxVariant::kGx2, f, t1("1-1-3-4-5-6-7-8"), 0, inst, rng), std::invalid_argument);
  EXPECT_THROW(dpx(Tour::identity(5), Tour::identity(5), inst), std::invalid_argument);
}

TEST(Crossover, ValidityDeterminismAndDpxEdges) {
  std::vector<CrossoverSpec> specs = CrossoverSpec::benchmark_set();
  specs.push_back(CrossoverSpec::gsx(0));
  specs.push_back(CrossoverSpec::gsx(1));
  RandomStream meta(77);
  for (int n : {5, 8, 20, 51}) {
    const auto inst = oracle::random_euclidean(n, meta);
    for (const auto& spec : specs) {
      for (int trial = 0; trial < 300; ++trial) {
        const auto f = Tour::random(n, meta);
        const auto m = Tour::random(n, meta);
        const std::uint64_t seed = meta.next_raw();
        RandomStream a(seed), b(seed);
        const auto child = recombine(spec, f, m, inst, a);
        ASSERT_FALSE(validate_tour(child, n)) << spec.name() << " n=" << n;
        ASSERT_EQ(child, recombine(spec, f, m, inst, b)) << spec.name();
        if (spec.kind() == CrossoverKind::kDpx) {
          const auto edges = tour_edges(child);
          for (const auto& e : common_edges(f, m)) {
            ASSERT_TRUE(std::binary_search(edges.begin(), edges.end(), e));
          }
        }
      }
    }
  }
}

TEST(Crossover, AdversarialFallbacksNeverDuplicate) {
  // Parents that are mirror images force frequent visited candidates.
  RandomStream meta(5);
  for (int n : {4, 5, 6, 7}) {
    const auto inst = oracle::random_euclidean(n, meta);
    for (int trial = 0; trial < 500; ++trial) {
      const auto f = Tour::random(n, meta);
      auto rev = f.cities();
      std::rotate(rev.begin(), rev.begin() + meta.index(n), rev.end());
      std::reverse(rev.begin(), rev.end());
      const Tour m(rev);
      const int start = meta.index(n);
      for (auto v : {GxVariant::kGx2, GxVariant::kGx34, GxVariant::kGx5, GxVariant::kVgx}) {
        ASSERT_FALSE(validate_tour(gx(v, f, m, start, inst, meta), n));
      }
      ASSERT_FALSE(validate_tour(uhx(f, m, start, inst), n));
      ASSERT_FALSE(validate_tour(uhx(f, Tour::random(n, meta), start, inst), n));
    }
  }
}

TEST(Crossover, RecombineKeepsShorterPmxChild) {
  const auto inst = paper8();
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RandomStream rng(seed);
    const auto f = Tour::random(8, rng);
    const auto m = Tour::random(8, rng);
    RandomStream replay = rng;
    const auto child = recombine(CrossoverSpec::pmx(), f, m, inst, rng);
    int a = replay.uniform(0, 8);
    int b = replay.uniform(0, 7);
    if (b >= a) ++b;
    auto [c1, c2] = pmx(f, m, std::min(a, b), std::max(a, b));
    const auto expected = tour_length(c2, inst) < tour_length(c1, inst) ? c2 : c1;
    EXPECT_EQ(child, expected);
  }
}
