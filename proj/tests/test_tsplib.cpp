#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "oracles.hpp"
#include "tspga/tsplib.hpp"

using namespace tspga;

namespace {

const char* kTriangle =
    "NAME : tri3\n"
    "TYPE : TSP\n"
    "DIMENSION : 3\n"
    "EDGE_WEIGHT_TYPE : EUC_2D\n"
    "NODE_COORD_SECTION\n"
    "1 0 0\n"
    "2 3 0\n"
    "3 0 4\n"
    "EOF\n";

std::string expect_parse_error(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return {};
}

}  // namespace

TEST(Tsplib, ParsesMinimalEuclideanDocument) {
  const auto inst = parse_instance(kTriangle);
  EXPECT_EQ(inst.name(), "tri3");
  EXPECT_EQ(inst.dimension(), 3);
  EXPECT_EQ(inst.weight_type(), EdgeWeightType::kEuc2D);
  EXPECT_EQ(inst.distance(0, 1), 3);
  EXPECT_EQ(inst.distance(0, 2), 4);
  EXPECT_EQ(inst.distance(1, 2), 5);
}

TEST(Tsplib, Euc2dUsesNearestIntegerRounding) {
  EXPECT_EQ(euc2d_distance({0, 0}, {3, 4}), 5);
  EXPECT_EQ(euc2d_distance({0, 0}, {1, 1}), 1);
  EXPECT_EQ(euc2d_distance({0, 0}, {1, 2}), 2);    // 2.236
  EXPECT_EQ(euc2d_distance({0, 0}, {0.5, 0}), 1);  // half rounds away from zero
  EXPECT_EQ(euc2d_distance({0, 0}, {2, 3}), 4);    // 3.606
}

TEST(Tsplib, BundledEil51Header) {
  const auto inst = resolve_instance("eil51");
  EXPECT_EQ(inst.name(), "eil51");
  EXPECT_EQ(inst.dimension(), 51);
  EXPECT_EQ(inst.weight_type(), EdgeWeightType::kEuc2D);
  EXPECT_EQ(inst.optimum(), 426);
  // first two nodes of the published file
  EXPECT_DOUBLE_EQ(inst.coordinates()[0].x, 37);
  EXPECT_DOUBLE_EQ(inst.coordinates()[0].y, 52);
  EXPECT_EQ(inst.distance(0, 1), 12);  // sqrt(144 + 9) = 12.37
}

TEST(Tsplib, BundledEil76Header) {
  const auto inst = resolve_instance("eil76");
  EXPECT_EQ(inst.dimension(), 76);
  EXPECT_EQ(inst.optimum(), 538);
}

TEST(Tsplib, MissingDimension) {
  const std::string doc =
      "NAME : x\nTYPE : TSP\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nEOF\n";
  EXPECT_NE(expect_parse_error(doc).find("missing header"), std::string::npos);
}

TEST(Tsplib, DuplicateHeader) {
  const std::string doc =
      "NAME : x\nNAME : y\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
      "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nEOF\n";
  EXPECT_NE(expect_parse_error(doc).find("duplicate header"), std::string::npos);
}

TEST(Tsplib, DimensionMismatch) {
  const std::string doc =
      "NAME : x\nTYPE : TSP\nDIMENSION : 4\nEDGE_WEIGHT_TYPE : EUC_2D\n"
      "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nEOF\n";
  EXPECT_NE(expect_parse_error(doc).find("dimension mismatch"), std::string::npos);
}

TEST(Tsplib, UnsupportedWeightType) {
  const std::string doc =
      "NAME : x\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : GEO\n"
      "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nEOF\n";
  EXPECT_NE(expect_parse_error(doc).find("unsupported EDGE_WEIGHT_TYPE"), std::string::npos);
}

TEST(Tsplib, NonNumericData) {
  const std::string doc =
      "NAME : x\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
      "NODE_COORD_SECTION\n1 0 0\n2 one 0\n3 0 1\nEOF\n";
  EXPECT_NE(expect_parse_error(doc).find("non-numeric"), std::string::npos);
}

TEST(Tsplib, AsymmetricTypeRejected) {
  const std::string doc =
      "NAME : x\nTYPE : ATSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
      "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nEOF\n";
  expect_parse_error(doc);
}

TEST(Tsplib, ExplicitMatrixMustBeSymmetric) {
  const std::string doc =
      "NAME : x\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EXPLICIT\n"
      "EDGE_WEIGHT_FORMAT : FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 1 2\n1 0 3\n2 4 0\nEOF\n";
  EXPECT_NE(expect_parse_error(doc).find("not symmetric"), std::string::npos);
}

TEST(Tsplib, Paper8Fixture) {
  const auto inst = fixture("paper8");
  ASSERT_TRUE(inst.has_value());
  EXPECT_EQ(inst->dimension(), 8);
  EXPECT_EQ(inst->distance(6, 7), 14);  // cities 7 and 8
  EXPECT_EQ(inst->distance(0, 1), 12);
  EXPECT_EQ(inst->distance(0, 7), 12);
  EXPECT_EQ(inst->optimum(), 138);
  EXPECT_FALSE(fixture("nope").has_value());
}

TEST(Tsplib, Paper8OptimumMatchesEnumeration) {
  const auto inst = *fixture("paper8");
  const auto ex = oracle::exhaustive_optimum(inst);
  EXPECT_EQ(ex.distinct_tours, 2520);
  EXPECT_EQ(ex.optimum, 138);
}

TEST(Tsplib, DistanceIsSymmetricWithZeroDiagonal) {
  RandomStream rng(5);
  const auto random = oracle::random_euclidean(30, rng);
  for (const auto& inst : {*fixture("paper8"), random, resolve_instance("eil51")}) {
    for (int i = 0; i < inst.dimension(); ++i) {
      EXPECT_EQ(inst.distance(i, i), 0);
      for (int j = 0; j < inst.dimension(); ++j) {
        ASSERT_EQ(inst.distance(i, j), inst.distance(j, i));
        ASSERT_GE(inst.distance(i, j), 0);
      }
    }
  }
}

TEST(Tsplib, DistanceRangeChecked) {
  const auto inst = *fixture("paper8");
  EXPECT_THROW(inst.distance(-1, 0), std::out_of_range);
  EXPECT_THROW(inst.distance(0, 8), std::out_of_range);
}

TEST(Tsplib, FullMatrixRoundTrip) {
  RandomStream rng(11);
  for (const auto& inst : {*fixture("paper8"), oracle::random_euclidean(17, rng)}) {
    const auto text = write_full_matrix(inst);
    const auto back = parse_instance(text);
    ASSERT_EQ(back.dimension(), inst.dimension());
    EXPECT_EQ(back.weight_type(), EdgeWeightType::kExplicit);
    for (int i = 0; i < inst.dimension(); ++i) {
      for (int j = 0; j < inst.dimension(); ++j) ASSERT_EQ(back.distance(i, j), inst.distance(i, j));
    }
  }
}

TEST(Tsplib, KnownOptima) {
  EXPECT_EQ(known_optimum("eil51"), 426);
  EXPECT_EQ(known_optimum("eil76"), 538);
  EXPECT_EQ(known_optimum("kroA100"), 21282);
  EXPECT_EQ(known_optimum("kroA200"), 29368);
  EXPECT_EQ(known_optimum("a280"), 2579);
  EXPECT_EQ(known_optimum("lin318"), 42029);
  EXPECT_FALSE(known_optimum("unknown").has_value());
}

TEST(Tsplib, ResolveByPathAndFailure) {
  const auto dir = std::filesystem::temp_directory_path() / "tspga_test_resolve";
  std::filesystem::create_directories(dir);
  const auto path = dir / "tri3.tsp";
  std::ofstream(path) << kTriangle;
  EXPECT_EQ(resolve_instance(path.string()).dimension(), 3);
  EXPECT_THROW(resolve_instance((dir / "absent.tsp").string()), InstanceIoError);
  EXPECT_THROW(load_instance(dir / "absent.tsp"), InstanceIoError);
  std::filesystem::remove_all(dir);
}
