#pragma once

/// @file tsplib.hpp
/// @brief TSPLIB instance parsing and integer distance lookup.
///
/// Supported documents are symmetric TSP instances with EDGE_WEIGHT_TYPE
/// EUC_2D (NODE_COORD_SECTION) or EXPLICIT with EDGE_WEIGHT_FORMAT
/// FULL_MATRIX (EDGE_WEIGHT_SECTION). City indices are 0-based in the API
/// and 1-based in every textual format.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tspga {

/// Raised for malformed or unsupported TSPLIB input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an instance file cannot be read.
class InstanceIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EdgeWeightType { kEuc2D, kExplicit };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// TSPLIB nint(sqrt(dx^2 + dy^2)).
int euc2d_distance(const Point& a, const Point& b);

/// An immutable symmetric TSP instance with a precomputed distance matrix.
class Instance {
 public:
  static Instance from_coordinates(std::string name, std::vector<Point> coords,
                                   std::optional<std::int64_t> optimum = std::nullopt);
  /// `weights` is row-major, dimension x dimension.
  static Instance from_matrix(std::string name, int dimension, std::vector<int> weights,
                              std::optional<std::int64_t> optimum = std::nullopt);

  const std::string& name() const { return name_; }
  int dimension() const { return dimension_; }
  EdgeWeightType weight_type() const { return type_; }
  std::span<const Point> coordinates() const { return coords_; }
  std::optional<std::int64_t> optimum() const { return optimum_; }
  void set_optimum(std::optional<std::int64_t> optimum) { optimum_ = optimum; }

  /// Bounds-checked distance; throws std::out_of_range.
  int distance(int i, int j) const;

  /// Unchecked distance for inner loops.
  int operator()(int i, int j) const noexcept {
    return matrix_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dimension_) +
                   static_cast<std::size_t>(j)];
  }

 private:
  Instance() = default;

  std::string name_;
  int dimension_ = 0;
  EdgeWeightType type_ = EdgeWeightType::kExplicit;
  std::vector<Point> coords_;
  std::vector<int> matrix_;
  std::optional<std::int64_t> optimum_;
};

Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

/// Serializes as an EXPLICIT / FULL_MATRIX document.
std::string write_full_matrix(const Instance& inst);

/// Published optimum tour lengths for the TSPLIB instances used by the
/// benchmark, keyed by instance NAME.
std::optional<std::int64_t> known_optimum(std::string_view name);

/// Built-in instances addressable by name. Currently only "paper8", the
/// 8-city worked-example graph.
std::optional<Instance> fixture(std::string_view name);
std::vector<std::string> fixture_names();

/// Resolves a fixture name, a bundled instance name (e.g. "eil51", looked up
/// in the data directories) or a file path.
Instance resolve_instance(std::string_view ref);

/// Directories searched by resolve_instance for "<name>.tsp". Includes the
/// TSPGA_DATA_DIR environment variable and the compiled-in data directory.
std::vector<std::filesystem::path> instance_search_path();

}  // namespace tspga
