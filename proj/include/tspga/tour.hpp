#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tspga/random.hpp"
#include "tspga/tsplib.hpp"

namespace tspga {

/// A Hamiltonian cycle stored as a sequence of 0-based city indices. The
/// last city connects back to the first.
///
/// Tour does not enforce the permutation invariant on construction; the
/// operators guarantee it and validate_tour() checks it.
class Tour {
 public:
  Tour() = default;
  explicit Tour(std::vector<int> order) : order_(std::move(order)) {}

  static Tour identity(int n);
  static Tour random(int n, RandomStream& rng);

  int size() const { return static_cast<int>(order_.size()); }
  int operator[](int i) const { return order_[static_cast<std::size_t>(i)]; }
  std::span<const int> order() const { return order_; }
  const std::vector<int>& cities() const { return order_; }
  auto begin() const { return order_.begin(); }
  auto end() const { return order_.end(); }

  /// Exact sequence equality. Use cyclically_equal() for tour identity.
  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  std::vector<int> order_;
};

std::int64_t tour_length(const Tour& t, const Instance& inst);

struct TourViolation {
  enum class Kind { kOutOfRange, kDuplicated, kMissing };
  Kind kind;
  int city;  // 0-based

  friend bool operator==(const TourViolation&, const TourViolation&) = default;
};

/// Checks that `order` is a permutation of 0..n-1. Reports the first
/// out-of-range or duplicated entry in sequence order, otherwise the lowest
/// missing city.
std::optional<TourViolation> validate_tour(std::span<const int> order, int n);
inline std::optional<TourViolation> validate_tour(const Tour& t, int n) {
  return validate_tour(t.order(), n);
}

/// "city 2 duplicated" etc., 1-based.
std::string describe(const TourViolation& v);

/// (cost - optimum) / optimum * 100, unrounded. Throws std::invalid_argument
/// when optimum <= 0.
double quality_percent(std::int64_t cost, std::int64_t optimum);

/// Rounds half away from zero to two decimals.
double round2(double value);

/// Shortest decimal text that round-trips `value` after rounding it to two
/// decimals: 1.88, 0, 101.3.
std::string format_quality(double value);

/// Undirected edge with a < b.
struct Edge {
  int a;
  int b;

  Edge(int u, int v) : a(u < v ? u : v), b(u < v ? v : u) {}
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted, duplicate-free set of undirected edges.
using EdgeSet = std::vector<Edge>;

EdgeSet tour_edges(const Tour& t);

/// Edges present in both tours. Throws std::invalid_argument on size mismatch.
EdgeSet common_edges(const Tour& a, const Tour& b);

/// True iff b is a rotation or a reflection of a.
bool cyclically_equal(const Tour& a, const Tour& b);

/// Representative of the tour's rotation/reflection class: starts at city 0
/// and continues towards the smaller of its two neighbours.
Tour canonical(const Tour& t);

/// Rotation of t that starts at `city`.
Tour rotate_to(const Tour& t, int city);

/// 1-based dash-separated rendering, e.g. "1-4-8-6-5-3-7-2".
std::string format_tour(const Tour& t);

/// Parses 1-based city lists separated by '-', ',' or whitespace.
/// Throws std::invalid_argument on malformed text.
Tour parse_tour(std::string_view text);

}  // namespace tspga
