#pragma once

/// @file crossover.hpp
/// @brief The crossover operators compared by the benchmark: PMX, EPMX, the
/// greedy family (GX[2], GX[3][4], GX[5], VGX), UHX, GSX-0/1/2 and DPX.
///
/// Every operator is a pure function of its parents, its explicit variant
/// parameters, the instance distances and (where randomness is involved) the
/// caller's RandomStream. Operators that make step-wise choices can record a
/// step table into an optional Trace.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tspga/random.hpp"
#include "tspga/tour.hpp"
#include "tspga/tsplib.hpp"

namespace tspga {

enum class CrossoverKind { kPmx, kEpmx, kGx, kUhx, kGsx, kDpx };

enum class GxVariant {
  kGx2,   ///< parental successors, random fallback
  kGx34,  ///< parental successors, nearest-unvisited fallback
  kGx5,   ///< successors and predecessors, random fallback
  kVgx,   ///< successors and predecessors, nearest-unvisited fallback
};

/// Operator plus the variant fields its kind requires.
class CrossoverSpec {
 public:
  static CrossoverSpec pmx() { return CrossoverSpec(CrossoverKind::kPmx); }
  static CrossoverSpec epmx() { return CrossoverSpec(CrossoverKind::kEpmx); }
  static CrossoverSpec uhx() { return CrossoverSpec(CrossoverKind::kUhx); }
  static CrossoverSpec dpx() { return CrossoverSpec(CrossoverKind::kDpx); }
  static CrossoverSpec gx(GxVariant variant);
  static CrossoverSpec gsx(int version);

  /// Accepts the display names (case-insensitive): PMX, EPMX, GX[2], GX2,
  /// GX[3][4], GX34, GX[5], GX5, VGX, UHX, GSX-0, GSX-1, GSX-2, DPX.
  /// Throws std::invalid_argument for anything else.
  static CrossoverSpec parse(std::string_view name);

  /// The nine operators of the comparison, in table order.
  static std::vector<CrossoverSpec> benchmark_set();

  CrossoverKind kind() const { return kind_; }
  std::optional<GxVariant> gx_variant() const { return gx_variant_; }
  std::optional<int> gsx_version() const { return gsx_version_; }
  bool produces_two_children() const {
    return kind_ == CrossoverKind::kPmx || kind_ == CrossoverKind::kEpmx;
  }

  /// Display name, e.g. "GX[3][4]" or "GSX-2".
  std::string name() const;

  friend bool operator==(const CrossoverSpec&, const CrossoverSpec&) = default;

 private:
  explicit CrossoverSpec(CrossoverKind kind) : kind_(kind) {}

  CrossoverKind kind_;
  std::optional<GxVariant> gx_variant_;
  std::optional<int> gsx_version_;
};

/// One row of an operator's step table. `candidates` are 0-based cities and
/// may be empty for operators without a candidate set.
struct TraceStep {
  int step = 0;
  std::vector<int> candidates;
  int chosen = -1;
  std::string note;
};

using Trace = std::vector<TraceStep>;

/// Renders a trace as a text table with 1-based cities.
std::string format_trace(const Trace& trace);

/// Classic two-point PMX. Child 1 takes the mother's segment [cut1, cut2)
/// inside the father's remaining cities, child 2 the converse; conflicts are
/// repaired through the segment mapping chains.
/// Requires 0 <= cut1 < cut2 <= n.
std::pair<Tour, Tour> pmx(const Tour& father, const Tour& mother, int cut1, int cut2,
                          Trace* trace = nullptr);

/// Extended PMX with a single cut point, 1 <= point <= n.
std::pair<Tour, Tour> epmx(const Tour& father, const Tour& mother, int point,
                           Trace* trace = nullptr);

Tour gx(GxVariant variant, const Tour& father, const Tour& mother, int start,
        const Instance& inst, RandomStream& rng, Trace* trace = nullptr);

Tour uhx(const Tour& father, const Tour& mother, int start, const Instance& inst,
         Trace* trace = nullptr);

/// version is 0, 1 or 2.
Tour gsx(int version, const Tour& father, const Tour& mother, int start, RandomStream& rng,
         Trace* trace = nullptr);

Tour dpx(const Tour& father, const Tour& mother, const Instance& inst, Trace* trace = nullptr);

/// Draws the operator's cut/start/point parameters from `rng`, applies it and
/// returns one child; two-child operators return the shorter child (the
/// first on a tie).
Tour recombine(const CrossoverSpec& spec, const Tour& father, const Tour& mother,
               const Instance& inst, RandomStream& rng);

}  // namespace tspga
