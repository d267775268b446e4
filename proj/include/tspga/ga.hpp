#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tspga/crossover.hpp"
#include "tspga/local_search.hpp"
#include "tspga/random.hpp"
#include "tspga/tour.hpp"
#include "tspga/tsplib.hpp"

namespace tspga {

struct GaConfig {
  int population_size = 50;
  int generation_size = 500;
  CrossoverSpec crossover = CrossoverSpec::uhx();
  int neighbor_k = 8;
  std::uint64_t seed = 1;
  /// Stops the while loop after this many iterations if set.
  std::optional<int> max_while_iterations;
};

/// Throws std::invalid_argument if the config violates its invariants.
void validate(const GaConfig& cfg);

struct Individual {
  Tour tour;
  std::int64_t length = 0;
};

using Population = std::vector<Individual>;

struct GaResult {
  Tour best_tour;
  std::int64_t best_length = 0;
  int while_loop_count = 0;
  double elapsed_seconds = 0.0;
  std::int64_t generations_evaluated = 0;  ///< children produced in total
  bool hit_iteration_cap = false;
};

struct GaProgress {
  int iteration = 0;
  std::int64_t best_length = 0;
  std::int64_t worst_length = 0;
  bool changed = false;
};

using ProgressCallback = std::function<void(const GaProgress&)>;

/// Two distinct member indices drawn uniformly without replacement, in draw
/// order. Throws std::invalid_argument when fewer than two members.
std::pair<int, int> select_parents(int population_size, RandomStream& rng);

struct Reduction {
  Population population;
  bool changed = false;
};

/// Pools `current` and `children`, orders by ascending length (stable, so
/// earlier entries win ties), drops cyclic duplicates and keeps the best
/// `population_size`. If fewer unique tours exist, the best dropped
/// duplicates fill the remaining places. `changed` reports whether the
/// sorted multiset of lengths differs from `current`'s.
Reduction reduce_population(const Population& current, Population children, int population_size);

/// The generational loop: random initial population, then repeated rounds of
/// `generation_size` children (selection, crossover, 2-opt, 3-opt) followed
/// by reduction, for as long as the population keeps changing.
GaResult run_ga(const GaConfig& cfg, const Instance& inst, const ProgressCallback& progress = {});

}  // namespace tspga
