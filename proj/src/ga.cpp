#include "tspga/ga.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <unordered_set>

namespace tspga {
namespace {

struct OrderHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (int c : v) {
      h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

std::vector<std::int64_t> sorted_lengths(const Population& pop) {
  std::vector<std::int64_t> lengths;
  lengths.reserve(pop.size());
  for (const auto& ind : pop) lengths.push_back(ind.length);
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

}  // namespace

void validate(const GaConfig& cfg) {
  if (cfg.population_size < 2) throw std::invalid_argument("population_size must be >= 2");
  if (cfg.generation_size < 1) throw std::invalid_argument("generation_size must be >= 1");
  if (cfg.neighbor_k < 1) throw std::invalid_argument("neighbor_k must be >= 1");
  if (cfg.max_while_iterations && *cfg.max_while_iterations < 1) {
    throw std::invalid_argument("max_while_iterations must be >= 1");
  }
}

std::pair<int, int> select_parents(int population_size, RandomStream& rng) {
  if (population_size < 2) throw std::invalid_argument("select_parents: population too small");
  const int first = rng.index(population_size);
  int second = rng.index(population_size - 1);
  if (second >= first) ++second;
  return {first, second};
}

Reduction reduce_population(const Population& current, Population children, int population_size) {
  Population pool;
  pool.reserve(current.size() + children.size());
  pool.insert(pool.end(), current.begin(), current.end());
  for (auto& c : children) pool.push_back(std::move(c));
  if (pool.empty()) throw std::invalid_argument("reduce_population: empty pool");
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Individual& a, const Individual& b) { return a.length < b.length; });

  const auto target = static_cast<std::size_t>(population_size);
  Population survivors;
  Population duplicates;
  std::unordered_set<std::vector<int>, OrderHash> seen;
  for (auto& ind : pool) {
    if (survivors.size() == target) break;
    if (seen.insert(canonical(ind.tour).cities()).second) {
      survivors.push_back(std::move(ind));
    } else {
      duplicates.push_back(std::move(ind));
    }
  }
  for (std::size_t i = 0; survivors.size() < target && i < duplicates.size(); ++i) {
    survivors.push_back(std::move(duplicates[i]));
  }
  std::stable_sort(survivors.begin(), survivors.end(),
                   [](const Individual& a, const Individual& b) { return a.length < b.length; });

  Reduction out;
  out.changed = sorted_lengths(survivors) != sorted_lengths(current);
  out.population = std::move(survivors);
  return out;
}

GaResult run_ga(const GaConfig& cfg, const Instance& inst, const ProgressCallback& progress) {
  validate(cfg);
  const auto started = std::chrono::steady_clock::now();
  const int n = inst.dimension();

  RandomStream rng(cfg.seed);
  const NeighborLists nl(inst, cfg.neighbor_k);

  Population population;
  population.reserve(static_cast<std::size_t>(cfg.population_size));
  for (int i = 0; i < cfg.population_size; ++i) {
    Tour t = Tour::random(n, rng);
    const auto len = tour_length(t, inst);
    population.push_back({std::move(t), len});
  }

  GaResult result;
  while (true) {
    ++result.while_loop_count;
    Population children;
    children.reserve(static_cast<std::size_t>(cfg.generation_size));
    for (int g = 0; g < cfg.generation_size; ++g) {
      const auto [fi, mi] = select_parents(static_cast<int>(population.size()), rng);
      Tour child = recombine(cfg.crossover, population[fi].tour, population[mi].tour, inst, rng);
      child = two_opt_ls(std::move(child), inst, nl);
      child = three_opt_ls(std::move(child), inst, nl);
      const auto len = tour_length(child, inst);
      children.push_back({std::move(child), len});
    }
    result.generations_evaluated += cfg.generation_size;

    auto reduced = reduce_population(population, std::move(children), cfg.population_size);
    population = std::move(reduced.population);
    if (progress) {
      progress({result.while_loop_count, population.front().length, population.back().length,
                reduced.changed});
    }
    if (!reduced.changed) break;
    if (cfg.max_while_iterations && result.while_loop_count >= *cfg.max_while_iterations) {
      result.hit_iteration_cap = true;
      break;
    }
  }

  result.best_tour = population.front().tour;
  result.best_length = population.front().length;
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace tspga
