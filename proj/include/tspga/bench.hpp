#pragma once

/// @file bench.hpp
/// @brief Multi-run experiment harness and CSV / Markdown report emission.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tspga/crossover.hpp"
#include "tspga/ga.hpp"

namespace tspga {

/// One (instance x crossover) cell. Quality fields are rounded to two
/// decimals and empty when the instance has no known optimum.
struct BenchRow {
  std::string instance;
  std::string crossover;
  std::int64_t best = 0;
  std::optional<double> best_q;
  double avg = 0.0;
  std::optional<double> avg_q;
  std::int64_t worst = 0;
  std::optional<double> worst_q;
  double while_loops = 0.0;  ///< mean over runs
  double seconds = 0.0;      ///< mean wall time per run
  int runs = 0;
  std::uint64_t seed = 0;  ///< seed base; run r uses seed + r
  std::optional<std::string> error;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchmarkReport {
  std::vector<BenchRow> rows;
};

struct BenchOptions {
  int runs = 10;
  int workers = 1;
  /// Invoked after every finished GA run (from worker threads, serialized).
  std::function<void(const std::string& instance, const std::string& crossover, int run,
                     const GaResult&)>
      on_run;
};

/// Runs `options.runs` seeded GA runs (seed = cfg.seed + run index) for every
/// instance x crossover cell; cfg.crossover is ignored. Instances are given
/// as fixture names, bundled names or paths; one that fails to load yields
/// error rows for its cells. Rows are ordered by instance, then crossover,
/// in argument order.
BenchmarkReport run_benchmark(std::span<const std::string> instances,
                              std::span<const CrossoverSpec> crossovers, const GaConfig& cfg,
                              const BenchOptions& options);

/// Aggregates finished runs of one cell into a row.
BenchRow summarize(std::string instance, std::string crossover,
                   std::span<const GaResult> results, std::optional<std::int64_t> optimum,
                   std::uint64_t seed_base);

enum class ReportFormat { kCsv, kMarkdown };

/// "csv" or "markdown"/"md"; throws std::invalid_argument("unknown format").
ReportFormat parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "instance,crossover,best,best_q,avg,avg_q,worst,worst_q,while_loops,seconds,runs,seed";

/// Throws std::invalid_argument for an empty report.
std::string emit_report(const BenchmarkReport& report, ReportFormat format);

/// Inverse of the CSV emitter.
BenchmarkReport parse_csv_report(std::string_view csv);

}  // namespace tspga
