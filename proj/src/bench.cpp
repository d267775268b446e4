#include "tspga/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tspga {
namespace {

std::string shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string opt_quality(const std::optional<double>& q) { return q ? shortest(*q) : ""; }

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
T parse_field(const std::string& s, const char* column) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("bad CSV value in column ") + column + ": '" + s + "'");
  }
  return value;
}

std::optional<double> parse_optional(const std::string& s, const char* column) {
  if (s.empty()) return std::nullopt;
  return parse_field<double>(s, column);
}

std::string length_cell(double length, const std::optional<double>& q) {
  std::string out = shortest(round2(length));
  if (q) out += "(" + format_quality(*q) + ")";
  return out;
}

}  // namespace

BenchRow summarize(std::string instance, std::string crossover,
                   std::span<const GaResult> results, std::optional<std::int64_t> optimum,
                   std::uint64_t seed_base) {
  if (results.empty()) throw std::invalid_argument("summarize: no runs");
  BenchRow row;
  row.instance = std::move(instance);
  row.crossover = std::move(crossover);
  row.runs = static_cast<int>(results.size());
  row.seed = seed_base;
  row.best = results.front().best_length;
  row.worst = results.front().best_length;
  std::int64_t total = 0;
  std::int64_t loops = 0;
  double seconds = 0.0;
  for (const auto& r : results) {
    row.best = std::min(row.best, r.best_length);
    row.worst = std::max(row.worst, r.best_length);
    total += r.best_length;
    loops += r.while_loop_count;
    seconds += r.elapsed_seconds;
  }
  const double runs = static_cast<double>(results.size());
  row.avg = static_cast<double>(total) / runs;
  row.while_loops = static_cast<double>(loops) / runs;
  row.seconds = seconds / runs;
  if (optimum) {
    row.best_q = round2(quality_percent(row.best, *optimum));
    row.worst_q = round2(quality_percent(row.worst, *optimum));
    row.avg_q = round2((row.avg - static_cast<double>(*optimum)) / static_cast<double>(*optimum) * 100.0);
  }
  return row;
}

BenchmarkReport run_benchmark(std::span<const std::string> instances,
                              std::span<const CrossoverSpec> crossovers, const GaConfig& cfg,
                              const BenchOptions& options) {
  validate(cfg);
  if (options.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (options.workers < 1) throw std::invalid_argument("workers must be >= 1");

  struct Loaded {
    std::optional<Instance> instance;
    std::string label;
    std::string error;
  };
  std::vector<Loaded> loaded;
  for (const auto& ref : instances) {
    Loaded l;
    l.label = ref;
    try {
      l.instance = resolve_instance(ref);
      l.label = l.instance->name();
    } catch (const std::exception& e) {
      l.error = e.what();
    }
    loaded.push_back(std::move(l));
  }

  struct Task {
    std::size_t instance;
    std::size_t crossover;
    int run;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    if (!loaded[i].instance) continue;
    for (std::size_t c = 0; c < crossovers.size(); ++c) {
      for (int r = 0; r < options.runs; ++r) tasks.push_back({i, c, r});
    }
  }

  std::vector<GaResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const auto& task = tasks[t];
      GaConfig run_cfg = cfg;
      run_cfg.crossover = crossovers[task.crossover];
      run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(task.run);
      try {
        results[t] = run_ga(run_cfg, *loaded[task.instance].instance);
      } catch (...) {
        std::lock_guard lock(callback_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
      if (options.on_run) {
        std::lock_guard lock(callback_mutex);
        options.on_run(loaded[task.instance].label, crossovers[task.crossover].name(), task.run,
                       results[t]);
      }
    }
  };
  const int nthreads = std::min<int>(options.workers, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  BenchmarkReport report;
  std::size_t t = 0;
  for (const auto& l : loaded) {
    for (const auto& spec : crossovers) {
      if (!l.instance) {
        BenchRow row;
        row.instance = l.label;
        row.crossover = spec.name();
        row.seed = cfg.seed;
        row.error = l.error;
        report.rows.push_back(std::move(row));
        continue;
      }
      std::span<const GaResult> cell(results.data() + t, static_cast<std::size_t>(options.runs));
      t += static_cast<std::size_t>(options.runs);
      report.rows.push_back(summarize(l.label, spec.name(), cell, l.instance->optimum(), cfg.seed));
    }
  }
  return report;
}

ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  throw std::invalid_argument("unknown format: '" + std::string(name) + "'");
}

std::string emit_report(const BenchmarkReport& report, ReportFormat format) {
  if (report.rows.empty()) throw std::invalid_argument("emit_report: empty report");
  std::ostringstream out;
  if (format == ReportFormat::kCsv) {
    out << kCsvHeader << "\n";
    for (const auto& r : report.rows) {
      out << csv_field(r.instance) << ',' << csv_field(r.crossover) << ',';
      if (r.error) {
        out << ",,,,,,,,0," << r.seed << "\n";
        continue;
      }
      out << r.best << ',' << opt_quality(r.best_q) << ',' << shortest(r.avg) << ','
          << opt_quality(r.avg_q) << ',' << r.worst << ',' << opt_quality(r.worst_q) << ','
          << shortest(r.while_loops) << ',' << shortest(r.seconds) << ',' << r.runs << ','
          << r.seed << "\n";
    }
    return out.str();
  }

  out << "| Problem | Crossover | Best length (quality) | Average length (quality) "
         "| Worst length (quality) | While loops | Time (s) |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : report.rows) {
    out << "| " << r.instance << " | " << r.crossover << " | ";
    if (r.error) {
      out << "error: " << *r.error << " | | | | |\n";
      continue;
    }
    out << length_cell(static_cast<double>(r.best), r.best_q) << " | "
        << length_cell(r.avg, r.avg_q) << " | "
        << length_cell(static_cast<double>(r.worst), r.worst_q) << " | "
        << shortest(std::round(r.while_loops * 10.0) / 10.0) << " | "
        << shortest(std::round(r.seconds * 1000.0) / 1000.0) << " |\n";
  }
  return out.str();
}

BenchmarkReport parse_csv_report(std::string_view csv) {
  BenchmarkReport report;
  std::size_t start = 0;
  bool header = true;
  while (start < csv.size()) {
    auto end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    const auto line = csv.substr(start, end - start);
    start = end + 1;
    if (line.empty() || line == "\r") continue;
    if (header) {
      std::string h(line);
      if (!h.empty() && h.back() == '\r') h.pop_back();
      if (h != kCsvHeader) throw std::invalid_argument("unexpected CSV header");
      header = false;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 12) throw std::invalid_argument("CSV row needs 12 fields");
    BenchRow r;
    r.instance = f[0];
    r.crossover = f[1];
    r.seed = parse_field<std::uint64_t>(f[11], "seed");
    if (f[2].empty()) {
      r.error = "run failed";
      report.rows.push_back(std::move(r));
      continue;
    }
    r.best = parse_field<std::int64_t>(f[2], "best");
    r.best_q = parse_optional(f[3], "best_q");
    r.avg = parse_field<double>(f[4], "avg");
    r.avg_q = parse_optional(f[5], "avg_q");
    r.worst = parse_field<std::int64_t>(f[6], "worst");
    r.worst_q = parse_optional(f[7], "worst_q");
    r.while_loops = parse_field<double>(f[8], "while_loops");
    r.seconds = parse_field<double>(f[9], "seconds");
    r.runs = parse_field<int>(f[10], "runs");
    report.rows.push_back(std::move(r));
  }
  if (header) throw std::invalid_argument("missing CSV header");
  return report;
}

}  // namespace tspga
