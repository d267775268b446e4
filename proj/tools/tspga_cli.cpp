// Command-line front end: bench, solve and xover-demo.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tspga/bench.hpp"
#include "tspga/crossover.hpp"
#include "tspga/ga.hpp"
#include "tspga/tour.hpp"
#include "tspga/tsplib.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 1;
constexpr int kExitInstanceIo = 2;

struct BadArgs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<tspga::CrossoverSpec> parse_crossovers(const std::vector<std::string>& names) {
  if (names.empty()) return tspga::CrossoverSpec::benchmark_set();
  std::vector<tspga::CrossoverSpec> specs;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& s : tspga::CrossoverSpec::benchmark_set()) specs.push_back(s);
    } else {
      specs.push_back(tspga::CrossoverSpec::parse(n));
    }
  }
  return specs;
}

tspga::Tour parse_parent(const std::string& text, int n, const char* which) {
  auto t = tspga::parse_tour(text);
  if (auto v = tspga::validate_tour(t, n)) {
    throw BadArgs(std::string(which) + " is not a tour of the instance: " + tspga::describe(*v));
  }
  return t;
}

void print_progress(const tspga::GaProgress& p) {
  nlohmann::json j{{"event", "iteration"},
                   {"iteration", p.iteration},
                   {"best", p.best_length},
                   {"worst", p.worst_length},
                   {"changed", p.changed}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossover comparison for the symmetric TSP: GA with 2-opt/3-opt local search"};
  app.require_subcommand(1);

  // bench
  std::vector<std::string> bench_instances;
  std::vector<std::string> bench_crossovers;
  tspga::GaConfig bench_cfg;
  int bench_runs = 10;
  int bench_workers = 1;
  int bench_cap = 0;
  std::string bench_format = "csv";
  std::string bench_out;
  bool bench_verbose = false;
  auto* bench = app.add_subcommand("bench", "Run the crossover comparison and emit a report");
  bench->add_option("--instances", bench_instances, "Instance files, bundled names or fixtures")
      ->required()
      ->delimiter(',');
  bench->add_option("--crossovers", bench_crossovers, "Crossover names (default: all nine)")
      ->delimiter(',');
  bench->add_option("--pop", bench_cfg.population_size, "Population size")->capture_default_str();
  bench->add_option("--gen", bench_cfg.generation_size, "Children per while iteration")
      ->capture_default_str();
  bench->add_option("--runs", bench_runs, "Runs per cell")->capture_default_str();
  bench->add_option("--seed", bench_cfg.seed, "Seed base; run r uses seed + r")
      ->capture_default_str();
  bench->add_option("--neighbors", bench_cfg.neighbor_k, "Neighbor list size for local search")
      ->capture_default_str();
  bench->add_option("--format", bench_format, "csv or markdown")->capture_default_str();
  bench->add_option("--out", bench_out, "Output file (default: stdout)");
  bench->add_option("--workers", bench_workers, "Concurrent GA runs")->capture_default_str();
  bench->add_option("--max-iterations", bench_cap, "Safety cap on while iterations (0 = none)");
  bench->add_flag("--verbose,-v", bench_verbose, "Log one JSON line per finished run to stderr");

  // solve
  std::string solve_instance;
  std::string solve_crossover = "UHX";
  tspga::GaConfig solve_cfg;
  int solve_cap = 0;
  bool solve_verbose = false;
  auto* solve = app.add_subcommand("solve", "Run the GA once and print the best tour");
  solve->add_option("--instance", solve_instance, "Instance file, bundled name or fixture")
      ->required();
  solve->add_option("--crossover", solve_crossover, "Crossover name")->capture_default_str();
  solve->add_option("--seed", solve_cfg.seed, "Seed")->capture_default_str();
  solve->add_option("--pop", solve_cfg.population_size, "Population size")->capture_default_str();
  solve->add_option("--gen", solve_cfg.generation_size, "Children per while iteration")
      ->capture_default_str();
  solve->add_option("--neighbors", solve_cfg.neighbor_k, "Neighbor list size")
      ->capture_default_str();
  solve->add_option("--max-iterations", solve_cap, "Safety cap on while iterations (0 = none)");
  solve->add_flag("--verbose,-v", solve_verbose, "Log progress events as JSON lines to stderr");

  // xover-demo
  std::string demo_op;
  std::string demo_father;
  std::string demo_mother;
  std::string demo_instance = "paper8";
  std::optional<int> demo_start;
  std::optional<int> demo_point;
  std::optional<int> demo_cut1;
  std::optional<int> demo_cut2;
  std::uint64_t demo_seed = 1;
  auto* demo = app.add_subcommand("xover-demo", "Apply one crossover and print its trace");
  demo->add_option("--op", demo_op, "Crossover name")->required();
  demo->add_option("--father", demo_father, "Father tour, e.g. 4-5-7-3-1-2-6-8")->required();
  demo->add_option("--mother", demo_mother, "Mother tour")->required();
  demo->add_option("--start", demo_start, "Start city (1-based) for GX, UHX, GSX");
  demo->add_option("--point", demo_point, "EPMX cut point");
  demo->add_option("--cut1", demo_cut1, "PMX first cut position (0-based)");
  demo->add_option("--cut2", demo_cut2, "PMX second cut position (exclusive)");
  demo->add_option("--seed", demo_seed, "Seed for random choices")->capture_default_str();
  demo->add_option("--instance", demo_instance, "Instance file, bundled name or fixture")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadArgs;
  }

  try {
    if (*bench) {
      const auto format = tspga::parse_format(bench_format);
      const auto specs = parse_crossovers(bench_crossovers);
      if (bench_cap > 0) bench_cfg.max_while_iterations = bench_cap;
      tspga::validate(bench_cfg);
      tspga::BenchOptions options;
      options.runs = bench_runs;
      options.workers = bench_workers;
      if (bench_verbose) {
        options.on_run = [](const std::string& inst, const std::string& xo, int run,
                            const tspga::GaResult& r) {
          nlohmann::json j{{"event", "run"},          {"instance", inst},
                           {"crossover", xo},         {"run", run},
                           {"best", r.best_length},   {"while_loops", r.while_loop_count},
                           {"seconds", r.elapsed_seconds}};
          std::cerr << j.dump() << "\n";
        };
      }
      const auto report = tspga::run_benchmark(bench_instances, specs, bench_cfg, options);
      const auto text = tspga::emit_report(report, format);
      if (bench_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(bench_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + bench_out);
        out << text;
      }
      bool any_error = false;
      for (const auto& row : report.rows) {
        if (row.error) {
          std::cerr << "error: " << row.instance << " / " << row.crossover << ": " << *row.error
                    << "\n";
          any_error = true;
        }
      }
      return any_error ? kExitInstanceIo : kExitOk;
    }

    if (*solve) {
      const auto inst = tspga::resolve_instance(solve_instance);
      solve_cfg.crossover = tspga::CrossoverSpec::parse(solve_crossover);
      if (solve_cap > 0) solve_cfg.max_while_iterations = solve_cap;
      const auto result = tspga::run_ga(solve_cfg, inst,
                                        solve_verbose ? tspga::ProgressCallback(print_progress)
                                                      : tspga::ProgressCallback{});
      std::cout << "instance: " << inst.name() << "\n"
                << "crossover: " << solve_cfg.crossover.name() << "\n"
                << "length: " << result.best_length;
      if (auto opt = inst.optimum()) {
        std::cout << " (" << tspga::format_quality(tspga::quality_percent(result.best_length, *opt))
                  << "%)";
      }
      std::cout << "\n"
                << "while_loops: " << result.while_loop_count
                << (result.hit_iteration_cap ? " (cap reached)" : "") << "\n"
                << "seconds: " << result.elapsed_seconds << "\n"
                << "tour: " << tspga::format_tour(result.best_tour) << "\n";
      return kExitOk;
    }

    if (*demo) {
      const auto inst = tspga::resolve_instance(demo_instance);
      const int n = inst.dimension();
      const auto spec = tspga::CrossoverSpec::parse(demo_op);
      const auto father = parse_parent(demo_father, n, "father");
      const auto mother = parse_parent(demo_mother, n, "mother");
      tspga::RandomStream rng(demo_seed);
      tspga::Trace trace;
      std::vector<tspga::Tour> children;

      auto start = [&]() {
        if (!demo_start) return rng.index(n);
        if (*demo_start < 1 || *demo_start > n) throw BadArgs("--start must be in 1..n");
        return *demo_start - 1;
      };

      switch (spec.kind()) {
        case tspga::CrossoverKind::kPmx: {
          if (!demo_cut1 || !demo_cut2) throw BadArgs("PMX needs --cut1 and --cut2");
          auto [a, b] = tspga::pmx(father, mother, *demo_cut1, *demo_cut2, &trace);
          children = {a, b};
          break;
        }
        case tspga::CrossoverKind::kEpmx: {
          if (!demo_point) throw BadArgs("EPMX needs --point");
          auto [a, b] = tspga::epmx(father, mother, *demo_point, &trace);
          children = {a, b};
          break;
        }
        case tspga::CrossoverKind::kGx:
          children = {tspga::gx(*spec.gx_variant(), father, mother, start(), inst, rng, &trace)};
          break;
        case tspga::CrossoverKind::kUhx:
          children = {tspga::uhx(father, mother, start(), inst, &trace)};
          break;
        case tspga::CrossoverKind::kGsx:
          children = {tspga::gsx(*spec.gsx_version(), father, mother, start(), rng, &trace)};
          break;
        case tspga::CrossoverKind::kDpx:
          children = {tspga::dpx(father, mother, inst, &trace)};
          break;
      }
      for (std::size_t i = 0; i < children.size(); ++i) {
        std::cout << "child" << (children.size() > 1 ? std::to_string(i + 1) : std::string())
                  << ": " << tspga::format_tour(children[i])
                  << " (length " << tspga::tour_length(children[i], inst) << ")\n";
      }
      std::cout << "\n" << tspga::format_trace(trace);
      return kExitOk;
    }
  } catch (const tspga::InstanceIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInstanceIo;
  } catch (const tspga::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInstanceIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const BadArgs& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
  return kExitOk;
}
