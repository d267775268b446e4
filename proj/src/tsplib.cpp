#include "tspga/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace tspga {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::string_view what) {
  T value{};
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("non-numeric " + std::string(what) + ": '" + std::string(token) + "'");
  }
  return value;
}

// from_chars rejects a leading '+', which some generators emit.
std::string_view strip_plus(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  return token;
}

double parse_real(std::string_view token, std::string_view what) {
  return parse_number<double>(strip_plus(token), what);
}

long long parse_integer(std::string_view token, std::string_view what) {
  return parse_number<long long>(strip_plus(token), what);
}

// Trimmed lines of the document.
std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(trim(text.substr(start, end - start)));
    start = end + 1;
  }
  return lines;
}

constexpr std::string_view kPaper8Matrix =
    "0 12 19 31 22 17 23 12\n"
    "12 0 15 37 21 28 35 22\n"
    "19 15 0 50 36 35 35 21\n"
    "31 37 50 0 20 21 37 38\n"
    "22 21 36 20 0 25 40 33\n"
    "17 28 35 21 25 0 16 18\n"
    "23 35 35 37 40 16 0 14\n"
    "12 22 21 38 33 18 14 0\n";

// Shortest tour of paper8, established by exhaustive enumeration in the tests.
constexpr std::int64_t kPaper8Optimum = 138;

#ifndef TSPGA_DATA_DIR
#define TSPGA_DATA_DIR ""
#endif

}  // namespace

int euc2d_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return static_cast<int>(std::lround(std::sqrt(dx * dx + dy * dy)));
}

Instance Instance::from_coordinates(std::string name, std::vector<Point> coords,
                                    std::optional<std::int64_t> optimum) {
  const int n = static_cast<int>(coords.size());
  if (n < 3) throw ParseError("instance needs at least 3 cities");
  Instance inst;
  inst.name_ = std::move(name);
  inst.dimension_ = n;
  inst.type_ = EdgeWeightType::kEuc2D;
  inst.coords_ = std::move(coords);
  inst.optimum_ = optimum;
  inst.matrix_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int d = euc2d_distance(inst.coords_[i], inst.coords_[j]);
      inst.matrix_[static_cast<std::size_t>(i) * n + j] = d;
      inst.matrix_[static_cast<std::size_t>(j) * n + i] = d;
    }
  }
  return inst;
}

Instance Instance::from_matrix(std::string name, int dimension, std::vector<int> weights,
                               std::optional<std::int64_t> optimum) {
  if (dimension < 3) throw ParseError("instance needs at least 3 cities");
  if (weights.size() != static_cast<std::size_t>(dimension) * dimension) {
    throw ParseError("dimension mismatch: expected " + std::to_string(dimension * dimension) +
                     " matrix entries, got " + std::to_string(weights.size()));
  }
  for (int i = 0; i < dimension; ++i) {
    if (weights[static_cast<std::size_t>(i) * dimension + i] != 0) {
      throw ParseError("explicit matrix has nonzero diagonal at city " + std::to_string(i + 1));
    }
    for (int j = 0; j < dimension; ++j) {
      const int w = weights[static_cast<std::size_t>(i) * dimension + j];
      if (w < 0) throw ParseError("explicit matrix has a negative weight");
      if (w != weights[static_cast<std::size_t>(j) * dimension + i]) {
        throw ParseError("explicit matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ")");
      }
    }
  }
  Instance inst;
  inst.name_ = std::move(name);
  inst.dimension_ = dimension;
  inst.type_ = EdgeWeightType::kExplicit;
  inst.matrix_ = std::move(weights);
  inst.optimum_ = optimum;
  return inst;
}

int Instance::distance(int i, int j) const {
  if (i < 0 || j < 0 || i >= dimension_ || j >= dimension_) {
    throw std::out_of_range("city index out of range");
  }
  return (*this)(i, j);
}

Instance parse_instance(std::string_view text) {
  std::map<std::string, std::string, std::less<>> header;
  std::vector<Point> coords;
  std::vector<int> weights;
  bool saw_coords = false;
  bool saw_weights = false;

  const auto lines = lines_of(text);
  std::size_t li = 0;

  auto require = [&](std::string_view key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError("missing header: " + std::string(key));
    return it->second;
  };

  auto read_dimension = [&]() {
    const auto dim = parse_integer(trim(require("DIMENSION")), "DIMENSION");
    if (dim < 3) throw ParseError("DIMENSION must be at least 3");
    if (dim > 100000) throw ParseError("DIMENSION too large");
    return static_cast<int>(dim);
  };

  for (; li < lines.size(); ++li) {
    const auto line = lines[li];
    if (line.empty()) continue;
    if (line == "EOF") break;

    if (line == "NODE_COORD_SECTION") {
      if (saw_coords) throw ParseError("duplicate section: NODE_COORD_SECTION");
      saw_coords = true;
      const int n = read_dimension();
      coords.assign(n, Point{});
      std::vector<bool> seen(n, false);
      int rows = 0;
      while (li + 1 < lines.size()) {
        const auto row = lines[li + 1];
        if (row.empty()) { ++li; continue; }
        const auto tokens = split_ws(row);
        if (!tokens.empty() && !std::isdigit(static_cast<unsigned char>(tokens[0][0])) &&
            tokens[0][0] != '+' && tokens[0][0] != '-') {
          break;  // next keyword
        }
        ++li;
        if (tokens.size() != 3) {
          throw ParseError("node coordinate row needs 3 fields: '" + std::string(row) + "'");
        }
        const auto idx = parse_integer(tokens[0], "node index");
        if (idx < 1 || idx > n) {
          throw ParseError("dimension mismatch: node index " + std::to_string(idx) +
                           " outside 1.." + std::to_string(n));
        }
        if (seen[idx - 1]) throw ParseError("duplicate node index " + std::to_string(idx));
        seen[idx - 1] = true;
        coords[idx - 1] = Point{parse_real(tokens[1], "coordinate"), parse_real(tokens[2], "coordinate")};
        ++rows;
      }
      if (rows != n) {
        throw ParseError("dimension mismatch: DIMENSION " + std::to_string(n) + " but " +
                         std::to_string(rows) + " coordinate rows");
      }
      continue;
    }

    if (line == "EDGE_WEIGHT_SECTION") {
      if (saw_weights) throw ParseError("duplicate section: EDGE_WEIGHT_SECTION");
      saw_weights = true;
      const int n = read_dimension();
      const std::size_t expected = static_cast<std::size_t>(n) * n;
      while (li + 1 < lines.size()) {
        const auto row = lines[li + 1];
        if (row.empty()) { ++li; continue; }
        const auto tokens = split_ws(row);
        if (!std::isdigit(static_cast<unsigned char>(tokens[0][0])) && tokens[0][0] != '+' &&
            tokens[0][0] != '-') {
          break;
        }
        ++li;
        for (auto tok : tokens) {
          const auto w = parse_integer(tok, "edge weight");
          if (w < 0) throw ParseError("negative edge weight");
          weights.push_back(static_cast<int>(w));
        }
        if (weights.size() > expected) break;
      }
      if (weights.size() != expected) {
        throw ParseError("dimension mismatch: DIMENSION " + std::to_string(n) + " needs " +
                         std::to_string(expected) + " weights, got " +
                         std::to_string(weights.size()));
      }
      continue;
    }

    if (line.ends_with("_SECTION")) {
      throw ParseError("unsupported section: " + std::string(line));
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("unrecognized line: '" + std::string(line) + "'");
    }
    std::string key(trim(line.substr(0, colon)));
    std::string value(trim(line.substr(colon + 1)));
    if (!header.emplace(key, value).second) throw ParseError("duplicate header: " + key);
  }

  const auto& name = require("NAME");
  const int n = read_dimension();
  const auto& type = require("EDGE_WEIGHT_TYPE");
  if (auto it = header.find("TYPE"); it != header.end() && it->second != "TSP") {
    throw ParseError("unsupported TYPE: " + it->second);
  }

  std::optional<std::int64_t> optimum = known_optimum(name);

  if (type == "EUC_2D") {
    if (!saw_coords) throw ParseError("missing section: NODE_COORD_SECTION");
    if (saw_weights) throw ParseError("EDGE_WEIGHT_SECTION not allowed for EUC_2D");
    return Instance::from_coordinates(name, std::move(coords), optimum);
  }
  if (type == "EXPLICIT") {
    const auto& format = require("EDGE_WEIGHT_FORMAT");
    if (format != "FULL_MATRIX") throw ParseError("unsupported EDGE_WEIGHT_FORMAT: " + format);
    if (!saw_weights) throw ParseError("missing section: EDGE_WEIGHT_SECTION");
    return Instance::from_matrix(name, n, std::move(weights), optimum);
  }
  throw ParseError("unsupported EDGE_WEIGHT_TYPE: " + type);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceIoError("cannot open instance file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string write_full_matrix(const Instance& inst) {
  const int n = inst.dimension();
  std::ostringstream out;
  out << "NAME : " << inst.name() << "\n"
      << "TYPE : TSP\n"
      << "DIMENSION : " << n << "\n"
      << "EDGE_WEIGHT_TYPE : EXPLICIT\n"
      << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
      << "EDGE_WEIGHT_SECTION\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << inst(i, j);
    out << "\n";
  }
  out << "EOF\n";
  return out.str();
}

std::optional<std::int64_t> known_optimum(std::string_view name) {
  static const std::map<std::string, std::int64_t, std::less<>> kOptima = {
      {"eil51", 426},     {"eil76", 538},    {"eil101", 629},  {"kroA100", 21282},
      {"kroA200", 29368}, {"a280", 2579},    {"lin318", 42029}, {"paper8", kPaper8Optimum},
  };
  auto it = kOptima.find(name);
  if (it == kOptima.end()) return std::nullopt;
  return it->second;
}

std::optional<Instance> fixture(std::string_view name) {
  if (name == "paper8") {
    std::vector<int> weights;
    std::istringstream in{std::string(kPaper8Matrix)};
    for (int w; in >> w;) weights.push_back(w);
    return Instance::from_matrix("paper8", 8, std::move(weights), kPaper8Optimum);
  }
  return std::nullopt;
}

std::vector<std::string> fixture_names() { return {"paper8"}; }

std::vector<std::filesystem::path> instance_search_path() {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("TSPGA_DATA_DIR"); env && *env) dirs.emplace_back(env);
  if (std::string_view(TSPGA_DATA_DIR).size() > 0) dirs.emplace_back(TSPGA_DATA_DIR);
  dirs.emplace_back("data");
  return dirs;
}

Instance resolve_instance(std::string_view ref) {
  if (auto f = fixture(ref)) return *std::move(f);
  const std::filesystem::path path{std::string(ref)};
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) return load_instance(path);
  if (!path.has_parent_path()) {
    for (const auto& dir : instance_search_path()) {
      for (const auto& candidate : {dir / (std::string(ref) + ".tsp"), dir / path}) {
        if (std::filesystem::is_regular_file(candidate, ec)) return load_instance(candidate);
      }
    }
  }
  throw InstanceIoError("instance not found: " + std::string(ref));
}

}  // namespace tspga
