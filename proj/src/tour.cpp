#include "tspga/tour.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tspga {

Tour Tour::identity(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return Tour(std::move(order));
}

Tour Tour::random(int n, RandomStream& rng) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  return Tour(std::move(order));
}

std::int64_t tour_length(const Tour& t, const Instance& inst) {
  const int n = t.size();
  if (n == 0) return 0;
  std::int64_t total = inst(t[n - 1], t[0]);
  for (int i = 0; i + 1 < n; ++i) total += inst(t[i], t[i + 1]);
  return total;
}

std::optional<TourViolation> validate_tour(std::span<const int> order, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(n, 0)), false);
  for (int city : order) {
    if (city < 0 || city >= n) return TourViolation{TourViolation::Kind::kOutOfRange, city};
    if (seen[city]) return TourViolation{TourViolation::Kind::kDuplicated, city};
    seen[city] = true;
  }
  for (int city = 0; city < n; ++city) {
    if (!seen[city]) return TourViolation{TourViolation::Kind::kMissing, city};
  }
  return std::nullopt;
}

std::string describe(const TourViolation& v) {
  const std::string city = "city " + std::to_string(v.city + 1);
  switch (v.kind) {
    case TourViolation::Kind::kOutOfRange: return city + " out of range";
    case TourViolation::Kind::kDuplicated: return city + " duplicated";
    case TourViolation::Kind::kMissing: return city + " missing";
  }
  return city;
}

double quality_percent(std::int64_t cost, std::int64_t optimum) {
  if (optimum <= 0) throw std::invalid_argument("quality_percent: optimum must be positive");
  return static_cast<double>(cost - optimum) / static_cast<double>(optimum) * 100.0;
}

double round2(double value) {
  const double r = std::round(value * 100.0) / 100.0;
  return r == 0.0 ? 0.0 : r;  // no "-0"
}

std::string format_quality(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, round2(value));
  return std::string(buf, ptr);
}

EdgeSet tour_edges(const Tour& t) {
  EdgeSet edges;
  const int n = t.size();
  edges.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) edges.emplace_back(t[i], t[(i + 1) % n]);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

EdgeSet common_edges(const Tour& a, const Tour& b) {
  if (a.size() != b.size()) throw std::invalid_argument("common_edges: tour size mismatch");
  const auto ea = tour_edges(a);
  const auto eb = tour_edges(b);
  EdgeSet out;
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
  return out;
}

Tour rotate_to(const Tour& t, int city) {
  std::vector<int> order(t.begin(), t.end());
  auto it = std::find(order.begin(), order.end(), city);
  if (it == order.end()) throw std::invalid_argument("rotate_to: city not in tour");
  std::rotate(order.begin(), it, order.end());
  return Tour(std::move(order));
}

Tour canonical(const Tour& t) {
  const int n = t.size();
  if (n < 3) return t;
  Tour r = rotate_to(t, 0);
  if (r[n - 1] < r[1]) {
    std::vector<int> order(r.begin(), r.end());
    std::reverse(order.begin() + 1, order.end());
    return Tour(std::move(order));
  }
  return r;
}

bool cyclically_equal(const Tour& a, const Tour& b) {
  if (a.size() != b.size()) return false;
  const int n = a.size();
  if (n == 0) return true;
  const auto start = std::find(b.begin(), b.end(), a[0]);
  if (start == b.end()) return false;
  const int offset = static_cast<int>(start - b.begin());
  bool forward = true;
  bool backward = true;
  for (int i = 0; i < n && (forward || backward); ++i) {
    if (forward && a[i] != b[(offset + i) % n]) forward = false;
    if (backward && a[i] != b[((offset - i) % n + n) % n]) backward = false;
  }
  return forward || backward;
}

std::string format_tour(const Tour& t) {
  std::string out;
  for (int i = 0; i < t.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(t[i] + 1);
  }
  return out;
}

Tour parse_tour(std::string_view text) {
  std::vector<int> order;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == '-' || c == ',' || c == ' ' || c == '\t'; };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
    if (ec != std::errc() || ptr != text.data() + j || value < 1) {
      throw std::invalid_argument("invalid tour entry: '" + std::string(text.substr(i, j - i)) + "'");
    }
    order.push_back(value - 1);
    i = j;
  }
  if (order.empty()) throw std::invalid_argument("empty tour");
  return Tour(std::move(order));
}

}  // namespace tspga
