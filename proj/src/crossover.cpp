#include "tspga/crossover.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tspga {
namespace {

// Position lookup plus cyclic neighbours for one parent.
class ParentView {
 public:
  explicit ParentView(const Tour& t) : tour_(t), pos_(static_cast<std::size_t>(t.size())) {
    for (int i = 0; i < t.size(); ++i) pos_[t[i]] = i;
  }
  int n() const { return tour_.size(); }
  int pos(int city) const { return pos_[city]; }
  int at(int position) const { return tour_[wrap(position)]; }
  int succ(int city) const { return at(pos_[city] + 1); }
  int pred(int city) const { return at(pos_[city] - 1); }
  int wrap(int position) const { return ((position % n()) + n()) % n(); }

 private:
  const Tour& tour_;
  std::vector<int> pos_;
};

void require_parents(const Tour& father, const Tour& mother, const char* op) {
  if (father.size() != mother.size()) {
    throw std::invalid_argument(std::string(op) + ": parent size mismatch");
  }
  if (father.size() < 3) throw std::invalid_argument(std::string(op) + ": tours need 3+ cities");
  if (auto v = validate_tour(father, father.size())) {
    throw std::invalid_argument(std::string(op) + ": invalid father, " + describe(*v));
  }
  if (auto v = validate_tour(mother, mother.size())) {
    throw std::invalid_argument(std::string(op) + ": invalid mother, " + describe(*v));
  }
}

void require_start(int start, int n, const char* op) {
  if (start < 0 || start >= n) throw std::invalid_argument(std::string(op) + ": start out of range");
}

void require_instance(const Instance& inst, int n, const char* op) {
  if (inst.dimension() != n) {
    throw std::invalid_argument(std::string(op) + ": instance dimension does not match tours");
  }
}

int nearest_unvisited(int from, const std::vector<char>& visited, const Instance& inst) {
  int best = -1;
  int best_d = std::numeric_limits<int>::max();
  for (int c = 0; c < static_cast<int>(visited.size()); ++c) {
    if (!visited[c] && inst(from, c) < best_d) {
      best = c;
      best_d = inst(from, c);
    }
  }
  return best;
}

// k-th unvisited city in ascending index order, k uniform.
int random_unvisited(const std::vector<char>& visited, int remaining, RandomStream& rng) {
  int k = rng.index(remaining);
  for (int c = 0; c < static_cast<int>(visited.size()); ++c) {
    if (!visited[c] && k-- == 0) return c;
  }
  return -1;
}

std::string city_list(const std::vector<int>& cities) {
  std::string out = "{";
  for (std::size_t i = 0; i < cities.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cities[i] + 1);
  }
  return out + "}";
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Child built from `base` outside [cut1, cut2) and `donor` inside it.
Tour pmx_child(const Tour& base, const Tour& donor, int cut1, int cut2) {
  const int n = base.size();
  // donor city -> its position inside the segment, -1 outside
  std::vector<int> seg_pos(static_cast<std::size_t>(n), -1);
  for (int i = cut1; i < cut2; ++i) seg_pos[donor[i]] = i;
  std::vector<int> child(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i >= cut1 && i < cut2) {
      child[i] = donor[i];
      continue;
    }
    int city = base[i];
    while (seg_pos[city] >= 0) city = base[seg_pos[city]];
    child[i] = city;
  }
  return Tour(std::move(child));
}

}  // namespace

CrossoverSpec CrossoverSpec::gx(GxVariant variant) {
  CrossoverSpec s(CrossoverKind::kGx);
  s.gx_variant_ = variant;
  return s;
}

CrossoverSpec CrossoverSpec::gsx(int version) {
  if (version < 0 || version > 2) throw std::invalid_argument("GSX version must be 0, 1 or 2");
  CrossoverSpec s(CrossoverKind::kGsx);
  s.gsx_version_ = version;
  return s;
}

CrossoverSpec CrossoverSpec::parse(std::string_view name) {
  const std::string key = upper(name);
  if (key == "PMX") return pmx();
  if (key == "EPMX") return epmx();
  if (key == "UHX") return uhx();
  if (key == "DPX") return dpx();
  if (key == "VGX") return gx(GxVariant::kVgx);
  if (key == "GX[2]" || key == "GX2") return gx(GxVariant::kGx2);
  if (key == "GX[3][4]" || key == "GX34") return gx(GxVariant::kGx34);
  if (key == "GX[5]" || key == "GX5") return gx(GxVariant::kGx5);
  if (key == "GSX-0" || key == "GSX0") return gsx(0);
  if (key == "GSX-1" || key == "GSX1") return gsx(1);
  if (key == "GSX-2" || key == "GSX2") return gsx(2);
  throw std::invalid_argument("unknown crossover: '" + std::string(name) + "'");
}

std::vector<CrossoverSpec> CrossoverSpec::benchmark_set() {
  return {pmx(),
          epmx(),
          gsx(2),
          gx(GxVariant::kGx2),
          gx(GxVariant::kGx34),
          gx(GxVariant::kGx5),
          gx(GxVariant::kVgx),
          uhx(),
          dpx()};
}

std::string CrossoverSpec::name() const {
  switch (kind_) {
    case CrossoverKind::kPmx: return "PMX";
    case CrossoverKind::kEpmx: return "EPMX";
    case CrossoverKind::kUhx: return "UHX";
    case CrossoverKind::kDpx: return "DPX";
    case CrossoverKind::kGsx: return "GSX-" + std::to_string(*gsx_version_);
    case CrossoverKind::kGx:
      switch (*gx_variant_) {
        case GxVariant::kGx2: return "GX[2]";
        case GxVariant::kGx34: return "GX[3][4]";
        case GxVariant::kGx5: return "GX[5]";
        case GxVariant::kVgx: return "VGX";
      }
  }
  return "?";
}

std::string format_trace(const Trace& trace) {
  std::ostringstream out;
  out << "step  candidates          chosen  note\n";
  for (const auto& s : trace) {
    std::string cands = s.candidates.empty() ? "-" : city_list(s.candidates);
    std::string chosen = s.chosen >= 0 ? std::to_string(s.chosen + 1) : "-";
    out << s.step;
    out << std::string(6 - std::min<std::size_t>(5, std::to_string(s.step).size()), ' ');
    out << cands << std::string(cands.size() < 20 ? 20 - cands.size() : 1, ' ');
    out << chosen << std::string(chosen.size() < 8 ? 8 - chosen.size() : 1, ' ');
    out << s.note << "\n";
  }
  return out.str();
}

std::pair<Tour, Tour> pmx(const Tour& father, const Tour& mother, int cut1, int cut2,
                          Trace* trace) {
  require_parents(father, mother, "pmx");
  const int n = father.size();
  if (cut1 < 0 || cut2 > n || cut1 >= cut2) {
    throw std::invalid_argument("pmx: cut points must satisfy 0 <= cut1 < cut2 <= n");
  }
  if (trace) {
    std::string mapping;
    for (int i = cut1; i < cut2; ++i) {
      if (i > cut1) mapping += ' ';
      mapping += std::to_string(father[i] + 1) + "<->" + std::to_string(mother[i] + 1);
    }
    trace->push_back({1, {}, -1, "segment [" + std::to_string(cut1) + "," + std::to_string(cut2) +
                                     ") mapping " + mapping});
  }
  return {pmx_child(father, mother, cut1, cut2), pmx_child(mother, father, cut1, cut2)};
}

std::pair<Tour, Tour> epmx(const Tour& father, const Tour& mother, int point, Trace* trace) {
  require_parents(father, mother, "epmx");
  const int n = father.size();
  if (point < 1 || point > n) throw std::invalid_argument("epmx: point must satisfy 1 <= point <= n");

  std::vector<char> in_f(static_cast<std::size_t>(n), 0), in_m(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < point; ++i) {
    in_f[father[i]] = 1;
    in_m[mother[i]] = 1;
  }
  std::vector<int> only_f, only_m;
  for (int i = 0; i < point; ++i) {
    if (!in_m[father[i]]) only_f.push_back(father[i]);
    if (!in_f[mother[i]]) only_m.push_back(mother[i]);
  }
  // |F\M| == |M\F| since both prefixes have `point` distinct cities.
  std::vector<int> partner(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) partner[c] = c;
  for (std::size_t i = 0; i < only_f.size(); ++i) {
    partner[only_f[i]] = only_m[i];
    partner[only_m[i]] = only_f[i];
  }
  if (trace) {
    std::string pairs;
    for (std::size_t i = 0; i < only_f.size(); ++i) {
      if (i) pairs += ' ';
      pairs += std::to_string(only_f[i] + 1) + "<->" + std::to_string(only_m[i] + 1);
    }
    trace->push_back({1, {}, -1, "point " + std::to_string(point) + " exchanges " +
                                     (pairs.empty() ? std::string("none") : pairs)});
  }

  auto build = [&](const Tour& prefix_src, const Tour& suffix_src) {
    std::vector<int> child(prefix_src.begin(), prefix_src.begin() + point);
    for (int i = point; i < n; ++i) child.push_back(partner[suffix_src[i]]);
    return Tour(std::move(child));
  };
  return {build(mother, father), build(father, mother)};
}

Tour gx(GxVariant variant, const Tour& father, const Tour& mother, int start,
        const Instance& inst, RandomStream& rng, Trace* trace) {
  require_parents(father, mother, "gx");
  const int n = father.size();
  require_start(start, n, "gx");
  require_instance(inst, n, "gx");

  const bool four = variant == GxVariant::kGx5 || variant == GxVariant::kVgx;
  const bool greedy_fallback = variant == GxVariant::kGx34 || variant == GxVariant::kVgx;
  const ParentView f(father), m(mother);

  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<int> child{start};
  child.reserve(static_cast<std::size_t>(n));
  visited[start] = 1;
  if (trace) trace->push_back({1, {}, start, "start"});

  int current = start;
  while (static_cast<int>(child.size()) < n) {
    // Display order is (father-left, father-right, mother-left, mother-right);
    // ties go to father-right, father-left, mother-right, mother-left.
    std::vector<int> shown;
    std::vector<int> priority;
    if (four) {
      shown = {f.pred(current), f.succ(current), m.pred(current), m.succ(current)};
      priority = {shown[1], shown[0], shown[3], shown[2]};
    } else {
      shown = {f.succ(current), m.succ(current)};
      priority = shown;
    }
    int next = -1;
    int best_d = std::numeric_limits<int>::max();
    for (int c : priority) {
      if (!visited[c] && inst(current, c) < best_d) {
        next = c;
        best_d = inst(current, c);
      }
    }
    std::string note = "nearest candidate";
    if (next < 0) {
      if (greedy_fallback) {
        next = nearest_unvisited(current, visited, inst);
        note = "all candidates visited: nearest unvisited";
      } else {
        next = random_unvisited(visited, n - static_cast<int>(child.size()), rng);
        note = "all candidates visited: random unvisited";
      }
    }
    child.push_back(next);
    visited[next] = 1;
    if (trace) trace->push_back({static_cast<int>(child.size()), shown, next, note});
    current = next;
  }
  return Tour(std::move(child));
}

Tour uhx(const Tour& father, const Tour& mother, int start, const Instance& inst, Trace* trace) {
  require_parents(father, mother, "uhx");
  const int n = father.size();
  require_start(start, n, "uhx");
  require_instance(inst, n, "uhx");

  const ParentView f(father), m(mother);
  struct Pointer {
    const ParentView* parent;
    int position;
    int direction;
    int city() const { return parent->at(position); }
    void advance() { position = parent->wrap(position + direction); }
  };
  // Slots in display order: father-left, father-right, mother-left, mother-right.
  std::array<Pointer, 4> ptr{{{&f, f.wrap(f.pos(start) - 1), -1},
                              {&f, f.wrap(f.pos(start) + 1), +1},
                              {&m, m.wrap(m.pos(start) - 1), -1},
                              {&m, m.wrap(m.pos(start) + 1), +1}}};
  constexpr std::array<int, 4> kPriority{1, 0, 3, 2};

  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<int> child{start};
  child.reserve(static_cast<std::size_t>(n));
  visited[start] = 1;
  if (trace) trace->push_back({1, {}, start, "start"});

  auto pick = [&](int current) {
    int best = -1;
    int best_d = std::numeric_limits<int>::max();
    for (int slot : kPriority) {
      const int c = ptr[slot].city();
      if (!visited[c] && inst(current, c) < best_d) {
        best = c;
        best_d = inst(current, c);
      }
    }
    return best;
  };
  auto pointed = [&] {
    return std::vector<int>{ptr[0].city(), ptr[1].city(), ptr[2].city(), ptr[3].city()};
  };

  int current = start;
  while (static_cast<int>(child.size()) < n) {
    auto shown = pointed();
    std::string note = "nearest pointed city";
    int next = pick(current);
    if (next < 0) {
      // Every pointed city is visited: slide each pointer on to its next
      // unvisited city.
      for (auto& p : ptr) {
        for (int guard = 0; guard < n && visited[p.city()]; ++guard) p.advance();
      }
      shown = pointed();
      next = pick(current);
      note = "pointers skipped visited cities";
      if (next < 0) {
        next = nearest_unvisited(current, visited, inst);
        note = "pointers exhausted: nearest unvisited";
      }
    }
    child.push_back(next);
    visited[next] = 1;
    if (trace) trace->push_back({static_cast<int>(child.size()), shown, next, note});
    // The pointer that supplied `next` moves on, as does any other pointer
    // resting on a city that is now in the child.
    for (auto& p : ptr) {
      if (visited[p.city()]) p.advance();
    }
    current = next;
  }
  return Tour(std::move(child));
}

Tour gsx(int version, const Tour& father, const Tour& mother, int start, RandomStream& rng,
         Trace* trace) {
  if (version < 0 || version > 2) throw std::invalid_argument("gsx: version must be 0, 1 or 2");
  require_parents(father, mother, "gsx");
  const int n = father.size();
  require_start(start, n, "gsx");

  const ParentView f(father), m(mother);
  int mother_step = -1;  // leftward through the mother
  if (version == 2 && f.succ(start) == m.pred(start)) mother_step = +1;

  std::vector<char> in_child(static_cast<std::size_t>(n), 0);
  std::deque<int> sub{start};
  in_child[start] = 1;
  if (trace) {
    trace->push_back({1, {}, start,
                      mother_step > 0 ? "start; mother traversed rightward" : "start"});
  }

  bool right_open = true;
  bool left_open = true;
  int step = 1;
  while (right_open || left_open) {
    if (right_open) {
      const int next = f.succ(sub.back());
      if (in_child[next]) {
        right_open = false;
        if (trace) trace->push_back({++step, {next}, -1, "father side closed"});
      } else {
        sub.push_back(next);
        in_child[next] = 1;
        if (trace) trace->push_back({++step, {next}, next, "father side"});
      }
    }
    if (left_open) {
      const int next = m.at(m.pos(sub.front()) + mother_step);
      if (in_child[next]) {
        left_open = false;
        if (trace) trace->push_back({++step, {next}, -1, "mother side closed"});
      } else {
        sub.push_front(next);
        in_child[next] = 1;
        if (trace) trace->push_back({++step, {next}, next, "mother side"});
      }
    }
  }

  std::vector<int> child(sub.begin(), sub.end());
  std::vector<int> rest;
  for (int c : father) {
    if (!in_child[c]) rest.push_back(c);
  }
  if (version == 0) rng.shuffle(std::span<int>(rest));
  if (trace && !rest.empty()) {
    trace->push_back({++step, rest, -1,
                      version == 0 ? "remaining cities in random order" : "remaining cities in father order"});
  }
  child.insert(child.end(), rest.begin(), rest.end());
  return Tour(std::move(child));
}

Tour dpx(const Tour& father, const Tour& mother, const Instance& inst, Trace* trace) {
  require_parents(father, mother, "dpx");
  const int n = father.size();
  require_instance(inst, n, "dpx");

  const auto shared = common_edges(father, mother);
  if (static_cast<int>(shared.size()) == n) {
    if (trace) trace->push_back({1, {}, -1, "parents identical: one fragment"});
    return father;
  }

  std::vector<std::array<int, 2>> adj(static_cast<std::size_t>(n), {-1, -1});
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (const auto& e : shared) {
    adj[e.a][degree[e.a]++] = e.b;
    adj[e.b][degree[e.b]++] = e.a;
  }

  // Fragments are maximal common paths, stored from one endpoint to the other.
  std::vector<std::vector<int>> fragments;
  std::vector<int> fragment_of(static_cast<std::size_t>(n), -1);
  for (int c = 0; c < n; ++c) {
    if (fragment_of[c] >= 0 || degree[c] == 2) continue;
    std::vector<int> path{c};
    fragment_of[c] = static_cast<int>(fragments.size());
    int prev = -1, cur = c;
    while (true) {
      int next = -1;
      for (int k = 0; k < degree[cur]; ++k) {
        if (adj[cur][k] != prev) next = adj[cur][k];
      }
      if (next < 0) break;
      path.push_back(next);
      fragment_of[next] = fragment_of[c];
      prev = cur;
      cur = next;
    }
    fragments.push_back(std::move(path));
  }

  if (trace) {
    std::string frags;
    for (const auto& fr : fragments) frags += city_list(fr);
    trace->push_back({1, {}, -1, "fragments " + frags});
  }

  std::vector<char> used(fragments.size(), 0);
  std::vector<int> child;
  child.reserve(static_cast<std::size_t>(n));
  auto append = [&](int frag, int entry) {
    const auto& path = fragments[frag];
    if (path.front() == entry) {
      child.insert(child.end(), path.begin(), path.end());
    } else {
      child.insert(child.end(), path.rbegin(), path.rend());
    }
    used[frag] = 1;
  };

  const int first = fragment_of[0];
  append(first, std::min(fragments[first].front(), fragments[first].back()));
  int step = 1;
  if (trace) trace->push_back({++step, {}, child.front(), "start fragment"});

  for (std::size_t placed = 1; placed < fragments.size(); ++placed) {
    const int from = child.back();
    int best = -1;
    int best_d = std::numeric_limits<int>::max();
    for (std::size_t fr = 0; fr < fragments.size(); ++fr) {
      if (used[fr]) continue;
      for (int end : {fragments[fr].front(), fragments[fr].back()}) {
        const int d = inst(from, end);
        if (d < best_d || (d == best_d && end < best)) {
          best = end;
          best_d = d;
        }
      }
    }
    append(fragment_of[best], best);
    if (trace) trace->push_back({++step, {}, best, "nearest free endpoint"});
  }
  return Tour(std::move(child));
}

Tour recombine(const CrossoverSpec& spec, const Tour& father, const Tour& mother,
               const Instance& inst, RandomStream& rng) {
  const int n = father.size();
  auto shorter = [&](std::pair<Tour, Tour> children) {
    return tour_length(children.second, inst) < tour_length(children.first, inst)
               ? std::move(children.second)
               : std::move(children.first);
  };
  switch (spec.kind()) {
    case CrossoverKind::kPmx: {
      int a = rng.uniform(0, n);
      int b = rng.uniform(0, n - 1);
      if (b >= a) ++b;
      return shorter(pmx(father, mother, std::min(a, b), std::max(a, b)));
    }
    case CrossoverKind::kEpmx:
      return shorter(epmx(father, mother, rng.uniform(1, n - 1)));
    case CrossoverKind::kGx: {
      const int start = rng.index(n);
      return gx(*spec.gx_variant(), father, mother, start, inst, rng);
    }
    case CrossoverKind::kUhx:
      return uhx(father, mother, rng.index(n), inst);
    case CrossoverKind::kGsx: {
      const int start = rng.index(n);
      return gsx(*spec.gsx_version(), father, mother, start, rng);
    }
    case CrossoverKind::kDpx:
      return dpx(father, mother, inst);
  }
  throw std::logic_error("recombine: unhandled crossover kind");
}

}  // namespace tspga
