#include "tspga/local_search.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace tspga {
namespace {

// Array tour with a position index; reversals flip the shorter arc.
class ArrayTour {
 public:
  explicit ArrayTour(const Tour& t)
      : n_(t.size()), order_(t.begin(), t.end()), pos_(static_cast<std::size_t>(n_)) {
    for (int i = 0; i < n_; ++i) pos_[order_[i]] = i;
  }

  int n() const { return n_; }
  int pos(int c) const { return pos_[c]; }
  int succ(int c) const { return order_[pos_[c] + 1 == n_ ? 0 : pos_[c] + 1]; }
  int pred(int c) const { return order_[pos_[c] == 0 ? n_ - 1 : pos_[c] - 1]; }
  int next(int c, bool forward) const { return forward ? succ(c) : pred(c); }

  /// Reverses the path that runs forward from city `from` to city `to`.
  void reverse_path(int from, int to) {
    int len = (pos_[to] - pos_[from] + n_) % n_ + 1;
    if (2 * len > n_) {
      // Reversing the complementary arc yields the same cycle.
      const int new_from = succ(to);
      const int new_to = pred(from);
      from = new_from;
      to = new_to;
      len = n_ - len;
    }
    int l = pos_[from];
    int r = pos_[to];
    for (int k = 0; k < len / 2; ++k) {
      std::swap(order_[l], order_[r]);
      pos_[order_[l]] = l;
      pos_[order_[r]] = r;
      l = l + 1 == n_ ? 0 : l + 1;
      r = r == 0 ? n_ - 1 : r - 1;
    }
  }

  void assign(std::vector<int> order) {
    order_ = std::move(order);
    for (int i = 0; i < n_; ++i) pos_[order_[i]] = i;
  }

  const std::vector<int>& order() const { return order_; }
  Tour to_tour() const { return Tour(order_); }

 private:
  int n_;
  std::vector<int> order_;
  std::vector<int> pos_;
};

// FIFO of cities whose don't-look bit is off.
class WorkQueue {
 public:
  explicit WorkQueue(const ArrayTour& t) : queued_(static_cast<std::size_t>(t.n()), 1) {
    for (int c : t.order()) queue_.push_back(c);
  }
  bool empty() const { return queue_.empty(); }
  int pop() {
    const int c = queue_.front();
    queue_.pop_front();
    queued_[c] = 0;
    return c;
  }
  void push(int c) {
    if (!queued_[c]) {
      queued_[c] = 1;
      queue_.push_back(c);
    }
  }

 private:
  std::deque<int> queue_;
  std::vector<char> queued_;
};

// A removed tour edge, oriented so that tail is the predecessor of head.
struct RemovedEdge {
  int tail;
  int head;
};

RemovedEdge oriented(const ArrayTour& t, int a, int b) {
  return t.succ(a) == b ? RemovedEdge{a, b} : RemovedEdge{b, a};
}

// Sequential 3-opt: removes (t1,t2), (t3,t4), (t5,t6) and adds (t2,t3),
// (t4,t5), (t6,t1). Returns the new order, or an empty vector when the
// reconnection does not form a single cycle.
std::vector<int> reconnect3(const ArrayTour& t, const std::array<int, 6>& c) {
  const int n = t.n();
  std::array<RemovedEdge, 3> x{oriented(t, c[0], c[1]), oriented(t, c[2], c[3]),
                               oriented(t, c[4], c[5])};
  if (x[0].tail == x[1].tail || x[0].tail == x[2].tail || x[1].tail == x[2].tail) return {};

  // Sort removed edges along the tour; segment k runs from x[k].head to
  // x[k+1].tail.
  std::array<int, 3> rank{0, 1, 2};
  std::sort(rank.begin(), rank.end(),
            [&](int a, int b) { return t.pos(x[a].tail) < t.pos(x[b].tail); });
  std::array<int, 3> seg_of_edge{};
  for (int k = 0; k < 3; ++k) seg_of_edge[rank[k]] = k;

  // Slot id = 2 * segment + (0 first city, 1 last city).
  auto slot = [&](int city, int edge) {
    const int k = seg_of_edge[edge];
    if (city == x[edge].head) return 2 * k;
    return 2 * ((k + 2) % 3) + 1;
  };
  std::array<int, 6> partner{};
  partner.fill(-1);
  auto link = [&](int a, int ea, int b, int eb) {
    const int sa = slot(a, ea);
    const int sb = slot(b, eb);
    partner[sa] = sb;
    partner[sb] = sa;
  };
  link(c[1], 0, c[2], 1);
  link(c[3], 1, c[4], 2);
  link(c[5], 2, c[0], 0);
  for (int p : partner) {
    if (p < 0) return {};
  }

  auto first_city = [&](int k) { return x[rank[k]].head; };
  auto last_city = [&](int k) { return x[rank[(k + 1) % 3]].tail; };

  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  std::array<char, 3> seen{0, 0, 0};
  int seg = 0;
  bool forward = true;
  for (int count = 0; count < 3; ++count) {
    if (seen[seg]) return {};
    seen[seg] = 1;
    const int from = forward ? first_city(seg) : last_city(seg);
    const int to = forward ? last_city(seg) : first_city(seg);
    for (int city = from;; city = t.next(city, forward)) {
      out.push_back(city);
      if (city == to) break;
    }
    const int exit_slot = 2 * seg + (forward ? 1 : 0);
    const int entry = partner[exit_slot];
    seg = entry / 2;
    forward = entry % 2 == 0;
  }
  if (seg != 0 || !forward || static_cast<int>(out.size()) != n) return {};
  return out;
}

// Tries improving moves starting at t1. Returns true after applying one and
// queues the touched cities.
bool improve_from(int t1, ArrayTour& t, const Instance& d, const NeighborLists& nl,
                  WorkQueue& queue, bool three_opt) {
  for (const bool forward : {true, false}) {
    const int t2 = t.next(t1, forward);
    const int d12 = d(t1, t2);
    for (const int t3 : nl[t2]) {
      const int g1 = d12 - d(t2, t3);
      if (g1 <= 0) break;
      if (t3 == t1) continue;

      // 2-opt closing: t4 is the neighbour of t3 on the far side from t2.
      const int t4 = t.next(t3, !forward);
      if (t4 != t2) {
        const int gain = g1 + d(t3, t4) - d(t4, t1);
        if (gain > 0) {
          if (forward) {
            t.reverse_path(t2, t4);
          } else {
            t.reverse_path(t4, t2);
          }
          for (int c : {t1, t2, t3, t4}) queue.push(c);
          return true;
        }
      }
      if (!three_opt) continue;

      for (const bool t4_forward : {true, false}) {
        const int u4 = t.next(t3, t4_forward);
        if (u4 == t2) continue;  // would remove the edge just added
        const int g2 = g1 + d(t3, u4);
        for (const int t5 : nl[u4]) {
          const int g2b = g2 - d(u4, t5);
          if (g2b <= 0) break;
          if (t5 == t3) continue;
          for (const bool t6_forward : {true, false}) {
            const int t6 = t.next(t5, t6_forward);
            const int gain = g2b + d(t5, t6) - d(t6, t1);
            if (gain <= 0) continue;
            auto order = reconnect3(t, {t1, t2, t3, u4, t5, t6});
            if (order.empty()) continue;
            t.assign(std::move(order));
            for (int c : {t1, t2, t3, u4, t5, t6}) queue.push(c);
            return true;
          }
        }
      }
    }
  }
  return false;
}

Tour local_search(Tour tour, const Instance& inst, const NeighborLists& nl, bool three_opt) {
  const int n = tour.size();
  if (n != inst.dimension() || nl.size() != n) {
    throw std::invalid_argument("local search: tour, instance and neighbor lists disagree");
  }
  if (n < 4) return tour;
  ArrayTour t(tour);
  // A full round with every don't-look bit cleared must find nothing before
  // the search stops.
  bool improved = true;
  while (improved) {
    improved = false;
    WorkQueue queue(t);
    while (!queue.empty()) {
      const int city = queue.pop();
      if (improve_from(city, t, inst, nl, queue, three_opt)) {
        improved = true;
        queue.push(city);
      }
    }
  }
  return t.to_tour();
}

}  // namespace

NeighborLists::NeighborLists(const Instance& inst, int k) : n_(inst.dimension()) {
  if (k < 1) throw std::invalid_argument("neighbor lists need k >= 1");
  k_ = std::min(k, n_ - 1);
  flat_.reserve(static_cast<std::size_t>(n_) * k_);
  std::vector<int> others;
  for (int c = 0; c < n_; ++c) {
    others.clear();
    for (int o = 0; o < n_; ++o) {
      if (o != c) others.push_back(o);
    }
    std::partial_sort(others.begin(), others.begin() + k_, others.end(), [&](int a, int b) {
      return inst(c, a) != inst(c, b) ? inst(c, a) < inst(c, b) : a < b;
    });
    flat_.insert(flat_.end(), others.begin(), others.begin() + k_);
  }
}

NeighborLists build_neighbor_lists(const Instance& inst, int k) { return NeighborLists(inst, k); }

Tour two_opt_ls(Tour t, const Instance& inst, const NeighborLists& nl) {
  return local_search(std::move(t), inst, nl, false);
}

Tour three_opt_ls(Tour t, const Instance& inst, const NeighborLists& nl) {
  return local_search(std::move(t), inst, nl, true);
}

}  // namespace tspga
