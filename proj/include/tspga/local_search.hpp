#pragma once

/// @file local_search.hpp
/// @brief Neighbor-list driven 2-opt and 3-opt local searches.
///
/// Both searches use first improvement in Lin-Kernighan style move
/// construction (t1..t4 for 2-opt, t1..t6 for 3-opt) where each added edge
/// must be shorter than the running gain, restricted to the k nearest
/// neighbours of the city it leaves from. Don't-look bits steer the work
/// queue; a search only returns after a full pass over every city found no
/// improving move, so the result is a local optimum of the candidate
/// neighbourhood. With k = n - 1 that is the full 2-opt (resp. 3-opt)
/// neighbourhood.

#include <span>
#include <vector>

#include "tspga/tour.hpp"
#include "tspga/tsplib.hpp"

namespace tspga {

/// For every city, its min(k, n-1) nearest other cities ordered by distance,
/// ties by lower index.
class NeighborLists {
 public:
  NeighborLists(const Instance& inst, int k);

  int k() const { return k_; }
  int size() const { return n_; }
  std::span<const int> operator[](int city) const {
    return {flat_.data() + static_cast<std::size_t>(city) * k_, static_cast<std::size_t>(k_)};
  }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<int> flat_;
};

/// Throws std::invalid_argument when k < 1.
NeighborLists build_neighbor_lists(const Instance& inst, int k);

/// 2-opt local search. The result is never longer than `t`.
Tour two_opt_ls(Tour t, const Instance& inst, const NeighborLists& nl);

/// 3-opt local search over sequential moves; 2-opt moves found on the way
/// are applied as well, so the result is also 2-optimal w.r.t. the lists.
Tour three_opt_ls(Tour t, const Instance& inst, const NeighborLists& nl);

}  // namespace tspga
