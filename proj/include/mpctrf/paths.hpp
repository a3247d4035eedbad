#pragma once

#include <vector>

#include "mpctrf/network.hpp"

namespace mpctrf {

// A contiguous sequence of arcs that repeats no node, i.e. a simple path or,
// when it returns to its first node, a simple cycle.
class Path {
 public:
  Path(const Network& net, std::vector<int> arcs);

  const std::vector<int>& arcs() const { return arcs_; }
  // Node sequence; one longer than arcs(). For a cycle front() == back().
  const std::vector<int>& nodes() const { return nodes_; }

  const Int& transit() const { return transit_; }
  // Transit from the path start to the tail of arcs()[i].
  const Int& transit_prefix(int i) const { return prefix_[i]; }

  bool is_cycle() const { return nodes_.front() == nodes_.back(); }
  bool is_source_sink(const Network& net) const;

  bool contains_arc(int a) const;
  // Position of arc a in the path, -1 when absent.
  int arc_position(int a) const;

  friend bool operator==(const Path& lhs, const Path& rhs) {
    return lhs.arcs_ == rhs.arcs_;
  }
  // Lexicographic by arc index sequence.
  friend bool operator<(const Path& lhs, const Path& rhs) {
    return lhs.arcs_ < rhs.arcs_;
  }

 private:
  std::vector<int> arcs_;
  std::vector<int> nodes_;
  std::vector<Int> prefix_;
  Int transit_;
};

// min(transit(p), T - transit(p)). Throws Error(HorizonExceeded) when the
// path's transit exceeds T.
Int path_weight(const Path& p, const Int& horizon);

enum class HorizonClass { Short, Long, Mixed, Unknown };

const char* horizon_class_name(HorizonClass h);

// Short:  every source-sink path has transit > T/2.
// Long:   every source-sink path has transit <= T/2.
// Mixed:  both kinds exist.
// Exact on instances whose source-sink core is acyclic (by longest/shortest
// path over the core); otherwise decided by safe bounds where possible and
// Unknown when the bounds are inconclusive. Throws Error(NoPath) when the
// sink is unreachable from the source.
HorizonClass classify_horizon(const Instance& inst);

// All simple source-sink paths in lexicographic arc-index order. Throws
// Error(PathBudgetExceeded) carrying the count found so far when there are
// more than max_paths of them.
std::vector<Path> enumerate_st_paths(const Network& net, long long max_paths);

}  // namespace mpctrf
