#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mpctrf/network.hpp"

namespace mpctrf {

// Decomposition tree of a two-terminal series-parallel network. Leaves are
// arc indices; internal nodes are series or parallel compositions. The tree
// is kept in canonical form: nested nodes of the same kind are flattened,
// series children run from source to sink, parallel children are ordered by
// their smallest leaf arc index.
struct SPTree {
  enum class Kind { Leaf, Series, Parallel };

  Kind kind = Kind::Leaf;
  int arc = -1;
  std::vector<SPTree> children;

  static SPTree leaf(int arc);
  static SPTree compose(Kind kind, std::vector<SPTree> parts);

  int min_leaf() const;
  // Canonical rendering, e.g. "S(P(S(0,2),1),P(S(3,5),4))".
  std::string to_string() const;
};

// Witness that the network embeds the forbidden pattern on four nodes
// {s0, v, w, t0}: five internally disjoint paths s0->v, v->w, w->t0, s0->w,
// v->t0 (arc index lists). Any two-terminal series-parallel network excludes
// this pattern as a topological minor.
struct ForbiddenSubgraph {
  int s0 = -1, v = -1, w = -1, t0 = -1;
  std::vector<int> path_sv, path_vw, path_wt, path_sw, path_vt;
};

struct SPResult {
  bool series_parallel = false;
  std::optional<SPTree> tree;                 // present on YES
  std::optional<ForbiddenSubgraph> witness;   // present on NO for two-terminal inputs
  std::string reason;                         // NO without witness: why (not two-terminal)
};

// Decides whether the network is two-terminal series-parallel with respect to
// (source, sink) by exhaustive series/parallel reduction. YES comes with a
// decomposition tree, NO with an embedded forbidden-subgraph witness whenever
// one exists (it always does when every arc lies on a source-sink path and
// the graph is acyclic). The decision is independent of arc order.
SPResult is_series_parallel(const Network& net);

// Checks that a claimed witness really embeds the forbidden pattern: paths
// connect the right endpoints and are internally disjoint.
bool validate_forbidden_subgraph(const Network& net, const ForbiddenSubgraph& w);

}  // namespace mpctrf
