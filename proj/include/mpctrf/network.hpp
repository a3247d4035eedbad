#pragma once

#include <string>
#include <vector>

#include "mpctrf/rational.hpp"

namespace mpctrf {

// Directed arc with nonnegative integer capacity, transit time and cost rate.
// Parallel arcs are allowed and distinguished by arc index.
struct Arc {
  int tail = -1;
  int head = -1;
  Int capacity;
  Int transit;
  Int cost;
};

// Directed multigraph with a source and a sink. Arc indices follow the order
// in which arcs were supplied; that order is part of the interface (it drives
// every lexicographic tie-break in the library).
class Network {
 public:
  Network(std::vector<std::string> node_names, int source, int sink,
          std::vector<Arc> arcs);

  int node_count() const { return static_cast<int>(node_names_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  int source() const { return source_; }
  int sink() const { return sink_; }

  const Arc& arc(int a) const { return arcs_[a]; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  const std::string& node_name(int v) const { return node_names_[v]; }
  const std::vector<std::string>& node_names() const { return node_names_; }
  // Returns -1 when no node has this name.
  int node_index(const std::string& name) const;

  // Arc indices leaving/entering v, in increasing index order.
  const std::vector<int>& out_arcs(int v) const { return out_[v]; }
  const std::vector<int>& in_arcs(int v) const { return in_[v]; }

  bool unit_cost() const;

  // True when the subgraph of nodes that both are reachable from the source
  // and can reach the sink is acyclic. Paths live in that subgraph, so this
  // is the acyclicity notion the path operations care about.
  bool core_acyclic() const;

  // Sum of capacities of arcs leaving the source.
  Int source_out_capacity() const;

 private:
  std::vector<std::string> node_names_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// A problem instance: network plus time horizon T and demand D.
struct Instance {
  Network network;
  Int horizon;
  Rat demand;
};

// JSON instance document:
//   {"nodes": [...], "source": "s", "sink": "t",
//    "arcs": [{"tail","head","capacity","transit","cost"}, ...],
//    "horizon": 6, "demand": "13/2"}
// Arc order in the document defines arc indices. Rationals are serialized as
// integers or "p/q" strings.
Instance parse_instance(const std::string& json_text);
std::string serialize_instance(const Instance& inst);

}  // namespace mpctrf
