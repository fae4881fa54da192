#pragma once

#include <cstdint>
#include <vector>

#include "grd/rational.hpp"

namespace grd {

// s-t flow network with exact rational capacities. Nodes are 0-based;
// source and sink are separate designated nodes.
class FlowNetwork {
 public:
  FlowNetwork(int nodes, int source, int sink);

  int nodes() const { return n_; }
  int source() const { return source_; }
  int sink() const { return sink_; }

  // Adds a directed arc; parallel arcs allowed, zero capacities dropped.
  void add_arc(int from, int to, const Rational& cap);

  struct Arc {
    int from, to;
    Rational cap;
  };
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Constant carried alongside the network by reductions.
  Rational offset;

 private:
  int n_, source_, sink_;
  std::vector<Arc> arcs_;
};

struct MaxflowResult {
  Rational flow_value;
  std::vector<uint8_t> source_side;  // per node; nodes reachable in the residual
  int augmentations = 0;
};

// Shortest-augmenting-path maxflow. source_side is the set of nodes
// reachable from the source in the final residual network, which is the
// inclusion-minimal minimum cut.
MaxflowResult maxflow(const FlowNetwork& net);

// Total capacity of arcs leaving the given source side (cut value).
Rational cut_capacity(const FlowNetwork& net, const std::vector<uint8_t>& source_side);

}  // namespace grd
