#include "grd/maxflow.hpp"

#include <deque>
#include <stdexcept>

namespace grd {

FlowNetwork::FlowNetwork(int nodes, int source, int sink)
    : n_(nodes), source_(source), sink_(sink) {
  if (source < 0 || sink < 0 || source >= nodes || sink >= nodes || source == sink)
    throw std::invalid_argument("bad source/sink");
}

void FlowNetwork::add_arc(int from, int to, const Rational& cap) {
  if (from < 0 || to < 0 || from >= n_ || to >= n_)
    throw std::invalid_argument("arc endpoint out of range");
  if (cap.sign() < 0) throw std::invalid_argument("negative arc capacity");
  if (cap.is_zero() || from == to) return;
  arcs_.push_back({from, to, cap});
}

MaxflowResult maxflow(const FlowNetwork& net) {
  int n = net.nodes();
  // residual arcs stored pairwise: edge 2k forward, 2k+1 reverse
  struct Res {
    int to;
    Rational cap;
  };
  std::vector<Res> res;
  std::vector<std::vector<int>> adj(n);
  for (const auto& a : net.arcs()) {
    adj[a.from].push_back((int)res.size());
    res.push_back({a.to, a.cap});
    adj[a.to].push_back((int)res.size());
    res.push_back({a.from, Rational(0)});
  }

  MaxflowResult out;
  out.flow_value = Rational(0);
  std::vector<int> via(n);
  for (;;) {
    std::vector<int> parent(n, -1);
    parent[net.source()] = net.source();
    std::deque<int> queue{net.source()};
    while (!queue.empty() && parent[net.sink()] < 0) {
      int u = queue.front();
      queue.pop_front();
      for (int e : adj[u]) {
        if (res[e].cap.is_zero() || parent[res[e].to] >= 0) continue;
        parent[res[e].to] = u;
        via[res[e].to] = e;
        queue.push_back(res[e].to);
      }
    }
    if (parent[net.sink()] < 0) break;
    Rational push = res[via[net.sink()]].cap;
    for (int v = net.sink(); v != net.source(); v = parent[v])
      push = min(push, res[via[v]].cap);
    for (int v = net.sink(); v != net.source(); v = parent[v]) {
      res[via[v]].cap -= push;
      res[via[v] ^ 1].cap += push;
    }
    out.flow_value += push;
    ++out.augmentations;
  }

  out.source_side.assign(n, 0);
  out.source_side[net.source()] = 1;
  std::deque<int> queue{net.source()};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int e : adj[u]) {
      if (res[e].cap.is_zero() || out.source_side[res[e].to]) continue;
      out.source_side[res[e].to] = 1;
      queue.push_back(res[e].to);
    }
  }
  return out;
}

Rational cut_capacity(const FlowNetwork& net, const std::vector<uint8_t>& source_side) {
  if (!source_side[net.source()] || source_side[net.sink()])
    throw std::invalid_argument("cut must separate source from sink");
  Rational total;
  for (const auto& a : net.arcs())
    if (source_side[a.from] && !source_side[a.to]) total += a.cap;
  return total;
}

}  // namespace grd
