#include "grd/roofdual.hpp"

#include <algorithm>
#include <stdexcept>

namespace grd {

namespace {

BinaryLabeling to_binary(const PairLabeling& u) {
  BinaryLabeling x(u.bits());
  for (int k = 0; k < u.bits(); ++k) x.set(k, u.at(k));
  return x;
}

}  // namespace

bool is_mate_symmetric(const DoubledTable& g) {
  for (uint64_t r = 0; r < pow2(2 * g.n); ++r) {
    PairLabeling u(g.n, r);
    if (g.values[r] != g.eval(mate_flip(u))) return false;
  }
  return true;
}

bool is_submodular_table(const DoubledTable& g) {
  int bits = 2 * g.n;
  for (uint64_t r = 0; r < pow2(bits); ++r) {
    PairLabeling u(g.n, r);
    for (int i = 0; i < bits; ++i) {
      if (u.at(i)) continue;
      for (int j = i + 1; j < bits; ++j) {
        if (u.at(j)) continue;
        PairLabeling ui = u.with_one(i), uj = u.with_one(j);
        if (g.eval(u) + g.eval(ui.with_one(j)) > g.eval(ui) + g.eval(uj)) return false;
      }
    }
  }
  return true;
}

bool is_tight_relaxation(const DoubledTable& g, const PBFTable& f) {
  if (g.n != f.n) return false;
  for (uint64_t r = 0; r < pow2(f.n); ++r) {
    BinaryLabeling x(f.n, r);
    PairLabeling u(f.n);
    for (int i = 0; i < f.n; ++i) {
      u.set(i, x.at(i));
      u.set(i + f.n, 1 - x.at(i));
    }
    if (g.eval(u) != f.values[r]) return false;
  }
  return true;
}

SymmetricQuadratic::SymmetricQuadratic(int classes, QuadraticPBF q) : n_(classes), q_(std::move(q)) {
  if (q_.size() != 2 * n_)
    throw std::invalid_argument("SymmetricQuadratic needs a quadratic over 2n nodes");
}

Rational SymmetricQuadratic::eval(const PairLabeling& u) const {
  return q_.eval(to_binary(u));
}

HalfFunction SymmetricQuadratic::to_half_function() const {
  HalfFunction g(n_);
  for (uint64_t r = 0; r < pow3(n_); ++r) g.values[r] = eval_half(HalfLabeling(n_, r));
  return g;
}

DoubledTable SymmetricQuadratic::expand() const {
  DoubledTable t(n_);
  for (uint64_t r = 0; r < pow2(2 * n_); ++r) t.values[r] = eval(PairLabeling(n_, r));
  return t;
}

bool SymmetricQuadratic::symmetric_exhaustive() const {
  return is_mate_symmetric(expand());
}

bool SymmetricQuadratic::all_edges_submodular() const {
  for (const auto& [key, t] : q_.edges())
    if (!edge_is_submodular(t)) return false;
  return true;
}

SymmetricQuadratic build_roofdual(const QuadraticPBF& f) {
  int n = f.size();
  QuadraticPBF q(2 * n);
  q.constant() = f.constant();
  Rational half(1, 2);
  for (int i = 0; i < n; ++i) {
    const auto& fi = f.unary(i);
    q.unary(i) = {half * fi[0], half * fi[1]};
    q.unary(i + n) = {half * fi[1], half * fi[0]};
  }
  for (const auto& [key, t] : f.edges()) {
    auto [i, j] = key;
    PairwiseTable a, b;
    if (edge_is_submodular(t)) {
      // half weight on (i, j), complemented copy on the mates
      for (int p = 0; p < 2; ++p)
        for (int s = 0; s < 2; ++s) {
          a.v[p][s] = half * t.v[p][s];
          b.v[p][s] = half * t.v[1 - p][1 - s];
        }
      q.add_edge(i, j, a);
      q.add_edge(i + n, j + n, b);
    } else {
      // couple each node with the other's mate, complementing one side
      for (int p = 0; p < 2; ++p)
        for (int s = 0; s < 2; ++s) {
          a.v[p][s] = half * t.v[p][1 - s];
          b.v[p][s] = half * t.v[1 - p][s];
        }
      q.add_edge(i, j + n, a);
      q.add_edge(i + n, j, b);
    }
  }
  return SymmetricQuadratic(n, std::move(q));
}

SymmetricQuadratic flip_variable(const SymmetricQuadratic& g, int i) {
  if (i < 0 || i >= g.classes()) throw std::invalid_argument("flip_variable: bad class");
  std::vector<int> perm(2 * g.classes());
  for (int k = 0; k < 2 * g.classes(); ++k) perm[k] = k;
  std::swap(perm[i], perm[i + g.classes()]);
  return SymmetricQuadratic(g.classes(), relabel_nodes(g.quad(), perm));
}

DoubledTable half_sum_relaxation(const PBFTable& f) {
  int n = f.n;
  DoubledTable g(n);
  Rational half(1, 2);
  for (uint64_t r = 0; r < pow2(2 * n); ++r) {
    PairLabeling u(n, r);
    BinaryLabeling x(n), ybar(n);
    for (int i = 0; i < n; ++i) {
      x.set(i, u.at(i));
      ybar.set(i, 1 - u.at(i + n));
    }
    g.values[r] = half * (f.eval(x) + f.eval(ybar));
  }
  return g;
}

static bool table_submodular(const PBFTable& f) {
  for (uint64_t r = 0; r < pow2(f.n); ++r) {
    BinaryLabeling x(f.n, r);
    for (int i = 0; i < f.n; ++i) {
      if (x.at(i)) continue;
      for (int j = i + 1; j < f.n; ++j) {
        if (x.at(j)) continue;
        BinaryLabeling xi = x, xj = x, xij = x;
        xi.set(i, 1);
        xj.set(j, 1);
        xij.set(i, 1);
        xij.set(j, 1);
        if (f.eval(x) + f.eval(xij) > f.eval(xi) + f.eval(xj)) return false;
      }
    }
  }
  return true;
}

DoubledTable build_submodular_relaxation(const PBFTable& f) {
  int n = f.n;
  // a submodular f needs no decomposition: its half-sum already works
  if (table_submodular(f)) return half_sum_relaxation(f);
  Posiform pf = posiform_decompose(f);
  DoubledTable g(n);
  Rational half(1, 2);
  for (uint64_t r = 0; r < pow2(2 * n); ++r) {
    PairLabeling u(n, r);
    Rational total = pf.constant;
    for (const Monomial& m : pf.monomials) {
      // flip the negated literals of m, relax the resulting nonpositive
      // positive-literal monomial as a half-sum, and flip back: the net
      // effect reads, per flipped node, the mate's complement.
      Rational mx = m.coeff, my = m.coeff;
      for (int i = 0; i < n; ++i) {
        uint32_t bit = uint32_t(1) << i;
        if (m.pos & bit) {
          if (!u.at(i)) mx = 0;                // x side reads u_i
          if (u.at(i + n)) my = 0;             // y side reads 1 - u_{i'}
        } else if (m.neg & bit) {
          if (!u.at(i + n)) mx = 0;            // flipped: x side reads u_{i'}
          if (u.at(i)) my = 0;                 // flipped: y side reads 1 - u_i
        }
      }
      total += half * (mx + my);
    }
    g.values[r] = total;
  }
  return g;
}

FlowNetwork to_flow_network(const SymmetricQuadratic& g) {
  const QuadraticPBF& q = g.quad();
  int nodes = q.size();
  FlowNetwork net(nodes + 2, nodes, nodes + 1);
  Rational offset = q.constant();
  std::vector<std::array<Rational, 2>> unary(nodes);
  for (int i = 0; i < nodes; ++i) unary[i] = q.unary(i);
  for (const auto& [key, t] : q.edges()) {
    if (!edge_is_submodular(t))
      throw std::invalid_argument("to_flow_network: non-submodular pairwise term");
    auto [i, j] = key;
    // t(a,b) = t00 + (t10-t00)[a=1] + (t11-t10)[b=1] + (t01+t10-t00-t11)[a=0][b=1]
    offset += t.v[0][0];
    unary[i][1] += t.v[1][0] - t.v[0][0];
    unary[j][1] += t.v[1][1] - t.v[1][0];
    net.add_arc(j, i, t.v[0][1] + t.v[1][0] - t.v[0][0] - t.v[1][1]);
  }
  for (int i = 0; i < nodes; ++i) {
    Rational lo = min(unary[i][0], unary[i][1]);
    offset += lo;
    // residual at label 0 cut by arc source->i; at label 1 by i->sink
    net.add_arc(nodes, i, unary[i][0] - lo);
    net.add_arc(i, nodes + 1, unary[i][1] - lo);
  }
  net.offset = offset;
  return net;
}

RoofDualResult solve_roofdual(const QuadraticPBF& f) {
  SymmetricQuadratic g = build_roofdual(f);
  FlowNetwork net = to_flow_network(g);
  MaxflowResult mf = maxflow(net);
  RoofDualResult out;
  out.augmentations = mf.augmentations;
  out.bound = mf.flow_value + net.offset;
  int n = f.size();
  PairLabeling u(n);
  for (int k = 0; k < 2 * n; ++k) u.set(k, mf.source_side[k]);
  // u meet its flip lands in Xminus even when u itself is not there
  PairLabeling uf = mate_flip(u);
  out.minimizer = PairLabeling(n);
  for (int k = 0; k < 2 * n; ++k) out.minimizer.set(k, u.at(k) & uf.at(k));
  out.xhat = decode_pair(out.minimizer);
  for (int i = 0; i < n; ++i)
    if (out.xhat.at(i) != HalfLabeling::kHalf) out.persistent.push_back(i);
  return out;
}

DoubledTable eliminate_auxiliary(const DoubledTable& g, int k) {
  if (k == 0) return g;
  int n = g.n - k;
  if (n < 0) throw std::invalid_argument("eliminate_auxiliary: too many aux classes");
  require_enumerable(pow2(2 * k), "eliminate_auxiliary");
  DoubledTable out(n);
  for (uint64_t r = 0; r < pow2(2 * n); ++r) {
    PairLabeling u(n, r);
    Rational best;
    bool first = true;
    for (uint64_t a = 0; a < pow2(2 * k); ++a) {
      PairLabeling aux(k, a);
      PairLabeling full(g.n);
      for (int i = 0; i < n; ++i) {
        full.set(i, u.at(i));
        full.set(i + g.n, u.at(i + n));
      }
      for (int i = 0; i < k; ++i) {
        full.set(n + i, aux.at(i));
        full.set(n + i + g.n, aux.at(i + k));
      }
      Rational v = g.eval(full);
      if (first || v < best) {
        best = v;
        first = false;
      }
    }
    out.values[r] = best;
  }
  return out;
}

bool modularity_identity_holds(const QuadraticPBF& f, const PairLabeling& u, int i, int j) {
  int n = f.size();
  if (u.classes() != n) throw std::invalid_argument("labeling size mismatch");
  if (i == j || i < 0 || j < 0 || i >= 2 * n || j >= 2 * n)
    throw std::invalid_argument("need two distinct doubled nodes");
  for (int k : {i, j})
    if (u.at(k) || u.at(u.mate(k)))
      throw std::invalid_argument("node class must be labeled (0,0)");
  int ci = u.cls(i), cj = u.cls(j);
  if (ci != cj) {
    if (const PairwiseTable* t = f.edge(ci, cj)) {
      bool same_side = (i < n) == (j < n);
      bool sub = edge_is_submodular(*t);
      if (same_side && sub)
        throw std::invalid_argument("term between the classes is submodular");
      if (!same_side && !sub)
        throw std::invalid_argument("term between the classes is non-submodular");
    }
  }
  SymmetricQuadratic g = build_roofdual(f);
  Rational lhs = g.eval(u) + g.eval(u.with_one(i).with_one(j));
  Rational rhs = g.eval(u.with_one(i)) + g.eval(u.with_one(j));
  return lhs == rhs;
}

}  // namespace grd
