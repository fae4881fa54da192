#pragma once

#include <vector>

#include "grd/bisub.hpp"
#include "grd/labeling.hpp"
#include "grd/maxflow.hpp"
#include "grd/pbf.hpp"
#include "grd/rational.hpp"

namespace grd {

// Function on all pair labelings of n classes (2^{2n} values, indexed by
// PairLabeling rank).
struct DoubledTable {
  int n = 0;
  std::vector<Rational> values;

  DoubledTable() = default;
  explicit DoubledTable(int n_) : n(n_), values(pow2(2 * n_)) {}

  const Rational& eval(const PairLabeling& u) const { return values[u.rank()]; }
  Rational& at_rank(uint64_t r) { return values[r]; }
  const Rational& at_rank(uint64_t r) const { return values[r]; }
};

bool is_mate_symmetric(const DoubledTable& g);
// Local exchange over the 2n-node hypercube.
bool is_submodular_table(const DoubledTable& g);
// g(x, complement(x)) == f(x) everywhere.
bool is_tight_relaxation(const DoubledTable& g, const PBFTable& f);

// Quadratic function over the doubled node set (2n nodes, node i paired
// with node i+n) that is invariant under mate_flip.
class SymmetricQuadratic {
 public:
  SymmetricQuadratic() = default;
  SymmetricQuadratic(int classes, QuadraticPBF q);

  int classes() const { return n_; }
  const QuadraticPBF& quad() const { return q_; }

  Rational eval(const PairLabeling& u) const;
  Rational eval_half(const HalfLabeling& x) const { return eval(encode_half(x)); }

  HalfFunction to_half_function() const;  // restriction to Xminus
  DoubledTable expand() const;
  bool symmetric_exhaustive() const;
  bool all_edges_submodular() const;

 private:
  int n_ = 0;
  QuadraticPBF q_;
};

// The relaxation of a quadratic f built term by term: each unary table
// is split in half over a node and its mate; each pairwise table becomes
// two half-weight copies placed on the side pairing that keeps them
// submodular. Satisfies eval(x, complement(x)) = f(x).
SymmetricQuadratic build_roofdual(const QuadraticPBF& f);

// Renames class i: swaps node i with its mate everywhere.
SymmetricQuadratic flip_variable(const SymmetricQuadratic& g, int i);

// (x, y) -> (f(x) + f(complement(y))) / 2; symmetric, tight, and
// submodular whenever f is.
DoubledTable half_sum_relaxation(const PBFTable& f);

// Tight symmetric submodular relaxation of an arbitrary f: decompose f
// into nonpositive monomials, relax each as a half-sum after flipping
// its negated literals, and flip back.
DoubledTable build_submodular_relaxation(const PBFTable& f);

// Pairwise terms must all be submodular (build_roofdual guarantees it).
FlowNetwork to_flow_network(const SymmetricQuadratic& g);

struct RoofDualResult {
  Rational bound;          // min of the relaxation over all pair labelings
  PairLabeling minimizer;  // canonical: minimal source side meet its flip
  HalfLabeling xhat;
  std::vector<int> persistent;  // 0-based nodes where xhat is integral
  int augmentations = 0;
};

RoofDualResult solve_roofdual(const QuadraticPBF& f);

// Minimizes out the last k classes (layout: n kept classes then k aux
// classes, mates alongside).
DoubledTable eliminate_auxiliary(const DoubledTable& g, int k);

// Whether g(u) + g(u | e_i | e_j) == g(u | e_i) + g(u | e_j) for
// g = build_roofdual(f). Requires u_i = u_j = 0 along with their mates,
// and the f-term between the classes of i and j, if present, to be
// non-submodular when i, j lie on the same side and submodular when
// they lie on opposite sides; throws otherwise.
bool modularity_identity_holds(const QuadraticPBF& f, const PairLabeling& u, int i, int j);

}  // namespace grd
