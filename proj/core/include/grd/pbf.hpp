#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "grd/labeling.hpp"
#include "grd/rational.hpp"

namespace grd {

// Pseudo-boolean function given by its full value table, indexed by
// BinaryLabeling rank.
struct PBFTable {
  int n = 0;
  std::vector<Rational> values;

  PBFTable() = default;
  explicit PBFTable(int n_) : n(n_), values(pow2(n_)) {}

  const Rational& eval(const BinaryLabeling& x) const {
    if (x.size() != n) throw std::invalid_argument("PBFTable::eval: dimension mismatch");
    return values[x.rank()];
  }
  Rational& at_rank(uint64_t r) { return values[r]; }
  const Rational& at_rank(uint64_t r) const { return values[r]; }
};

MinScan brute_min(const PBFTable& f);

// 2x2 value table of a pairwise term, v[a][b] = value at (x_i, x_j) = (a, b).
struct PairwiseTable {
  std::array<std::array<Rational, 2>, 2> v;
  PairwiseTable transpose() const;
  friend bool operator==(const PairwiseTable&, const PairwiseTable&) = default;
};

// t(0,0) + t(1,1) <= t(0,1) + t(1,0)
bool edge_is_submodular(const PairwiseTable& t);

// Quadratic pseudo-boolean function: constant + unary value tables +
// at most one pairwise table per node pair.
class QuadraticPBF {
 public:
  QuadraticPBF() = default;
  explicit QuadraticPBF(int n) : n_(n), unary_(n) {}

  int size() const { return n_; }
  Rational& constant() { return constant_; }
  const Rational& constant() const { return constant_; }
  std::array<Rational, 2>& unary(int i) { return unary_[i]; }
  const std::array<Rational, 2>& unary(int i) const { return unary_[i]; }

  // Stores t with t[value at i][value at j]; i and j in either order.
  void set_edge(int i, int j, const PairwiseTable& t);
  void add_edge(int i, int j, const PairwiseTable& t);  // sums with any existing table
  const PairwiseTable* edge(int i, int j) const;        // nullptr if absent
  const std::map<std::pair<int, int>, PairwiseTable>& edges() const { return edges_; }

  Rational eval(const BinaryLabeling& x) const;
  PBFTable expand() const;

 private:
  int n_ = 0;
  Rational constant_;
  std::vector<std::array<Rational, 2>> unary_;
  std::map<std::pair<int, int>, PairwiseTable> edges_;  // keyed i < j
};

// Substitutes x_i := 1 - x_i.
QuadraticPBF flip_variable(const QuadraticPBF& f, int i);
// Renames nodes: result node perm[i] carries the tables of node i.
QuadraticPBF relabel_nodes(const QuadraticPBF& f, const std::vector<int>& perm);

// Multilinear polynomial; term key is a node subset mask (bit i = node i+1).
struct MultilinearPoly {
  int n = 0;
  std::map<uint32_t, Rational> terms;  // zero coefficients are dropped

  Rational eval(const BinaryLabeling& x) const;
  int degree() const;
};

MultilinearPoly to_multilinear(const PBFTable& f);
PBFTable to_table(const MultilinearPoly& p);
QuadraticPBF to_quadratic(const MultilinearPoly& p);  // requires degree <= 2

// coeff * prod_{i in pos} x_i * prod_{i in neg} (1 - x_i); masks disjoint.
struct Monomial {
  uint32_t pos = 0;
  uint32_t neg = 0;
  Rational coeff;
  Rational eval(const BinaryLabeling& x) const;
};

// f = constant + sum of monomials with all coefficients <= 0.
struct Posiform {
  int n = 0;
  Rational constant;
  std::vector<Monomial> monomials;
  Rational eval(const BinaryLabeling& x) const;
};

// Rewrites f into the form above by repeatedly splitting, at the highest
// remaining degree, positive-coefficient terms on their highest-index node.
Posiform posiform_decompose(const PBFTable& f);

}  // namespace grd
