#include "grd/pbf.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace grd {

namespace {

// BinaryLabeling ranks put node 1 at the most significant position;
// subset masks put node i at bit i-1. Transforms work in mask space.
uint64_t rank_to_mask(uint64_t rank, int n) {
  uint64_t m = 0;
  for (int i = 0; i < n; ++i)
    if (rank >> (n - 1 - i) & 1) m |= uint64_t(1) << i;
  return m;
}

}  // namespace

MinScan brute_min(const PBFTable& f) {
  require_enumerable(pow2(f.n), "brute_min over binary labelings");
  return min_over(pow2(f.n), [&](uint64_t r) { return f.values[r]; });
}

PairwiseTable PairwiseTable::transpose() const {
  PairwiseTable t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) t.v[a][b] = v[b][a];
  return t;
}

bool edge_is_submodular(const PairwiseTable& t) {
  return t.v[0][0] + t.v[1][1] <= t.v[0][1] + t.v[1][0];
}

void QuadraticPBF::set_edge(int i, int j, const PairwiseTable& t) {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::invalid_argument("set_edge: bad node pair");
  auto key = std::minmax(i, j);
  if (edges_.count({key.first, key.second}))
    throw std::invalid_argument("set_edge: duplicate edge");
  edges_[{key.first, key.second}] = i < j ? t : t.transpose();
}

void QuadraticPBF::add_edge(int i, int j, const PairwiseTable& t) {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::invalid_argument("add_edge: bad node pair");
  auto key = std::minmax(i, j);
  PairwiseTable oriented = i < j ? t : t.transpose();
  auto it = edges_.find({key.first, key.second});
  if (it == edges_.end()) {
    edges_[{key.first, key.second}] = oriented;
  } else {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) it->second.v[a][b] += oriented.v[a][b];
  }
}

const PairwiseTable* QuadraticPBF::edge(int i, int j) const {
  auto key = std::minmax(i, j);
  auto it = edges_.find({key.first, key.second});
  return it == edges_.end() ? nullptr : &it->second;
}

Rational QuadraticPBF::eval(const BinaryLabeling& x) const {
  if (x.size() != n_) throw std::invalid_argument("QuadraticPBF::eval: dimension mismatch");
  Rational v = constant_;
  for (int i = 0; i < n_; ++i) v += unary_[i][x.at(i)];
  for (const auto& [key, t] : edges_) v += t.v[x.at(key.first)][x.at(key.second)];
  return v;
}

PBFTable QuadraticPBF::expand() const {
  PBFTable f(n_);
  for (uint64_t r = 0; r < pow2(n_); ++r) f.values[r] = eval(BinaryLabeling(n_, r));
  return f;
}

QuadraticPBF flip_variable(const QuadraticPBF& f, int i) {
  QuadraticPBF g(f.size());
  g.constant() = f.constant();
  for (int k = 0; k < f.size(); ++k) g.unary(k) = f.unary(k);
  std::swap(g.unary(i)[0], g.unary(i)[1]);
  for (const auto& [key, t] : f.edges()) {
    PairwiseTable u = t;
    if (key.first == i) {
      std::swap(u.v[0], u.v[1]);
    } else if (key.second == i) {
      for (int a = 0; a < 2; ++a) std::swap(u.v[a][0], u.v[a][1]);
    }
    g.set_edge(key.first, key.second, u);
  }
  return g;
}

QuadraticPBF relabel_nodes(const QuadraticPBF& f, const std::vector<int>& perm) {
  QuadraticPBF g(f.size());
  g.constant() = f.constant();
  for (int i = 0; i < f.size(); ++i) g.unary(perm[i]) = f.unary(i);
  for (const auto& [key, t] : f.edges()) g.set_edge(perm[key.first], perm[key.second], t);
  return g;
}

Rational MultilinearPoly::eval(const BinaryLabeling& x) const {
  uint64_t m = rank_to_mask(x.rank(), n);
  Rational v;
  for (const auto& [mask, c] : terms)
    if ((mask & ~m) == 0) v += c;
  return v;
}

int MultilinearPoly::degree() const {
  int d = 0;
  for (const auto& [mask, c] : terms) d = std::max(d, std::popcount(mask));
  return d;
}

MultilinearPoly to_multilinear(const PBFTable& f) {
  uint64_t sz = pow2(f.n);
  std::vector<Rational> c(sz);
  for (uint64_t r = 0; r < sz; ++r) c[rank_to_mask(r, f.n)] = f.values[r];
  for (int i = 0; i < f.n; ++i)
    for (uint64_t m = 0; m < sz; ++m)
      if (m >> i & 1) c[m] -= c[m ^ (uint64_t(1) << i)];
  MultilinearPoly p;
  p.n = f.n;
  for (uint64_t m = 0; m < sz; ++m)
    if (!c[m].is_zero()) p.terms[(uint32_t)m] = c[m];
  return p;
}

PBFTable to_table(const MultilinearPoly& p) {
  uint64_t sz = pow2(p.n);
  std::vector<Rational> g(sz);
  for (const auto& [mask, coeff] : p.terms) g[mask] = coeff;
  for (int i = 0; i < p.n; ++i)
    for (uint64_t m = 0; m < sz; ++m)
      if (m >> i & 1) g[m] += g[m ^ (uint64_t(1) << i)];
  PBFTable f(p.n);
  for (uint64_t r = 0; r < sz; ++r) f.values[r] = g[rank_to_mask(r, p.n)];
  return f;
}

QuadraticPBF to_quadratic(const MultilinearPoly& p) {
  QuadraticPBF q(p.n);
  for (const auto& [mask, c] : p.terms) {
    int d = std::popcount(mask);
    if (d > 2) throw std::invalid_argument("to_quadratic: degree above two");
    if (d == 0) {
      q.constant() += c;
    } else if (d == 1) {
      q.unary(std::countr_zero(mask))[1] += c;
    } else {
      int i = std::countr_zero(mask);
      int j = std::countr_zero(mask & (mask - 1));
      PairwiseTable t;
      t.v[1][1] = c;
      q.add_edge(i, j, t);
    }
  }
  return q;
}

Rational Monomial::eval(const BinaryLabeling& x) const {
  uint64_t m = rank_to_mask(x.rank(), x.size());
  if ((pos & ~m) != 0) return Rational(0);
  if ((neg & m) != 0) return Rational(0);
  return coeff;
}

Rational Posiform::eval(const BinaryLabeling& x) const {
  Rational v = constant;
  for (const Monomial& t : monomials) v += t.eval(x);
  return v;
}

Posiform posiform_decompose(const PBFTable& f) {
  MultilinearPoly p = to_multilinear(f);
  // generalized monomials keyed (pos mask, neg mask)
  std::map<std::pair<uint32_t, uint32_t>, Rational> terms;
  Rational constant;
  for (const auto& [mask, c] : p.terms) {
    if (mask == 0) constant += c;
    else terms[{mask, 0}] = c;
  }
  for (;;) {
    // positive term of highest degree, ties by support mask then neg mask
    const std::pair<uint32_t, uint32_t>* pick = nullptr;
    int pick_deg = -1;
    for (const auto& [key, c] : terms) {
      if (c.sign() <= 0) continue;
      int d = std::popcount(key.first | key.second);
      bool better = d > pick_deg;
      if (!better && d == pick_deg) {
        uint32_t sup = key.first | key.second, psup = pick->first | pick->second;
        better = sup < psup || (sup == psup && key.second < pick->second);
      }
      if (better) {
        pick = &key;
        pick_deg = d;
      }
    }
    if (!pick) break;
    auto key = *pick;
    Rational c = terms[key];
    terms.erase(key);
    uint32_t support = key.first | key.second;
    uint32_t hi = std::bit_floor(support);  // highest-index node of the term
    // c * l * R  ->  c * R  -  c * lbar * R   (l the highest literal)
    std::pair<uint32_t, uint32_t> rest = {key.first & ~hi, key.second & ~hi};
    std::pair<uint32_t, uint32_t> flipped =
        key.first & hi ? std::pair<uint32_t, uint32_t>{rest.first, rest.second | hi}
                       : std::pair<uint32_t, uint32_t>{rest.first | hi, rest.second};
    if (rest.first == 0 && rest.second == 0) {
      constant += c;
    } else {
      terms[rest] += c;
      if (terms[rest].is_zero()) terms.erase(rest);
    }
    terms[flipped] -= c;
    if (terms[flipped].is_zero()) terms.erase(flipped);
  }
  Posiform out;
  out.n = f.n;
  out.constant = constant;
  for (const auto& [key, c] : terms)
    if (!c.is_zero()) out.monomials.push_back({key.first, key.second, c});
  return out;
}

}  // namespace grd
