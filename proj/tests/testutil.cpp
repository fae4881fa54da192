#include "testutil.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace grd::test {

Rational random_rational(Rng& rng, long lo, long hi, long maxden) {
  long den = 1 + (long)(rng() % (uint64_t)maxden);
  long span = (hi - lo) * den;
  long num = lo * den + (long)(rng() % (uint64_t)(span + 1));
  return Rational(num, den);
}

HalfFunction random_half_function(Rng& rng, int n, long lo, long hi) {
  HalfFunction g(n);
  for (auto& v : g.values) v = random_rational(rng, lo, hi);
  return g;
}

PBFTable random_table(Rng& rng, int n, long lo, long hi) {
  PBFTable f(n);
  for (auto& v : f.values) v = random_rational(rng, lo, hi);
  return f;
}

QuadraticPBF random_quadratic(Rng& rng, int n, long lo, long hi, int edge_pct) {
  QuadraticPBF f(n);
  f.constant() = random_rational(rng, lo, hi);
  for (int i = 0; i < n; ++i)
    f.unary(i) = {random_rational(rng, lo, hi), random_rational(rng, lo, hi)};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if ((int)(rng() % 100) >= edge_pct) continue;
      PairwiseTable t;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) t.v[a][b] = random_rational(rng, lo, hi);
      f.set_edge(i, j, t);
    }
  return f;
}

PBFTable random_submodular_table(Rng& rng, int n) {
  MultilinearPoly p;
  p.n = n;
  p.terms[0] = random_rational(rng, -5, 5);
  for (uint32_t mask = 1; mask < (uint32_t)pow2(n); ++mask) {
    int deg = __builtin_popcount(mask);
    if (deg == 1) {
      p.terms[mask] = random_rational(rng, -5, 5);
    } else if (rng() % 100 < 60) {
      Rational c = random_rational(rng, 0, 4);
      if (!c.is_zero()) p.terms[mask] = -c;
    }
  }
  return to_table(p);
}

HalfFunction random_bisubmodular(Rng& rng, int n) {
  return build_roofdual(random_quadratic(rng, n)).to_half_function();
}

CardinalityFn random_card(Rng& rng, int n, long lo, long hi) {
  CardinalityFn G(n);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b) G.at(a, b) = random_rational(rng, lo, hi, 2);
  return G;
}

bool table_is_submodular(const PBFTable& f) {
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

HalfFunction half_restriction(const DoubledTable& g) {
  HalfFunction h(g.n);
  for (uint64_t r = 0; r < pow3(g.n); ++r)
    h.values[r] = g.eval(encode_half(HalfLabeling(g.n, r)));
  return h;
}

PairLabeling embed_binary(const BinaryLabeling& x) {
  PairLabeling u(x.size());
  for (int i = 0; i < x.size(); ++i) {
    u.set(i, x.at(i));
    u.set(i + x.size(), 1 - x.at(i));
  }
  return u;
}

Rational enumerate_min_cut(const FlowNetwork& net) {
  std::vector<int> internal;
  for (int v = 0; v < net.nodes(); ++v)
    if (v != net.source() && v != net.sink()) internal.push_back(v);
  std::optional<Rational> best;
  for (uint64_t mask = 0; mask < pow2((int)internal.size()); ++mask) {
    std::vector<uint8_t> side(net.nodes(), 0);
    side[net.source()] = 1;
    for (size_t k = 0; k < internal.size(); ++k)
      if (mask >> k & 1) side[internal[k]] = 1;
    Rational cut = cut_capacity(net, side);
    if (!best || cut < *best) best = cut;
  }
  return *best;
}

namespace {

// x = solution of rows(active) * x = rhs(active), unique or nothing
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> A,
                                                  std::vector<Rational> b) {
  size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;  // singular
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col].is_zero()) continue;
      Rational factor = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

}  // namespace

std::optional<Rational> enumerate_lp_max(const LinearProgram& lp) {
  int n = lp.num_vars();
  // candidate hyperplanes: every row taken at equality, plus every bound
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (const auto& row : lp.rows) {
    std::vector<Rational> coef(n);
    for (const auto& t : row.terms) coef[t.var] = t.coeff;
    A.push_back(coef);
    b.push_back(row.rhs);
  }
  for (int v = 0; v < n; ++v) {
    if (lp.lower[v]) {
      std::vector<Rational> coef(n);
      coef[v] = Rational(1);
      A.push_back(coef);
      b.push_back(*lp.lower[v]);
    }
    if (lp.upper[v]) {
      std::vector<Rational> coef(n);
      coef[v] = Rational(1);
      A.push_back(coef);
      b.push_back(*lp.upper[v]);
    }
  }
  size_t m = A.size();
  std::optional<Rational> best;
  std::vector<size_t> pick(n);
  // all size-n subsets of the m hyperplanes
  auto walk = [&](auto&& self, size_t start, int depth) -> void {
    if (depth == n) {
      std::vector<std::vector<Rational>> sq(n);
      std::vector<Rational> rhs(n);
      for (int k = 0; k < n; ++k) {
        sq[k] = A[pick[k]];
        rhs[k] = b[pick[k]];
      }
      auto x = solve_square(sq, rhs);
      if (!x || !satisfies(lp, *x)) return;
      Rational val = objective_value(lp, *x);
      if (!best || val > *best) best = val;
      return;
    }
    for (size_t i = start; i + (n - depth - 1) < m; ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  if (n == 0) return Rational(0);
  walk(walk, 0, 0);
  return best;
}

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(GRD_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  CliResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int rc = pclose(pipe);
  res.exit_code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  return res;
}

std::string data_dir() { return GRD_DATA_DIR; }

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = std::string("/tmp/grdtest_") + name;
  std::ofstream out(path);
  out << body;
  if (!out) throw std::runtime_error("cannot write " + path);
  return path;
}

}  // namespace grd::test
