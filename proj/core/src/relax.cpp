#include "grd/relax.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

namespace grd {

namespace {

TableRow finish_row(std::map<uint64_t, Rational> acc) {
  TableRow row;
  for (auto& [k, c] : acc)
    if (!c.is_zero()) row.terms.push_back({k, std::move(c)});
  return row;
}

// Shared plumbing: table keys either become LP variables or carry a
// pinned value that moves to the right-hand side.
struct TableLP {
  LinearProgram lp;
  std::map<uint64_t, int> var;
  std::map<uint64_t, Rational> fixed;

  void add_exchange_row(const TableRow& row, std::string name) {
    LPRow r;
    r.rel = Relation::LessEq;
    for (const auto& [key, c] : row.terms) {
      auto it = fixed.find(key);
      if (it != fixed.end())
        r.rhs -= c * it->second;
      else
        r.terms.push_back({var.at(key), c});
    }
    if (r.terms.empty() && r.rhs.sign() >= 0) return;  // vacuous constant row
    r.name = std::move(name);
    lp.add_row(std::move(r));
  }
};

std::string pair_name(const PairLabeling& u) { return "u" + u.str(); }

}  // namespace

std::vector<TableRow> gen_bisub_constraints(int n) {
  require_enumerable(pow3(n), "gen_bisub_constraints");
  std::vector<TableRow> rows;
  for (uint64_t hr = 0; hr < pow3(n); ++hr) {
    PairLabeling w = encode_half(HalfLabeling(n, hr));
    std::vector<int> open;  // doubled nodes whose class sits at (0,0)
    for (int k = 0; k < w.bits(); ++k)
      if (!w.at(k) && !w.at(w.mate(k))) open.push_back(k);
    for (size_t a = 0; a < open.size(); ++a)
      for (size_t b = a + 1; b < open.size(); ++b) {
        PairLabeling u = w.with_one(open[a]);
        PairLabeling v = w.with_one(open[b]);
        PairLabeling jn = reduce_pairs(u.with_one(open[b]));
        std::map<uint64_t, Rational> acc;
        acc[decode_pair(w).rank()] += 1;
        acc[decode_pair(jn).rank()] += 1;
        acc[decode_pair(u).rank()] += -1;
        acc[decode_pair(v).rank()] += -1;
        TableRow row = finish_row(std::move(acc));
        if (!row.terms.empty()) rows.push_back(std::move(row));
      }
  }
  return rows;
}

uint64_t orbit_rep(const PairLabeling& u) {
  return std::min(u.rank(), mate_flip(u).rank());
}

std::vector<uint64_t> mate_orbits(int n) {
  require_enumerable(pow2(2 * n), "mate_orbits");
  std::vector<uint64_t> reps;
  for (uint64_t r = 0; r < pow2(2 * n); ++r)
    if (orbit_rep(PairLabeling(n, r)) == r) reps.push_back(r);
  return reps;
}

std::vector<TableRow> gen_submodular_constraints(int n) {
  require_enumerable(pow2(2 * n), "gen_submodular_constraints");
  std::vector<TableRow> rows;
  std::set<std::vector<std::pair<uint64_t, Rational>>> seen;
  for (uint64_t r = 0; r < pow2(2 * n); ++r) {
    PairLabeling u(n, r);
    for (int i = 0; i < 2 * n; ++i) {
      if (u.at(i)) continue;
      for (int j = i + 1; j < 2 * n; ++j) {
        if (u.at(j)) continue;
        PairLabeling ui = u.with_one(i), uj = u.with_one(j);
        std::map<uint64_t, Rational> acc;
        acc[orbit_rep(u)] += 1;
        acc[orbit_rep(ui.with_one(j))] += 1;
        acc[orbit_rep(ui)] += -1;
        acc[orbit_rep(uj)] += -1;
        TableRow row = finish_row(std::move(acc));
        if (row.terms.empty()) continue;
        if (seen.insert(row.terms).second) rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

TightestResult tightest_relaxation(const PBFTable& f, RelaxationClass cls) {
  int n = f.n;
  TightestResult out;
  out.cls = cls;
  TableLP t;
  if (cls == RelaxationClass::Bisubmodular) {
    for (uint64_t hr = 0; hr < pow3(n); ++hr) {
      HalfLabeling x(n, hr);
      if (x.is_integral())
        t.fixed[hr] = f.eval(x.to_binary());
      else
        t.var[hr] = t.lp.add_var("g" + x.str());
    }
    int tv = t.lp.add_var("t");
    t.lp.objective[tv] = 1;
    for (uint64_t hr = 0; hr < pow3(n); ++hr) {
      LPRow r;
      r.rel = Relation::LessEq;
      r.terms.push_back({tv, Rational(1)});
      auto it = t.fixed.find(hr);
      if (it != t.fixed.end())
        r.rhs = it->second;
      else
        r.terms.push_back({t.var.at(hr), Rational(-1)});
      r.name = "t<=g" + HalfLabeling(n, hr).str();
      t.lp.add_row(std::move(r));
    }
    int k = 0;
    for (const TableRow& row : gen_bisub_constraints(n))
      t.add_exchange_row(row, "xchg" + std::to_string(k++));
    LPResult res = simplex_solve(t.lp);
    if (res.status != LPStatus::Optimal)
      throw std::logic_error("tightest relaxation: solvable system expected");
    out.tstar = res.value;
    out.pivots = res.pivots;
    out.bisub = HalfFunction(n);
    for (uint64_t hr = 0; hr < pow3(n); ++hr) {
      auto it = t.fixed.find(hr);
      out.bisub.values[hr] = it != t.fixed.end() ? it->second : res.x[t.var.at(hr)];
    }
  } else {
    std::vector<uint64_t> reps = mate_orbits(n);
    for (uint64_t rep : reps) {
      PairLabeling u(n, rep);
      if (classify(u) == DomainClass::Xcircle) {
        BinaryLabeling x(n);
        for (int i = 0; i < n; ++i) x.set(i, u.at(i));
        t.fixed[rep] = f.eval(x);
      } else {
        t.var[rep] = t.lp.add_var(pair_name(u));
      }
    }
    int tv = t.lp.add_var("t");
    t.lp.objective[tv] = 1;
    for (uint64_t rep : reps) {
      LPRow r;
      r.rel = Relation::LessEq;
      r.terms.push_back({tv, Rational(1)});
      auto it = t.fixed.find(rep);
      if (it != t.fixed.end())
        r.rhs = it->second;
      else
        r.terms.push_back({t.var.at(rep), Rational(-1)});
      r.name = "t<=" + pair_name(PairLabeling(n, rep));
      t.lp.add_row(std::move(r));
    }
    int k = 0;
    for (const TableRow& row : gen_submodular_constraints(n))
      t.add_exchange_row(row, "xchg" + std::to_string(k++));
    LPResult res = simplex_solve(t.lp);
    if (res.status != LPStatus::Optimal)
      throw std::logic_error("tightest relaxation: solvable system expected");
    out.tstar = res.value;
    out.pivots = res.pivots;
    out.submod = DoubledTable(n);
    for (uint64_t r = 0; r < pow2(2 * n); ++r) {
      uint64_t rep = orbit_rep(PairLabeling(n, r));
      auto it = t.fixed.find(rep);
      out.submod.values[r] = it != t.fixed.end() ? it->second : res.x[t.var.at(rep)];
    }
  }
  return out;
}

namespace {

// count signature of a pair labeling: classes at (0,1), (1,0), (0,0), (1,1)
std::array<int, 4> signature_of(const PairLabeling& u) {
  std::array<int, 4> s{0, 0, 0, 0};
  for (int i = 0; i < u.classes(); ++i) {
    int a = u.at(i), b = u.at(i + u.classes());
    if (a == 0 && b == 1) s[0]++;
    else if (a == 1 && b == 0) s[1]++;
    else if (a == 0 && b == 0) s[2]++;
    else s[3]++;
  }
  return s;
}

// mate_flip swaps the (0,0) and (1,1) counts; the rep keeps n00 <= n11
std::array<int, 4> signature_rep(std::array<int, 4> s) {
  if (s[2] > s[3]) std::swap(s[2], s[3]);
  return s;
}

uint64_t signature_code(const std::array<int, 4>& s, int n) {
  uint64_t k = n + 1, c = 0;
  for (int v : s) c = c * k + uint64_t(v);
  return c;
}

std::string signature_name(const std::array<int, 4>& s) {
  std::string out = "G(";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

// value of g at a half labeling with the given zero/one/half counts
Rational card_value(const HalfFunction& g, int zeros, int ones, int halves) {
  HalfLabeling x(g.n);
  int p = 0;
  for (int k = 0; k < zeros; ++k) x.set(p++, HalfLabeling::kZero);
  for (int k = 0; k < ones; ++k) x.set(p++, HalfLabeling::kOne);
  for (int k = 0; k < halves; ++k) x.set(p++, HalfLabeling::kHalf);
  return g.eval(x);
}

}  // namespace

ExtensionResult extension_feasible(const HalfFunction& g, bool symmetrize) {
  int n = g.n;
  require_enumerable(pow2(2 * n), "extension_feasible");
  ExtensionResult out;
  TableLP t;
  // key for a doubled point: orbit rep rank, or the count-signature code
  auto key_of = [&](const PairLabeling& u) -> uint64_t {
    if (symmetrize) return signature_code(signature_rep(signature_of(u)), n);
    return orbit_rep(u);
  };
  if (symmetrize) {
    // g must depend only on the zero/one counts
    std::map<std::pair<int, int>, Rational> by_count;
    for (uint64_t hr = 0; hr < pow3(n); ++hr) {
      HalfLabeling x(n, hr);
      int zeros = 0, ones = 0;
      for (int i = 0; i < n; ++i) {
        if (x.at(i) == HalfLabeling::kZero) zeros++;
        if (x.at(i) == HalfLabeling::kOne) ones++;
      }
      auto [it, fresh] = by_count.insert({{zeros, ones}, g.values[hr]});
      if (!fresh && it->second != g.values[hr])
        throw std::invalid_argument("symmetrize requires a cardinality-dependent function");
    }
    // signatures (n01, n10, n00, n11) with n00 <= n11; n00 = 0 pins the
    // value through the X^* side, n00 >= 1 is free
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b)
        for (int c = 0; a + b + c <= n; ++c) {
          int d = n - a - b - c;
          std::array<int, 4> s{a, b, c, d};
          if (signature_rep(s) != s) continue;
          uint64_t code = signature_code(s, n);
          if (c == 0)
            t.fixed[code] = card_value(g, a, b, d);
          else
            t.var[code] = t.lp.add_var(signature_name(s));
        }
  } else {
    for (uint64_t rep : mate_orbits(n)) {
      PairLabeling u(n, rep);
      if (in_xstar(u))
        t.fixed[rep] = g.eval_star(u);
      else
        t.var[rep] = t.lp.add_var(pair_name(u));
    }
  }
  // local submodularity rows over the doubled cube, mapped through keys
  std::set<std::pair<std::vector<std::pair<int, Rational>>, Rational>> seen;
  for (uint64_t r = 0; r < pow2(2 * n); ++r) {
    PairLabeling u(n, r);
    for (int i = 0; i < 2 * n; ++i) {
      if (u.at(i)) continue;
      for (int j = i + 1; j < 2 * n; ++j) {
        if (u.at(j)) continue;
        PairLabeling ui = u.with_one(i), uj = u.with_one(j);
        std::map<uint64_t, Rational> acc;
        acc[key_of(u)] += 1;
        acc[key_of(ui.with_one(j))] += 1;
        acc[key_of(ui)] += -1;
        acc[key_of(uj)] += -1;
        // split into variable part and constant right-hand side
        std::vector<std::pair<int, Rational>> terms;
        Rational rhs;
        for (auto& [key, c] : acc) {
          if (c.is_zero()) continue;
          auto it = t.fixed.find(key);
          if (it != t.fixed.end())
            rhs -= c * it->second;
          else
            terms.push_back({t.var.at(key), c});
        }
        if (terms.empty() && rhs.sign() >= 0) continue;
        if (!seen.insert({terms, rhs}).second) continue;
        LPRow row;
        row.rel = Relation::LessEq;
        row.rhs = rhs;
        row.name = u.str() + "+" + std::to_string(i) + "+" + std::to_string(j);
        for (auto& [v, c] : terms) row.terms.push_back({v, c});
        t.lp.add_row(std::move(row));
      }
    }
  }
  if (t.lp.num_vars() == 0) {
    // nothing free: any surviving row is a plain contradiction
    out.result.status = LPStatus::Optimal;
    for (size_t k = 0; k < t.lp.rows.size(); ++k)
      if (t.lp.rows[k].terms.empty() && t.lp.rows[k].rhs.sign() < 0) {
        out.result.status = LPStatus::Infeasible;
        out.result.row_mult.assign(t.lp.rows.size(), Rational(0));
        out.result.row_mult[k] = 1;
        break;
      }
  } else {
    out.result = simplex_solve(t.lp);
  }
  out.feasible = out.result.status == LPStatus::Optimal;
  out.lp = std::move(t.lp);
  if (out.feasible) {
    out.completion = DoubledTable(n);
    for (uint64_t r = 0; r < pow2(2 * n); ++r) {
      uint64_t key = key_of(PairLabeling(n, r));
      auto it = t.fixed.find(key);
      out.completion.values[r] = it != t.fixed.end() ? it->second : out.result.x[t.var.at(key)];
    }
  }
  return out;
}

Rational pointwise_max_relaxation(const PBFTable& f, const PairLabeling& u0,
                                  RelaxationClass cls) {
  int n = f.n;
  if (u0.classes() != n) throw std::invalid_argument("labeling size mismatch");
  if (!in_xminus(u0)) throw std::invalid_argument("query point must lie in X^-");
  if (classify(u0) == DomainClass::Xcircle) {
    // tightness pins integral encodings outright
    BinaryLabeling x(n);
    for (int i = 0; i < n; ++i) x.set(i, u0.at(i));
    return f.eval(x);
  }
  TableLP t;
  uint64_t goal;
  if (cls == RelaxationClass::Bisubmodular) {
    goal = decode_pair(u0).rank();
    for (uint64_t hr = 0; hr < pow3(n); ++hr) {
      HalfLabeling x(n, hr);
      if (x.is_integral())
        t.fixed[hr] = f.eval(x.to_binary());
      else
        t.var[hr] = t.lp.add_var("g" + x.str());
    }
    int k = 0;
    for (const TableRow& row : gen_bisub_constraints(n))
      t.add_exchange_row(row, "xchg" + std::to_string(k++));
  } else {
    goal = orbit_rep(u0);
    for (uint64_t rep : mate_orbits(n)) {
      PairLabeling u(n, rep);
      if (classify(u) == DomainClass::Xcircle) {
        BinaryLabeling x(n);
        for (int i = 0; i < n; ++i) x.set(i, u.at(i));
        t.fixed[rep] = f.eval(x);
      } else {
        t.var[rep] = t.lp.add_var(pair_name(u));
      }
    }
    int k = 0;
    for (const TableRow& row : gen_submodular_constraints(n))
      t.add_exchange_row(row, "xchg" + std::to_string(k++));
  }
  t.lp.objective[t.var.at(goal)] = 1;
  LPResult res = simplex_solve(t.lp);
  if (res.status != LPStatus::Optimal)
    throw std::logic_error("pointwise relaxation bound: solvable system expected");
  return res.value;
}

std::vector<Rational> pointwise_max_all(const PBFTable& f, RelaxationClass cls) {
  uint64_t m = pow3(f.n);
  require_enumerable(m, "pointwise_max_all");
  std::vector<Rational> out(m);
  std::atomic<uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  unsigned workers = std::min<uint64_t>(std::max(1u, std::thread::hardware_concurrency()), m);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        uint64_t k = next.fetch_add(1);
        if (k >= m) return;
        try {
          out[k] = pointwise_max_relaxation(f, encode_half(HalfLabeling(f.n, k)), cls);
        } catch (...) {
          std::lock_guard<std::mutex> lock(fail_mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace grd
