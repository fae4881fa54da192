#include "grd/bisub.hpp"

#include <algorithm>
#include <stdexcept>

namespace grd {

Rational HalfFunction::eval_star(const PairLabeling& u) const {
  switch (classify(u)) {
    case DomainClass::Xminus:
    case DomainClass::Xcircle:
      return eval_pair(u);
    case DomainClass::Xplus:
      return eval_pair(mate_flip(u));
    default:
      throw std::invalid_argument("eval_star: labeling outside Xstar");
  }
}

PBFTable HalfFunction::restrict_binary() const {
  PBFTable f(n);
  for (uint64_t r = 0; r < pow2(n); ++r)
    f.values[r] = eval_binary(BinaryLabeling(n, r));
  return f;
}

MinScan brute_min_half(const HalfFunction& g) {
  require_enumerable(pow3(g.n), "brute_min over half labelings");
  return min_over(pow3(g.n), [&](uint64_t r) { return g.values[r]; });
}

MinScan brute_min_binary(const HalfFunction& g) {
  require_enumerable(pow2(g.n), "brute_min over binary labelings");
  return min_over(pow2(g.n), [&](uint64_t r) {
    return g.eval_binary(BinaryLabeling(g.n, r));
  });
}

char method_letter(CheckMethod m) {
  switch (m) {
    case CheckMethod::PairsHalf: return 'a';
    case CheckMethod::PairsStar: return 'b';
    case CheckMethod::LocalHalf: return 'c';
    default: return 'd';
  }
}

CheckMethod method_from_letter(char c) {
  switch (c) {
    case 'a': return CheckMethod::PairsHalf;
    case 'b': return CheckMethod::PairsStar;
    case 'c': return CheckMethod::LocalHalf;
    case 'd': return CheckMethod::LocalStar;
    default: throw std::invalid_argument("unknown check method");
  }
}

namespace {

PairLabeling plain_and(const PairLabeling& u, const PairLabeling& v) {
  PairLabeling w(u.classes());
  for (int k = 0; k < u.bits(); ++k) w.set(k, u.at(k) & v.at(k));
  return w;
}

PairLabeling plain_or(const PairLabeling& u, const PairLabeling& v) {
  PairLabeling w(u.classes());
  for (int k = 0; k < u.bits(); ++k) w.set(k, u.at(k) | v.at(k));
  return w;
}

// class of bit k is an unconstrained pair in u
bool admissible(const PairLabeling& u, int k) {
  return u.at(k) == 0 && u.at(u.mate(k)) == 0;
}

CheckResult check_pairs_half(const HalfFunction& g) {
  CheckResult res;
  uint64_t states = pow3(g.n);
  for (uint64_t xr = 0; xr < states; ++xr) {
    HalfLabeling x(g.n, xr);
    for (uint64_t yr = xr; yr < states; ++yr) {
      HalfLabeling y(g.n, yr);
      HalfLabeling mt = meet(x, y), jn = join(x, y);
      ++res.checked;
      Rational lhs = g.eval(mt) + g.eval(jn);
      Rational rhs = g.values[xr] + g.values[yr];
      if (lhs > rhs) {
        res.violation = {encode_half(mt), encode_half(jn),
                         encode_half(x), encode_half(y), lhs, rhs};
        return res;
      }
    }
  }
  res.bisubmodular = true;
  return res;
}

CheckResult check_pairs_star(const HalfFunction& g) {
  CheckResult res;
  uint64_t states = pow2(2 * g.n);
  for (uint64_t ur = 0; ur < states; ++ur) {
    PairLabeling u(g.n, ur);
    if (!in_xstar(u)) continue;
    for (uint64_t vr = ur; vr < states; ++vr) {
      PairLabeling v(g.n, vr);
      if (!in_xstar(v)) continue;
      PairLabeling a = plain_and(u, v), o = plain_or(u, v);
      if (!in_xstar(a) || !in_xstar(o)) continue;
      ++res.checked;
      Rational lhs = g.eval_star(a) + g.eval_star(o);
      Rational rhs = g.eval_star(u) + g.eval_star(v);
      if (lhs > rhs) {
        res.violation = {a, o, u, v, lhs, rhs};
        return res;
      }
    }
  }
  res.bisubmodular = true;
  return res;
}

CheckResult check_local_half(const HalfFunction& g) {
  CheckResult res;
  uint64_t states = pow3(g.n);
  for (uint64_t wr = 0; wr < states; ++wr) {
    PairLabeling w = encode_half(HalfLabeling(g.n, wr));
    for (int i = 0; i < w.bits(); ++i) {
      if (!admissible(w, i)) continue;
      for (int j = i + 1; j < w.bits(); ++j) {
        if (!admissible(w, j)) continue;
        PairLabeling wi = w.with_one(i), wj = w.with_one(j);
        PairLabeling wij = reduce_pairs(wi.with_one(j));
        ++res.checked;
        Rational lhs = g.eval_pair(w) + g.eval_pair(wij);
        Rational rhs = g.eval_pair(wi) + g.eval_pair(wj);
        if (lhs > rhs) {
          res.violation = {w, wij, wi, wj, lhs, rhs};
          return res;
        }
      }
    }
  }
  res.bisubmodular = true;
  return res;
}

CheckResult check_local_star(const HalfFunction& g) {
  CheckResult res;
  uint64_t states = pow2(2 * g.n);
  for (uint64_t wr = 0; wr < states; ++wr) {
    PairLabeling w(g.n, wr);
    if (!in_xstar(w)) continue;
    for (int i = 0; i < w.bits(); ++i) {
      if (w.at(i)) continue;
      PairLabeling wi = w.with_one(i);
      if (!in_xstar(wi)) continue;
      for (int j = i + 1; j < w.bits(); ++j) {
        if (w.at(j)) continue;
        PairLabeling wj = w.with_one(j);
        PairLabeling wij = wi.with_one(j);
        if (!in_xstar(wj) || !in_xstar(wij)) continue;
        ++res.checked;
        Rational lhs = g.eval_star(w) + g.eval_star(wij);
        Rational rhs = g.eval_star(wi) + g.eval_star(wj);
        if (lhs > rhs) {
          res.violation = {w, wij, wi, wj, lhs, rhs};
          return res;
        }
      }
    }
  }
  res.bisubmodular = true;
  return res;
}

}  // namespace

CheckResult check_bisubmodular(const HalfFunction& g, CheckMethod m) {
  switch (m) {
    case CheckMethod::PairsHalf: return check_pairs_half(g);
    case CheckMethod::PairsStar: return check_pairs_star(g);
    case CheckMethod::LocalHalf: return check_local_half(g);
    default: return check_local_star(g);
  }
}

bool is_bisubmodular(const HalfFunction& g) {
  return check_bisubmodular(g, CheckMethod::LocalHalf).bisubmodular;
}

namespace {

uint64_t star_half_rank(const PairLabeling& u) {
  if (in_xminus(u)) return decode_pair(u).rank();
  return decode_pair(mate_flip(u)).rank();
}

ExchangeInequality normalize(const PairLabeling& l1, const PairLabeling& l2,
                             const PairLabeling& r1, const PairLabeling& r2) {
  ExchangeInequality e;
  e.lhs = {star_half_rank(l1), star_half_rank(l2)};
  e.rhs = {star_half_rank(r1), star_half_rank(r2)};
  if (e.lhs[0] > e.lhs[1]) std::swap(e.lhs[0], e.lhs[1]);
  if (e.rhs[0] > e.rhs[1]) std::swap(e.rhs[0], e.rhs[1]);
  return e;
}

}  // namespace

std::set<ExchangeInequality> exchange_family(int n, CheckMethod m) {
  std::set<ExchangeInequality> fam;
  if (m == CheckMethod::PairsHalf) {
    uint64_t states = pow3(n);
    for (uint64_t xr = 0; xr < states; ++xr) {
      HalfLabeling x(n, xr);
      for (uint64_t yr = xr; yr < states; ++yr) {
        HalfLabeling y(n, yr);
        ExchangeInequality e = normalize(encode_half(meet(x, y)), encode_half(join(x, y)),
                                         encode_half(x), encode_half(y));
        if (e.lhs != e.rhs) fam.insert(e);
      }
    }
    return fam;
  }
  if (m == CheckMethod::PairsStar) {
    uint64_t states = pow2(2 * n);
    for (uint64_t ur = 0; ur < states; ++ur) {
      PairLabeling u(n, ur);
      if (!in_xstar(u)) continue;
      for (uint64_t vr = ur; vr < states; ++vr) {
        PairLabeling v(n, vr);
        if (!in_xstar(v)) continue;
        PairLabeling a = plain_and(u, v), o = plain_or(u, v);
        if (!in_xstar(a) || !in_xstar(o)) continue;
        ExchangeInequality e = normalize(a, o, u, v);
        if (e.lhs != e.rhs) fam.insert(e);
      }
    }
    return fam;
  }
  throw std::invalid_argument("exchange_family: only pair methods have one");
}

HalfLabeling autarky_shift(const HalfLabeling& x, const HalfLabeling& y) {
  return join(join(y, x), x);
}

Persistency persistency_extract(const HalfFunction& g, const HalfLabeling& x) {
  MinScan half_min = brute_min_half(g);
  if (g.eval(x) != half_min.value)
    throw std::invalid_argument("persistency_extract: labeling does not minimize over the half domain");
  MinScan bin_min = brute_min_binary(g);
  BinaryLabeling y(g.n, bin_min.argmins.front());
  HalfLabeling z = autarky_shift(x, HalfLabeling::from_binary(y));
  Persistency p;
  p.fixed.resize(g.n);
  for (int i = 0; i < g.n; ++i)
    if (x.at(i) != HalfLabeling::kHalf) p.fixed[i] = x.at(i) == HalfLabeling::kOne ? 1 : 0;
  p.minimizer = z.to_binary();
  p.value = g.eval(z);
  return p;
}

}  // namespace grd
