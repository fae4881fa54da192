#include "grd/lovasz.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace grd {

uint64_t SignedFunction::rank_of(const std::vector<int>& s) {
  uint64_t r = 0;
  for (int v : s) {
    if (v < -1 || v > 1) throw std::invalid_argument("signed point coordinate out of range");
    r = r * 3 + (v + 1);
  }
  return r;
}

std::vector<int> SignedFunction::point_of(uint64_t rank, int n) {
  std::vector<int> s(n);
  for (int i = n - 1; i >= 0; --i) {
    s[i] = (int)(rank % 3) - 1;
    rank /= 3;
  }
  return s;
}

const Rational& SignedFunction::origin() const {
  return values[rank_of(std::vector<int>(n, 0))];
}

SignedFunction transport(const HalfFunction& g) {
  SignedFunction h(g.n);
  h.values = g.values;  // trit t and digit of 2x-1 share the same rank
  return h;
}

HalfFunction transport_back(const SignedFunction& h) {
  HalfFunction g(h.n);
  g.values = h.values;
  return g;
}

LPoint coordinate_change(const HalfLabeling& x) {
  LPoint p;
  p.x.reserve(x.size());
  for (int i = 0; i < x.size(); ++i) p.x.push_back(Rational(x.at(i) - 1));
  return p;
}

HalfLabeling coordinate_change_back(const LPoint& p) {
  HalfLabeling x(p.size());
  for (int i = 0; i < p.size(); ++i) {
    bool hit = false;
    for (int d = -1; d <= 1 && !hit; ++d) {
      if (p.x[i] == Rational(d)) {
        x.set(i, (uint8_t)(d + 1));
        hit = true;
      }
    }
    if (!hit) throw std::invalid_argument("coordinate_change_back: coordinate not in {-1, 0, 1}");
  }
  return x;
}

LPoint LPoint::of(std::vector<Rational> coords) {
  for (const Rational& c : coords)
    if (c < Rational(-1) || c > Rational(1))
      throw std::invalid_argument("point coordinate outside [-1, 1]");
  LPoint p;
  p.x = std::move(coords);
  return p;
}

LPoint LPoint::parse(const std::string& csv) {
  std::vector<Rational> coords;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) coords.push_back(Rational::parse(item));
  if (coords.empty()) throw std::invalid_argument("empty point");
  return of(std::move(coords));
}

std::string LPoint::str() const {
  std::string s;
  for (int i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += x[i].str();
  }
  return s;
}

LPoint midpoint(const LPoint& a, const LPoint& b) {
  LPoint m;
  m.x.resize(a.size());
  for (int i = 0; i < a.size(); ++i) m.x[i] = (a.x[i] + b.x[i]) / Rational(2);
  return m;
}

LPoint scale(const Rational& gamma, const LPoint& a) {
  LPoint m;
  m.x.resize(a.size());
  for (int i = 0; i < a.size(); ++i) m.x[i] = gamma * a.x[i];
  return m;
}

SignedOrdering signed_ordering_of(const LPoint& p) {
  int n = p.size();
  SignedOrdering w;
  w.order.resize(n);
  w.sign.resize(n);
  for (int i = 0; i < n; ++i) {
    w.order[i] = i;
    w.sign[i] = p.x[i].sign() < 0 ? -1 : 1;
  }
  std::stable_sort(w.order.begin(), w.order.end(), [&](int a, int b) {
    return p.x[a].abs() > p.x[b].abs();
  });
  return w;
}

bool compatible(const SignedOrdering& w, const LPoint& p) {
  int n = p.size();
  for (int k = 0; k + 1 < n; ++k)
    if (p.x[w.order[k]].abs() < p.x[w.order[k + 1]].abs()) return false;
  for (int i = 0; i < n; ++i)
    if (p.x[i].sign() != 0 && p.x[i].sign() != w.sign[i]) return false;
  return true;
}

std::vector<std::vector<int>> chain_points(const SignedOrdering& w) {
  int n = (int)w.order.size();
  std::vector<std::vector<int>> chain;
  chain.reserve(n + 1);
  std::vector<int> q(n, 0);
  chain.push_back(q);
  for (int k = 0; k < n; ++k) {
    q[w.order[k]] = w.sign[w.order[k]];
    chain.push_back(q);
  }
  return chain;
}

Rational chain_value(const SignedFunction& h, const SignedOrdering& w, const LPoint& p) {
  if (!compatible(w, p)) throw std::invalid_argument("chain_value: ordering not compatible with point");
  int n = h.n;
  auto chain = chain_points(w);
  Rational h0 = h.origin();
  Rational v = h0;
  for (int k = 1; k <= n; ++k) {
    Rational lam = p.x[w.order[k - 1]].abs();
    if (k < n) lam -= p.x[w.order[k]].abs();
    if (!lam.is_zero()) v += lam * (h.at(chain[k]) - h0);
  }
  return v;
}

Rational lovasz_eval(const SignedFunction& h, const LPoint& p) {
  if (p.size() != h.n) throw std::invalid_argument("lovasz_eval: dimension mismatch");
  return chain_value(h, signed_ordering_of(p), p);
}

namespace {

std::vector<LPoint> grid_points(int n, int den) {
  std::vector<LPoint> pts;
  std::vector<Rational> coords(n);
  uint64_t side = 2 * den + 1, total = 1;
  for (int i = 0; i < n; ++i) total *= side;
  pts.reserve(total);
  for (uint64_t r = 0; r < total; ++r) {
    uint64_t t = r;
    for (int i = n - 1; i >= 0; --i) {
      coords[i] = Rational((long)(t % side) - den, den);
      t /= side;
    }
    pts.push_back(LPoint::of(coords));
  }
  return pts;
}

bool on_grid(const LPoint& p, int den) {
  for (const Rational& c : p.x)
    if (!(c * Rational(den)).is_integer()) return false;
  return true;
}

}  // namespace

ConvexityReport convexity_probe(const SignedFunction& h, int levels) {
  ConvexityReport rep;
  std::map<LPoint, Rational> cache;
  auto value = [&](const LPoint& p) {
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    Rational v = lovasz_eval(h, p);
    cache.emplace(p, v);
    return v;
  };
  const int dens[] = {1, 4, 8};
  levels = std::min(std::max(levels, 1), 3);
  for (int lev = 0; lev < levels; ++lev) {
    int den = dens[lev];
    int prev = lev > 0 ? dens[lev - 1] : 0;
    auto pts = grid_points(h.n, den);
    for (size_t a = 0; a < pts.size(); ++a) {
      for (size_t b = a; b < pts.size(); ++b) {
        if (prev && on_grid(pts[a], prev) && on_grid(pts[b], prev)) continue;
        ++rep.pairs_checked;
        Rational mid = value(midpoint(pts[a], pts[b]));
        Rational avg = (value(pts[a]) + value(pts[b])) / Rational(2);
        if (mid > avg) {
          rep.witness = {pts[a], pts[b], mid, avg};
          return rep;
        }
      }
    }
  }
  rep.convex = true;
  return rep;
}

ConvexityReport convexity_probe_random(const SignedFunction& h, uint64_t pairs,
                                       uint64_t seed) {
  ConvexityReport rep;
  std::mt19937_64 rng(seed);
  auto random_point = [&] {
    LPoint p;
    p.x.reserve(h.n);
    for (int i = 0; i < h.n; ++i) {
      long den = 1 + (long)(rng() % 8);
      long num = (long)(rng() % (2 * (uint64_t)den + 1)) - den;
      p.x.push_back(Rational(num, den));
    }
    return p;
  };
  for (uint64_t k = 0; k < pairs; ++k) {
    LPoint a = random_point(), b = random_point();
    ++rep.pairs_checked;
    Rational mid = lovasz_eval(h, midpoint(a, b));
    Rational avg = (lovasz_eval(h, a) + lovasz_eval(h, b)) / Rational(2);
    if (mid > avg) {
      rep.witness = {a, b, mid, avg};
      return rep;
    }
  }
  rep.convex = true;
  return rep;
}

LinearityReport simplex_linearity_check(const SignedFunction& h, const SignedOrdering& w,
                                        int samples, uint64_t seed) {
  int n = h.n;
  auto chain = chain_points(w);
  std::mt19937_64 rng(seed);
  LinearityReport rep;
  for (int s = 0; s < samples; ++s) {
    std::vector<long> weights(n + 1);
    long total = 0;
    for (int k = 0; k <= n; ++k) {
      weights[k] = (long)(rng() % 7);
      total += weights[k];
    }
    if (total == 0) {
      weights[0] = 1;
      total = 1;
    }
    LPoint p;
    p.x.assign(n, Rational(0));
    Rational expected;
    for (int k = 0; k <= n; ++k) {
      if (weights[k] == 0) continue;
      Rational lam(weights[k], total);
      for (int i = 0; i < n; ++i) p.x[i] += lam * Rational(chain[k][i]);
      expected += lam * h.at(chain[k]);
    }
    if (lovasz_eval(h, p) != expected) {
      rep.linear = false;
      rep.witness = p;
      return rep;
    }
  }
  return rep;
}

bool homogeneity_check(const SignedFunction& h, const LPoint& p, const Rational& gamma) {
  if (gamma < Rational(0) || gamma > Rational(1))
    throw std::invalid_argument("homogeneity_check: gamma outside [0, 1]");
  if (!h.origin().is_zero())
    throw std::invalid_argument("homogeneity_check: h(0) must vanish");
  return lovasz_eval(h, scale(gamma, p)) == gamma * lovasz_eval(h, p);
}

bool homogeneity_sweep(const SignedFunction& h, int samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    LPoint p;
    p.x.reserve(h.n);
    for (int i = 0; i < h.n; ++i) {
      long den = 1 + (long)(rng() % 8);
      long num = (long)(rng() % (2 * (uint64_t)den + 1)) - den;
      p.x.push_back(Rational(num, den));
    }
    Rational gamma(int(rng() % 9), 8);
    if (!homogeneity_check(h, p, gamma)) return false;
  }
  return true;
}

SignedFunction permute_nodes(const SignedFunction& h, const std::vector<int>& perm) {
  SignedFunction g(h.n);
  std::vector<int> s_old(h.n);
  for (uint64_t r = 0; r < pow3(h.n); ++r) {
    auto s_new = SignedFunction::point_of(r, h.n);
    for (int i = 0; i < h.n; ++i) s_old[i] = s_new[perm[i]];
    g.values[r] = h.at(s_old);
  }
  return g;
}

SignedFunction restrict_fix(const SignedFunction& h, int node, int value) {
  if (h.n < 2) throw std::invalid_argument("restrict_fix: needs at least two nodes");
  SignedFunction g(h.n - 1);
  for (uint64_t r = 0; r < pow3(h.n - 1); ++r) {
    auto s = SignedFunction::point_of(r, h.n - 1);
    std::vector<int> full(s.begin(), s.begin() + node);
    full.push_back(value);
    full.insert(full.end(), s.begin() + node, s.end());
    g.values[r] = h.at(full);
  }
  return g;
}

SignedFunction restrict_tie(const SignedFunction& h, int anchor, int dropped, bool anti) {
  if (!(0 <= anchor && anchor < dropped && dropped < h.n))
    throw std::invalid_argument("restrict_tie: need anchor < dropped");
  SignedFunction g(h.n - 1);
  for (uint64_t r = 0; r < pow3(h.n - 1); ++r) {
    auto s = SignedFunction::point_of(r, h.n - 1);
    std::vector<int> full(s.begin(), s.begin() + dropped);
    full.push_back(anti ? -s[anchor] : s[anchor]);
    full.insert(full.end(), s.begin() + dropped, s.end());
    g.values[r] = h.at(full);
  }
  return g;
}

namespace {

bool verify_level(const SignedFunction& h, int depth, int samples, uint64_t seed,
                  std::string path, std::string& failure) {
  ConvexityReport probe = convexity_probe(h, 2);
  if (!probe.convex) {
    failure = path + ": midpoint convexity fails between (" + probe.witness->a.str() +
              ") and (" + probe.witness->b.str() + ")";
    return false;
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < std::max(samples, 1); ++t) {
    SignedOrdering w;
    w.order.resize(h.n);
    w.sign.resize(h.n);
    for (int i = 0; i < h.n; ++i) w.order[i] = i;
    if (t > 0) {
      for (int i = h.n - 1; i > 0; --i)
        std::swap(w.order[i], w.order[rng() % (i + 1)]);
    }
    for (int i = 0; i < h.n; ++i) w.sign[i] = t > 0 && (rng() & 1) ? -1 : 1;
    LinearityReport lin = simplex_linearity_check(h, w, samples, rng());
    if (!lin.linear) {
      failure = path + ": extension not affine on a chain simplex at (" +
                lin.witness->str() + ")";
      return false;
    }
  }
  if (depth <= 0 || h.n <= 1) return true;
  for (int node = 0; node < h.n; ++node) {
    for (int value = -1; value <= 1; ++value) {
      if (!verify_level(restrict_fix(h, node, value), depth - 1, samples, rng(),
                        path + " fix(" + std::to_string(node + 1) + "," +
                            std::to_string(value) + ")", failure))
        return false;
    }
  }
  for (int i = 0; i < h.n; ++i) {
    for (int j = i + 1; j < h.n; ++j) {
      for (int anti = 0; anti <= 1; ++anti) {
        if (!verify_level(restrict_tie(h, i, j, anti), depth - 1, samples, rng(),
                          path + (anti ? " antitie(" : " tie(") + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + ")", failure))
          return false;
      }
    }
  }
  return true;
}

}  // namespace

IntegralityReport total_integrality_verify(const SignedFunction& h, int max_depth,
                                           int samples, uint64_t seed) {
  IntegralityReport rep;
  rep.verified = verify_level(h, max_depth, samples, seed, "root", rep.failure);
  return rep;
}

}  // namespace grd
