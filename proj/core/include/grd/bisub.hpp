#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "grd/labeling.hpp"
#include "grd/pbf.hpp"
#include "grd/rational.hpp"

namespace grd {

// Function on {0, 1/2, 1}^n given by its full value table, indexed by
// HalfLabeling rank.
struct HalfFunction {
  int n = 0;
  std::vector<Rational> values;

  HalfFunction() = default;
  explicit HalfFunction(int n_) : n(n_), values(pow3(n_)) {}

  const Rational& eval(const HalfLabeling& x) const {
    if (x.size() != n) throw std::invalid_argument("HalfFunction::eval: dimension mismatch");
    return values[x.rank()];
  }
  Rational& at_rank(uint64_t r) { return values[r]; }
  const Rational& at_rank(uint64_t r) const { return values[r]; }
  Rational eval_binary(const BinaryLabeling& x) const {
    return eval(HalfLabeling::from_binary(x));
  }
  // Value at a pair labeling in Xminus.
  Rational eval_pair(const PairLabeling& u) const { return eval(decode_pair(u)); }
  // Extension to Xstar, symmetric under mate_flip.
  Rational eval_star(const PairLabeling& u) const;

  PBFTable restrict_binary() const;
};

MinScan brute_min_half(const HalfFunction& g);
MinScan brute_min_binary(const HalfFunction& g);

enum class CheckMethod { PairsHalf, PairsStar, LocalHalf, LocalStar };
char method_letter(CheckMethod m);
CheckMethod method_from_letter(char c);

// One failed exchange inequality g(p1) + g(p2) <= g(q1) + g(q2).
struct ExchangeViolation {
  PairLabeling p1, p2, q1, q2;
  Rational lhs, rhs;
};

struct CheckResult {
  bool bisubmodular = false;
  uint64_t checked = 0;  // inequalities scanned before deciding
  std::optional<ExchangeViolation> violation;
};

// Scans the inequality family of the chosen method in a fixed order and
// reports the first violation. All four methods agree on the verdict.
CheckResult check_bisubmodular(const HalfFunction& g, CheckMethod m);
bool is_bisubmodular(const HalfFunction& g);

// One exchange inequality with its four points normalized to half
// labelings (mate-flipping where needed) and each side sorted.
struct ExchangeInequality {
  std::array<uint64_t, 2> lhs, rhs;  // half ranks
  auto operator<=>(const ExchangeInequality&) const = default;
};

// The non-trivial inequality instances generated by method a (PairsHalf)
// or b (PairsStar), as normalized point patterns. The two families differ
// in both directions once n >= 4.
std::set<ExchangeInequality> exchange_family(int n, CheckMethod m);

// z = (y join x) join x; keeps the integral part of x and follows y on
// the half part. If x minimizes g over the half domain and y is binary,
// g(z) <= g(y).
HalfLabeling autarky_shift(const HalfLabeling& x, const HalfLabeling& y);

struct Persistency {
  std::vector<std::optional<uint8_t>> fixed;  // binary value per node where x is integral
  BinaryLabeling minimizer;                   // binary minimizer extending the fixed part
  Rational value;
};

// Requires x to minimize g over the half domain (verified by scan).
Persistency persistency_extract(const HalfFunction& g, const HalfLabeling& x);

}  // namespace grd
