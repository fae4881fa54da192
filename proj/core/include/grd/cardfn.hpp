#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grd/bisub.hpp"
#include "grd/labeling.hpp"
#include "grd/pbf.hpp"
#include "grd/rational.hpp"

namespace grd {

// census of pair states over the classes of a doubled labeling
struct CardCounts {
  int n01 = 0, n10 = 0, n00 = 0, n11 = 0;

  friend bool operator==(const CardCounts&, const CardCounts&) = default;
};

CardCounts card_counts(const PairLabeling& u);

// G on the triangle {(a, b) : a, b >= 0, a + b <= n}
class CardinalityFn {
 public:
  CardinalityFn() = default;
  explicit CardinalityFn(int n) : n_(n), v_((n + 1) * (n + 2) / 2) {}

  int size() const { return n_; }
  Rational& at(int a, int b) { return v_[index(a, b)]; }
  const Rational& at(int a, int b) const { return v_[index(a, b)]; }

  friend bool operator==(const CardinalityFn&, const CardinalityFn&) = default;

 private:
  int index(int a, int b) const;
  int n_ = 0;
  std::vector<Rational> v_;
};

// g(u) = G(#zeros, #ones) on the half domain
HalfFunction expand(const CardinalityFn& G);

struct CardViolation {
  char condition = '?';  // 'a'..'d'
  int a = 0, b = 0;
  Rational lhs, rhs;  // lhs <= rhs was expected
};

struct CardCheckResult {
  bool ok = true;
  long checked = 0;
  std::optional<CardViolation> violation;
};

// The four families, scanned a..d and (a, b) lexicographically:
//   (a) G(a,b) + G(a-2,b) <= 2 G(a-1,b)          a >= 2
//   (b) G(a,b) + G(a,b-2) <= 2 G(a,b-1)          b >= 2
//   (c) G(a,b) + G(a-1,b-1) <= G(a-1,b) + G(a,b-1)   a, b >= 1
//   (d) 2 G(a,b) <= G(a+1,b) + G(a,b+1)          a + b <= n - 1
// Together they hold iff expand(G) is bisubmodular.
CardCheckResult check_card_conditions(const CardinalityFn& G);

struct Fixtures {
  CardinalityFn fig1b, fig1c;  // n = 3 triangles, read from data files
  PBFTable fig1d;              // n = 4, pinned below
};

// fig1b/fig1c come from <data_dir>/fig1b.card and fig1c.card; a missing
// or malformed file is an error.
Fixtures fixtures(const std::string& data_dir);

// the 16-value n = 4 table, hardcoded
PBFTable fig1d_table();

}  // namespace grd
