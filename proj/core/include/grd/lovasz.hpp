#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grd/bisub.hpp"
#include "grd/labeling.hpp"
#include "grd/rational.hpp"

namespace grd {

// Function on {-1, 0, +1}^n, values indexed base-3 with digit 0 -> -1,
// 1 -> 0, 2 -> +1 and node 1 most significant. Same rank layout as
// HalfFunction under the coordinate change s = 2x - 1.
struct SignedFunction {
  int n = 0;
  std::vector<Rational> values;

  SignedFunction() = default;
  explicit SignedFunction(int n_) : n(n_), values(pow3(n_)) {}

  static uint64_t rank_of(const std::vector<int>& s);
  static std::vector<int> point_of(uint64_t rank, int n);

  const Rational& at(const std::vector<int>& s) const { return values[rank_of(s)]; }
  Rational& at(const std::vector<int>& s) { return values[rank_of(s)]; }
  const Rational& origin() const;
};

SignedFunction transport(const HalfFunction& g);
HalfFunction transport_back(const SignedFunction& h);

// Point of the cube [-1, 1]^n.
struct LPoint {
  std::vector<Rational> x;

  static LPoint of(std::vector<Rational> coords);  // validates the range
  static LPoint parse(const std::string& csv);     // comma-separated rationals
  int size() const { return (int)x.size(); }
  std::string str() const;
  friend bool operator==(const LPoint&, const LPoint&) = default;
  friend auto operator<=>(const LPoint&, const LPoint&) = default;
};

LPoint midpoint(const LPoint& a, const LPoint& b);
LPoint scale(const Rational& gamma, const LPoint& a);

// Affine bijection between {0, 1/2, 1}^n and {-1, 0, 1}^n, s = 2x - 1.
// The inverse rejects points with coordinates outside {-1, 0, 1}.
LPoint coordinate_change(const HalfLabeling& x);
HalfLabeling coordinate_change_back(const LPoint& p);

// Signed ordering: nodes by decreasing absolute coordinate (stable), a
// sign per node (+1 for zero coordinates).
struct SignedOrdering {
  std::vector<int> order;  // order[k] = node at position k
  std::vector<int> sign;   // per node, -1 or +1
};

SignedOrdering signed_ordering_of(const LPoint& p);
bool compatible(const SignedOrdering& w, const LPoint& p);

// Chain 0 = q^0, q^1, ..., q^n where q^k sets node order[k-1] to its sign.
std::vector<std::vector<int>> chain_points(const SignedOrdering& w);

// Value of the extension computed along the chain of w; requires
// compatible(w, p). Independent of the choice among compatible orderings.
Rational chain_value(const SignedFunction& h, const SignedOrdering& w, const LPoint& p);
Rational lovasz_eval(const SignedFunction& h, const LPoint& p);

struct MidpointWitness {
  LPoint a, b;
  Rational mid_value, avg_value;  // mid_value > avg_value
};

struct ConvexityReport {
  bool convex = false;
  uint64_t pairs_checked = 0;
  std::optional<MidpointWitness> witness;
};

// Midpoint convexity sweep over grids of step 1, then 1/4, then 1/8
// (levels 1..3). First violation in sweep order is reported.
ConvexityReport convexity_probe(const SignedFunction& h, int levels = 2);

// Same midpoint test on random rational pairs instead of a grid.
ConvexityReport convexity_probe_random(const SignedFunction& h, uint64_t pairs, uint64_t seed);

struct LinearityReport {
  bool linear = true;
  std::optional<LPoint> witness;  // a mismatching convex combination
};

// Checks the extension is affine on the simplex of w at sampled rational
// convex combinations of the chain points.
LinearityReport simplex_linearity_check(const SignedFunction& h, const SignedOrdering& w,
                                        int samples, uint64_t seed);

// hhat(gamma p) == gamma hhat(p) for gamma in [0, 1]; requires h(0) = 0.
bool homogeneity_check(const SignedFunction& h, const LPoint& p, const Rational& gamma);

// homogeneity_check at sampled points and factors; requires h(0) = 0.
bool homogeneity_sweep(const SignedFunction& h, int samples, uint64_t seed);

SignedFunction permute_nodes(const SignedFunction& h, const std::vector<int>& perm);
SignedFunction restrict_fix(const SignedFunction& h, int node, int value);
// Identifies node `dropped` with node `anchor` (negated when anti); anchor < dropped.
SignedFunction restrict_tie(const SignedFunction& h, int anchor, int dropped, bool anti);

struct IntegralityReport {
  bool verified = false;
  std::string failure;  // empty when verified
};

// Convexity probe + sampled simplex linearity on h and, recursively, on
// all its one-node restrictions down to the given depth.
IntegralityReport total_integrality_verify(const SignedFunction& h, int max_depth,
                                           int samples, uint64_t seed);

}  // namespace grd
