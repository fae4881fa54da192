#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "grd/bisub.hpp"
#include "grd/labeling.hpp"
#include "grd/lp.hpp"
#include "grd/pbf.hpp"
#include "grd/roofdual.hpp"

namespace grd {

enum class RelaxationClass { Bisubmodular, Submodular };

// One local exchange inequality, sum coeff * g(key) <= 0, over abstract
// table keys (half ranks for the bisubmodular system, orbit reps for the
// submodular one). Terms are sorted by key, merged, zero-free.
struct TableRow {
  std::vector<std::pair<uint64_t, Rational>> terms;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

// For every w in X^- and distinct doubled nodes i < j whose classes sit
// at (0,0) in w:  g(w) + g(reduce(w|i|j)) <= g(w|i) + g(w|j).  All four
// points stay in X^-; keys are half-domain ranks.
std::vector<TableRow> gen_bisub_constraints(int n);

// mate_flip orbits of the full doubled cube; the rep is the smaller rank.
uint64_t orbit_rep(const PairLabeling& u);
std::vector<uint64_t> mate_orbits(int n);  // sorted; singletons are Xcircle

// Local submodularity on the doubled cube, one row per (u, i < j) with
// u_i = u_j = 0, expressed over orbit reps and deduplicated (mate_flip
// maps each row onto another).
std::vector<TableRow> gen_submodular_constraints(int n);

struct TightestResult {
  RelaxationClass cls = RelaxationClass::Bisubmodular;
  Rational tstar;
  HalfFunction bisub;   // optimal relaxation when cls == Bisubmodular
  DoubledTable submod;  // optimal symmetric table when cls == Submodular
  long pivots = 0;
};

// maximize t subject to t <= g everywhere on the class domain, the class
// exchange rows, and tightness g(x, complement(x)) = f(x). Feasibility is
// guaranteed (a tight relaxation always exists) and asserted.
TightestResult tightest_relaxation(const PBFTable& f, RelaxationClass cls);

struct ExtensionResult {
  bool feasible = false;
  LinearProgram lp;       // the feasibility system that was solved
  LPResult result;        // assignment, or Farkas certificate over lp.rows
  DoubledTable completion;  // filled in when feasible
};

// Does g, read as a function on X^-, extend to a mate-symmetric
// submodular function on the whole doubled cube?  Values on X^* are
// forced by symmetry; free variables are the orbits outside.  With
// symmetrize, g must be cardinality-dependent and the variables collapse
// to count signatures over the four pair states, named G(n01,n10,n00,n11)
// with n00 <= n11 as the orbit rep.
ExtensionResult extension_feasible(const HalfFunction& g, bool symmetrize);

// maximize g(u0) over the class relaxations of f (tightness included).
// u0 must lie in X^-.
Rational pointwise_max_relaxation(const PBFTable& f, const PairLabeling& u0,
                                  RelaxationClass cls);

// pointwise_max_relaxation at every u0 in X^-, in half-rank order.
// Instances run concurrently; results are collated by input order.
std::vector<Rational> pointwise_max_all(const PBFTable& f, RelaxationClass cls);

}  // namespace grd
