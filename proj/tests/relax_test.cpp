#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "grd/cardfn.hpp"
#include "grd/relax.hpp"
#include "grd/roofdual.hpp"
#include "testutil.hpp"

using namespace grd;
using test::Rng;

namespace {

LPRow row1(int var, const Rational& coeff, Relation rel, const Rational& rhs,
           std::string name = {}) {
  LPRow r;
  r.terms = {{var, coeff}};
  r.rel = rel;
  r.rhs = rhs;
  r.name = std::move(name);
  return r;
}

Rational row_value(const TableRow& row, const std::vector<Rational>& table) {
  Rational s;
  for (const auto& [key, coeff] : row.terms) s += coeff * table[key];
  return s;
}

bool rows_hold(const std::vector<TableRow>& rows, const std::vector<Rational>& table) {
  for (const TableRow& r : rows)
    if (row_value(r, table) > Rational(0)) return false;
  return true;
}

// all-pairs lattice check on the doubled cube
bool submodular_all_pairs(const DoubledTable& g) {
  int bits = 2 * g.n;
  for (uint64_t a = 0; a < pow2(bits); ++a)
    for (uint64_t b = 0; b < pow2(bits); ++b) {
      PairLabeling u(g.n, a), v(g.n, b), lo(g.n), hi(g.n);
      for (int k = 0; k < bits; ++k) {
        lo.set(k, u.at(k) & v.at(k));
        hi.set(k, u.at(k) | v.at(k));
      }
      if (g.eval(lo) + g.eval(hi) > g.eval(u) + g.eval(v)) return false;
    }
  return true;
}

// multilinear values of x1 + x2 - 2 x1 x2 on the half grid; this is
// cardinality dependent but not bisubmodular
HalfFunction soft_xor() {
  HalfFunction g(2);
  for (uint64_t r = 0; r < 9; ++r) {
    HalfLabeling x(2, r);
    Rational a = x.coord(0), b = x.coord(1);
    g.at_rank(r) = a + b - Rational(2) * a * b;
  }
  return g;
}

int var_index(const LinearProgram& lp, const std::string& name) {
  for (int i = 0; i < lp.num_vars(); ++i)
    if (lp.var_names[i] == name) return i;
  return -1;
}

bool row_touches(const LPRow& row, int var) {
  for (const auto& t : row.terms)
    if (t.var == var && !t.coeff.is_zero()) return true;
  return false;
}

}  // namespace

TEST_CASE("simplex solves a one variable problem") {
  LinearProgram lp;
  int t = lp.add_var("t");
  lp.objective[t] = Rational(1);
  lp.add_row(row1(t, Rational(1), Relation::LessEq, Rational(1), "cap"));
  LPResult res = simplex_solve(lp);
  REQUIRE(res.status == LPStatus::Optimal);
  CHECK(res.value == Rational(1));
  CHECK(res.x == std::vector<Rational>{Rational(1)});
  CHECK(satisfies(lp, res.x));
  CHECK(objective_value(lp, res.x) == res.value);
}

TEST_CASE("simplex certifies infeasibility") {
  LinearProgram lp;
  int x = lp.add_var("x");
  lp.objective[x] = Rational(1);
  lp.add_row(row1(x, Rational(1), Relation::LessEq, Rational(0)));
  lp.add_row(row1(x, Rational(1), Relation::GreaterEq, Rational(1)));
  LPResult res = simplex_solve(lp);
  REQUIRE(res.status == LPStatus::Infeasible);
  CHECK(certifies_infeasible(lp, res.row_mult));
  CHECK_FALSE(certifies_infeasible(lp, std::vector<Rational>(res.row_mult.size())));
}

TEST_CASE("simplex certifies unboundedness") {
  LinearProgram lp;
  int x = lp.add_var("x");
  lp.objective[x] = Rational(1);
  lp.add_row(row1(x, Rational(1), Relation::GreaterEq, Rational(0)));
  LPResult res = simplex_solve(lp);
  REQUIRE(res.status == LPStatus::Unbounded);
  CHECK(certifies_unbounded(lp, res.x, res.ray));
}

TEST_CASE("simplex handles equalities and variable bounds") {
  LinearProgram lp;
  int x = lp.add_var("x", Rational(0), Rational(3));
  int y = lp.add_var("y", Rational(0), Rational(3));
  lp.objective[x] = Rational(1);
  lp.objective[y] = Rational(2);
  LPRow r;
  r.terms = {{x, Rational(1)}, {y, Rational(1)}};
  r.rel = Relation::Equal;
  r.rhs = Rational(2);
  lp.add_row(r);
  LPResult res = simplex_solve(lp);
  REQUIRE(res.status == LPStatus::Optimal);
  CHECK(res.value == Rational(4));  // x = 0, y = 2

  LinearProgram box;
  int z = box.add_var("z", Rational(-1), Rational(5));
  box.objective[z] = Rational(1);
  CHECK(simplex_solve(box).value == Rational(5));
}

TEST_CASE("simplex matches basic solution enumeration on random programs") {
  Rng rng(61);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + (int)(rng() % 3);
    LinearProgram lp;
    for (int i = 0; i < n; ++i) {
      lp.add_var("v" + std::to_string(i), Rational(-(long)(rng() % 4)),
                 Rational((long)(rng() % 4)));
      lp.objective[i] = test::random_rational(rng, -3, 3, 2);
    }
    int rows = (int)(rng() % 4);
    for (int k = 0; k < rows; ++k) {
      LPRow r;
      for (int i = 0; i < n; ++i) {
        Rational c = test::random_rational(rng, -2, 2, 1);
        if (!c.is_zero()) r.terms.push_back({i, c});
      }
      r.rel = rng() % 3 == 0   ? Relation::GreaterEq
              : rng() % 2 == 0 ? Relation::LessEq
                               : Relation::Equal;
      r.rhs = test::random_rational(rng, -3, 3, 2);
      lp.add_row(r);
    }
    LPResult res = simplex_solve(lp);
    auto oracle = test::enumerate_lp_max(lp);
    if (res.status == LPStatus::Optimal) {
      REQUIRE(oracle.has_value());
      CHECK(res.value == *oracle);
      CHECK(satisfies(lp, res.x));
    } else {
      REQUIRE(res.status == LPStatus::Infeasible);
      CHECK_FALSE(oracle.has_value());
      CHECK(certifies_infeasible(lp, res.row_mult));
    }
  }
}

TEST_CASE("the one node exchange system is a single row") {
  auto rows = gen_bisub_constraints(1);
  REQUIRE(rows.size() == 1);
  TableRow want;
  want.terms = {{HalfLabeling::parse("0").rank(), Rational(-1)},
                {HalfLabeling::parse("h").rank(), Rational(2)},
                {HalfLabeling::parse("1").rank(), Rational(-1)}};
  CHECK(rows[0] == want);
}

TEST_CASE("exchange rows count admissible node pairs") {
  for (int n = 1; n <= 3; ++n) {
    uint64_t triples = 0;
    for (uint64_t r = 0; r < pow3(n); ++r) {
      PairLabeling w = encode_half(HalfLabeling(n, r));
      int free_nodes = 0;
      for (int k = 0; k < 2 * n; ++k)
        if (!w.at(k) && !w.at(w.mate(k))) ++free_nodes;
      triples += (uint64_t)free_nodes * (free_nodes - 1) / 2;
    }
    CHECK(gen_bisub_constraints(n).size() == triples);
  }
  CHECK(gen_bisub_constraints(2).size() == 10);
}

TEST_CASE("exchange rows characterize the checker verdict") {
  Rng rng(62);
  for (int t = 0; t < 40; ++t) {
    int n = 1 + (int)(rng() % 3);
    HalfFunction g = t % 3 == 0 ? test::random_bisubmodular(rng, n)
                                : test::random_half_function(rng, n, -2, 2);
    CHECK(rows_hold(gen_bisub_constraints(n), g.values) == is_bisubmodular(g));
  }
  HalfFunction spike(2);
  spike.at_rank(HalfLabeling::parse("hh").rank()) = Rational(1);
  CHECK_FALSE(rows_hold(gen_bisub_constraints(2), spike.values));
}

TEST_CASE("mate orbits pair the doubled cube up to its fixed points") {
  for (int n = 1; n <= 3; ++n) {
    auto orbits = mate_orbits(n);
    CHECK(orbits.size() == (pow2(2 * n) + pow2(n)) / 2);
    CHECK(std::is_sorted(orbits.begin(), orbits.end()));
    for (uint64_t rep : orbits) {
      PairLabeling u(n, rep);
      CHECK(orbit_rep(u) == rep);
      CHECK(orbit_rep(mate_flip(u)) == rep);
      CHECK(rep <= mate_flip(u).rank());
    }
  }
  // singleton orbits are exactly the integral points
  for (uint64_t rep : mate_orbits(2)) {
    PairLabeling u(2, rep);
    CHECK((mate_flip(u) == u) == (classify(u) == DomainClass::Xcircle));
  }
}

TEST_CASE("submodular rows hold with equality for modular tables") {
  DoubledTable g(2);
  for (uint64_t r = 0; r < 16; ++r) {
    PairLabeling u(2, r);
    // coefficients c and -c on a node and its mate keep it symmetric
    g.values[r] = Rational(3) * Rational(u.at(0) - u.at(2)) +
                  Rational(-2) * Rational(u.at(1) - u.at(3)) + Rational(5);
  }
  REQUIRE(is_mate_symmetric(g));
  std::vector<Rational> by_orbit(pow2(4));
  for (uint64_t r = 0; r < 16; ++r) by_orbit[r] = g.values[r];
  for (const TableRow& row : gen_submodular_constraints(2))
    CHECK(row_value(row, by_orbit) == Rational(0));
}

TEST_CASE("submodular rows decide symmetric tables") {
  Rng rng(63);
  auto rows = gen_submodular_constraints(2);
  for (int t = 0; t < 30; ++t) {
    DoubledTable g(2);
    for (uint64_t r = 0; r < 16; ++r) {
      uint64_t rep = orbit_rep(PairLabeling(2, r));
      if (rep == r)
        g.values[r] = test::random_rational(rng, -3, 3, 2);
      else
        g.values[r] = g.values[rep];
    }
    REQUIRE(is_mate_symmetric(g));
    CHECK(rows_hold(rows, g.values) == is_submodular_table(g));
    if (is_submodular_table(g)) CHECK(submodular_all_pairs(g));
  }
}

TEST_CASE("locally submodular relaxations pass the all pairs lattice check") {
  Rng rng(64);
  DoubledTable g = half_sum_relaxation(test::random_submodular_table(rng, 2));
  CHECK(rows_hold(gen_submodular_constraints(2), g.values));
  CHECK(submodular_all_pairs(g));
}

TEST_CASE("tightest relaxations of submodular tables reach the true minimum") {
  Rng rng(65);
  for (int n = 2; n <= 3; ++n) {
    PBFTable f = test::random_submodular_table(rng, n);
    Rational want = brute_min(f).value;
    TightestResult bi = tightest_relaxation(f, RelaxationClass::Bisubmodular);
    TightestResult sub = tightest_relaxation(f, RelaxationClass::Submodular);
    CHECK(bi.tstar == want);
    CHECK(sub.tstar == want);
  }
}

TEST_CASE("tightest relaxations are optimal members of their class") {
  Rng rng(66);
  for (int t = 0; t < 4; ++t) {
    int n = 2 + (int)(t % 2);
    PBFTable f = test::random_table(rng, n, -3, 3);
    TightestResult bi = tightest_relaxation(f, RelaxationClass::Bisubmodular);
    TightestResult sub = tightest_relaxation(f, RelaxationClass::Submodular);
    CHECK(bi.tstar >= sub.tstar);

    CHECK(is_bisubmodular(bi.bisub));
    CHECK(brute_min_half(bi.bisub).value == bi.tstar);
    PBFTable back = bi.bisub.restrict_binary();
    CHECK(back.values == f.values);

    CHECK(is_mate_symmetric(sub.submod));
    CHECK(is_submodular_table(sub.submod));
    CHECK(is_tight_relaxation(sub.submod, f));
    Rational lo = sub.submod.values[0];
    for (const Rational& v : sub.submod.values) lo = min(lo, v);
    CHECK(lo == sub.tstar);
  }
}

TEST_CASE("for quadratics the exchange optimum is the roof dual bound") {
  Rng rng(67);
  for (int t = 0; t < 6; ++t) {
    int n = 1 + (int)(rng() % 3);
    QuadraticPBF f = test::random_quadratic(rng, n);
    TightestResult bi = tightest_relaxation(f.expand(), RelaxationClass::Bisubmodular);
    CHECK(bi.tstar == solve_roofdual(f).bound);
  }
}

TEST_CASE("headline bounds of the bundled four node table") {
  PBFTable f = fig1d_table();
  TightestResult bi = tightest_relaxation(f, RelaxationClass::Bisubmodular);
  CHECK(bi.tstar == Rational(0));
  CHECK(is_bisubmodular(bi.bisub));
  CHECK(brute_min_half(bi.bisub).value == Rational(0));

  TightestResult sub = tightest_relaxation(f, RelaxationClass::Submodular);
  CHECK(sub.tstar == Rational(-3, 10));
  CHECK(is_submodular_table(sub.submod));
  CHECK(is_tight_relaxation(sub.submod, f));
}

TEST_CASE("restrictions of symmetric submodular tables extend back") {
  Rng rng(68);
  PBFTable f = test::random_submodular_table(rng, 2);
  HalfFunction g = test::half_restriction(half_sum_relaxation(f));
  ExtensionResult ext = extension_feasible(g, false);
  REQUIRE(ext.feasible);
  CHECK(ext.result.status == LPStatus::Optimal);
  CHECK(is_mate_symmetric(ext.completion));
  CHECK(is_submodular_table(ext.completion));
  for (uint64_t r = 0; r < 9; ++r) {
    HalfLabeling x(2, r);
    CHECK(ext.completion.eval(encode_half(x)) == g.eval(x));
  }
}

TEST_CASE("a soft parity function cannot extend") {
  HalfFunction g = soft_xor();
  ExtensionResult ext = extension_feasible(g, false);
  REQUIRE_FALSE(ext.feasible);
  REQUIRE(ext.result.status == LPStatus::Infeasible);
  CHECK(certifies_infeasible(ext.lp, ext.result.row_mult));

  // the clash is a single constant row: g(hh) + g(10) <= g(1h) + g(h0)
  // reads 3/2 <= 1 once the known values are filled in
  int active = 0, hit = -1;
  for (size_t k = 0; k < ext.lp.rows.size(); ++k) {
    if (k < ext.result.row_mult.size() && !ext.result.row_mult[k].is_zero()) {
      ++active;
      hit = (int)k;
    }
  }
  CHECK(active == 1);
  REQUIRE(hit >= 0);
  CHECK(ext.lp.rows[hit].name == "0000+0+3");
  CHECK(ext.lp.rows[hit].terms.empty());
  CHECK(ext.lp.rows[hit].rhs < Rational(0));

  CHECK_FALSE(extension_feasible(g, true).feasible);
  std::string text = to_text(ext.lp);
  CHECK(text.find("0000+0+3") != std::string::npos);
}

TEST_CASE("symmetrization requires cardinality dependence") {
  HalfFunction g(2);
  g.at_rank(HalfLabeling::parse("01").rank()) = Rational(1);  // breaks the symmetry
  CHECK_THROWS(extension_feasible(g, true));
  CHECK_NOTHROW(extension_feasible(g, false));
}

TEST_CASE("the bundled grid extends only after its tightening") {
  Fixtures fx = fixtures(test::data_dir());
  HalfFunction b = expand(fx.fig1b), c = expand(fx.fig1c);

  for (bool sym : {false, true}) {
    ExtensionResult eb = extension_feasible(b, sym);
    CHECK_FALSE(eb.feasible);
    CHECK(certifies_infeasible(eb.lp, eb.result.row_mult));

    ExtensionResult ec = extension_feasible(c, sym);
    REQUIRE(ec.feasible);
    CHECK(is_mate_symmetric(ec.completion));
    CHECK(is_submodular_table(ec.completion));
    for (uint64_t r = 0; r < 27; ++r) {
      HalfLabeling x(3, r);
      CHECK(ec.completion.eval(encode_half(x)) == c.eval(x));
    }
  }
}

TEST_CASE("the infeasible grid system pins two orbit values first") {
  Fixtures fx = fixtures(test::data_dir());
  ExtensionResult ext = extension_feasible(expand(fx.fig1b), true);
  REQUIRE_FALSE(ext.feasible);

  const LinearProgram& lp = ext.lp;
  REQUIRE(lp.num_vars() == 3);
  int va = var_index(lp, "G(0,1,1,1)");
  int vb = var_index(lp, "G(1,0,1,1)");
  int vc = var_index(lp, "G(0,0,1,2)");
  REQUIRE(va >= 0);
  REQUIRE(vb >= 0);
  REQUIRE(vc >= 0);

  // the certificate's rows alone are already contradictory
  LinearProgram active;
  active.maximize = true;
  for (int i = 0; i < lp.num_vars(); ++i) active.add_var(lp.var_names[i]);
  for (size_t k = 0; k < lp.rows.size(); ++k)
    if (!ext.result.row_mult[k].is_zero()) active.add_row(lp.rows[k]);
  CHECK(simplex_solve(active).status == LPStatus::Infeasible);

  // without the rows that mention the third orbit, the other two are forced
  LinearProgram partial;
  for (int i = 0; i < lp.num_vars(); ++i) partial.add_var(lp.var_names[i]);
  for (const LPRow& r : lp.rows)
    if (!row_touches(r, vc)) partial.add_row(r);
  for (int v : {va, vb}) {
    Rational forced = v == va ? Rational(0) : Rational(1);
    for (bool maximize : {true, false}) {
      partial.maximize = maximize;
      partial.objective.assign(lp.num_vars(), Rational(0));
      partial.objective[v] = Rational(1);
      LPResult res = simplex_solve(partial);
      REQUIRE(res.status == LPStatus::Optimal);
      CHECK(res.value == forced);
    }
  }

  // substituting the forced values squeezes the third orbit into an
  // empty interval
  std::vector<Rational> val(lp.num_vars());
  val[va] = Rational(0);
  val[vb] = Rational(1);
  bool has_lower = false, has_upper = false;
  Rational best_lower, best_upper;
  for (const LPRow& r : lp.rows) {
    if (!row_touches(r, vc)) continue;
    REQUIRE(r.rel == Relation::LessEq);
    Rational rest, coeff;
    for (const auto& t : r.terms) {
      if (t.var == vc)
        coeff += t.coeff;
      else
        rest += t.coeff * val[t.var];
    }
    Rational bound = (r.rhs - rest) / coeff;
    if (coeff > Rational(0)) {
      if (!has_upper || bound < best_upper) best_upper = bound;
      has_upper = true;
    } else {
      if (!has_lower || bound > best_lower) best_lower = bound;
      has_lower = true;
    }
  }
  REQUIRE(has_lower);
  REQUIRE(has_upper);
  CHECK(best_lower == Rational(1));
  CHECK(best_upper == Rational(0));
}

TEST_CASE("pointwise maxima agree with the table on integral points") {
  Rng rng(69);
  PBFTable f = test::random_table(rng, 2, -3, 3);
  for (uint64_t r = 0; r < 4; ++r) {
    BinaryLabeling x(2, r);
    PairLabeling u0 = test::embed_binary(x);
    CHECK(pointwise_max_relaxation(f, u0, RelaxationClass::Bisubmodular) == f.eval(x));
    CHECK(pointwise_max_relaxation(f, u0, RelaxationClass::Submodular) == f.eval(x));
  }
}

TEST_CASE("for quadratics the relaxation dominates pointwise") {
  Rng rng(70);
  for (int t = 0; t < 3; ++t) {
    int n = 2 + (int)(t % 2);
    QuadraticPBF f = test::random_quadratic(rng, n);
    SymmetricQuadratic g = build_roofdual(f);
    PBFTable table = f.expand();
    for (uint64_t r = 0; r < pow3(n); ++r) {
      PairLabeling u0 = encode_half(HalfLabeling(n, r));
      CHECK(pointwise_max_relaxation(table, u0, RelaxationClass::Bisubmodular) ==
            g.eval(u0));
    }
  }
}

TEST_CASE("half sums of submodular tables dominate pointwise") {
  Rng rng(71);
  PBFTable f = test::random_submodular_table(rng, 2);
  DoubledTable hs = half_sum_relaxation(f);
  for (uint64_t r = 0; r < 9; ++r) {
    PairLabeling u0 = encode_half(HalfLabeling(2, r));
    CHECK(pointwise_max_relaxation(f, u0, RelaxationClass::Bisubmodular) == hs.eval(u0));
  }
}

TEST_CASE("batch pointwise maxima collate in rank order") {
  Rng rng(72);
  PBFTable f = test::random_table(rng, 2, -2, 2);
  for (RelaxationClass cls : {RelaxationClass::Bisubmodular, RelaxationClass::Submodular}) {
    std::vector<Rational> all = pointwise_max_all(f, cls);
    REQUIRE(all.size() == 9);
    for (uint64_t r = 0; r < 9; ++r) {
      PairLabeling u0 = encode_half(HalfLabeling(2, r));
      CHECK(all[r] == pointwise_max_relaxation(f, u0, cls));
    }
  }
}

TEST_CASE("pointwise maxima order the two classes") {
  Rng rng(73);
  PBFTable f = test::random_table(rng, 2, -2, 2);
  auto bi = pointwise_max_all(f, RelaxationClass::Bisubmodular);
  auto sub = pointwise_max_all(f, RelaxationClass::Submodular);
  for (size_t k = 0; k < bi.size(); ++k) CHECK(bi[k] >= sub[k]);
}

TEST_CASE("the four node table separates the classes at the center") {
  PBFTable f = fig1d_table();
  PairLabeling center(4);  // all classes undecided
  Rational bi = pointwise_max_relaxation(f, center, RelaxationClass::Bisubmodular);
  Rational sub = pointwise_max_relaxation(f, center, RelaxationClass::Submodular);
  CHECK(bi > sub);
}
