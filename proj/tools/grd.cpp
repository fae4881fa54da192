// grd: pseudo-boolean functions, half-integral relaxations, roof duality.
// Exit codes: 0 property holds / success, 1 property fails (certificate in
// the report), 2 usage or input error.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "grd/bisub.hpp"
#include "grd/cardfn.hpp"
#include "grd/io.hpp"
#include "grd/lovasz.hpp"
#include "grd/lp.hpp"
#include "grd/pbf.hpp"
#include "grd/relax.hpp"
#include "grd/roofdual.hpp"

namespace {

using namespace grd;

std::string join_nodes(const std::vector<int>& nodes) {
  if (nodes.empty()) return "-";
  std::string s;
  for (size_t k = 0; k < nodes.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(nodes[k] + 1);
  }
  return s;
}

void print(const Report& rep) { std::cout << rep.str(); }

// p1/p2 hold the combined side of the failed inequality, q1/q2 the points
void add_violation(Report& rep, const ExchangeViolation& v) {
  rep.add("violation_x", v.q1.str());
  rep.add("violation_y", v.q2.str());
  rep.add("violation_meet", v.p1.str());
  rep.add("violation_join", v.p2.str());
  rep.add("lhs", v.lhs);
  rep.add("rhs", v.rhs);
}

int run_bisub_check(const std::string& in, const std::string& method) {
  HalfFunction g = read_hif(in);
  Report rep;
  rep.add("method", method);
  if (method == "all") {
    CheckResult res[4];
    long checked = 0;
    for (int m = 0; m < 4; ++m) {
      res[m] = check_bisubmodular(g, static_cast<CheckMethod>(m));
      checked += res[m].checked;
    }
    for (int m = 1; m < 4; ++m)
      if (res[m].bisubmodular != res[0].bisubmodular) {
        rep.add("divergence", true);
        for (int k = 0; k < 4; ++k)
          rep.add(std::string("verdict_") + method_letter(static_cast<CheckMethod>(k)),
                  res[k].bisubmodular);
        print(rep);
        return 2;
      }
    rep.add("bisubmodular", res[0].bisubmodular);
    rep.add("checked", checked);
    if (!res[0].bisubmodular) add_violation(rep, *res[0].violation);
    print(rep);
    return res[0].bisubmodular ? 0 : 1;
  }
  CheckResult res = check_bisubmodular(g, method_from_letter(method[0]));
  rep.add("bisubmodular", res.bisubmodular);
  rep.add("checked", (long)res.checked);
  if (!res.bisubmodular) add_violation(rep, *res.violation);
  print(rep);
  return res.bisubmodular ? 0 : 1;
}

int run_bisub_minimize(const std::string& in, const std::string& domain) {
  HalfFunction g = read_hif(in);
  Report rep;
  rep.add("domain", domain);
  MinScan scan = domain == "half" ? brute_min_half(g) : brute_min_binary(g);
  rep.add("minimum", scan.value);
  rep.add("argmin", domain == "half" ? HalfLabeling(g.n, scan.argmins[0]).str()
                                     : BinaryLabeling(g.n, scan.argmins[0]).str());
  rep.add("argmin_count", (long)scan.argmins.size());
  print(rep);
  return 0;
}

int run_roofdual_solve(const std::string& in) {
  QuadraticPBF f = read_qpbf(in);
  RoofDualResult res = solve_roofdual(f);
  Report rep;
  rep.add("bound", res.bound);
  rep.add("xhat", res.xhat.str());
  rep.add("persistent", join_nodes(res.persistent));
  rep.add("persistent_count", (long)res.persistent.size());
  print(rep);
  return 0;
}

int run_relax_tightest(const std::string& in, const std::string& cls) {
  PBFTable f = read_pbf(in);
  TightestResult res = tightest_relaxation(
      f, cls == "bisub" ? RelaxationClass::Bisubmodular : RelaxationClass::Submodular);
  Report rep;
  rep.add("class", cls);
  rep.add("t_star", res.tstar);
  print(rep);
  return 0;
}

int run_relax_extend(const std::string& in, bool symmetrize) {
  HalfFunction g = read_hif(in);
  ExtensionResult res = extension_feasible(g, symmetrize);
  Report rep;
  rep.add("symmetrize", symmetrize);
  rep.add("feasible", res.feasible);
  if (res.feasible) {
    print(rep);
    return 0;
  }
  rep.add("certificate_valid", certifies_infeasible(res.lp, res.result.row_mult));
  long active = 0;
  for (size_t k = 0; k < res.lp.rows.size(); ++k)
    if (!res.result.row_mult[k].is_zero()) active++;
  rep.add("certificate_rows", active);
  for (size_t k = 0; k < res.lp.rows.size(); ++k)
    if (!res.result.row_mult[k].is_zero())
      rep.add("cert[" + res.lp.rows[k].name + "]", res.result.row_mult[k]);
  print(rep);
  return 1;
}

int run_relax_dominance(const std::string& in) {
  QuadraticPBF f = read_qpbf(in);
  if (f.size() > 3) {
    std::cerr << "error: dominance probing is limited to n <= 3\n";
    return 2;
  }
  PBFTable tab = f.expand();
  std::vector<Rational> best = pointwise_max_all(tab, RelaxationClass::Bisubmodular);
  SymmetricQuadratic g = build_roofdual(f);
  Report rep;
  rep.add("points", (long)best.size());
  for (uint64_t hr = 0; hr < best.size(); ++hr) {
    HalfLabeling x(f.size(), hr);
    Rational rd = g.eval_half(x);
    if (rd != best[hr]) {
      rep.add("dominance", false);
      rep.add("point", x.str());
      rep.add("lp_max", best[hr]);
      rep.add("roofdual", rd);
      print(rep);
      return 1;
    }
  }
  rep.add("dominance", true);
  print(rep);
  return 0;
}

int run_lovasz_eval(const std::string& in, const std::string& at) {
  SignedFunction h = transport(read_hif(in));
  LPoint p = LPoint::parse(at);
  if ((int)p.x.size() != h.n)
    throw std::invalid_argument("point has " + std::to_string(p.x.size()) +
                                " coordinates, function has " + std::to_string(h.n));
  Report rep;
  rep.add("at", p.str());
  rep.add("value", lovasz_eval(h, p));
  print(rep);
  return 0;
}

int run_lovasz_verify(const std::string& in, int depth, int samples, uint64_t seed) {
  SignedFunction h = transport(read_hif(in));
  IntegralityReport res = total_integrality_verify(h, depth, samples, seed);
  Report rep;
  rep.add("depth", (long)depth);
  rep.add("verified", res.verified);
  if (!res.verified) rep.add("failure", res.failure);
  print(rep);
  return res.verified ? 0 : 1;
}

int run_card_check(const std::string& in) {
  CardinalityFn G = read_card(in);
  CardCheckResult res = check_card_conditions(G);
  Report rep;
  rep.add("ok", res.ok);
  rep.add("conditions_checked", res.checked);
  if (!res.ok) {
    rep.add("condition", std::string(1, res.violation->condition));
    rep.add("a", (long)res.violation->a);
    rep.add("b", (long)res.violation->b);
    rep.add("lhs", res.violation->lhs);
    rep.add("rhs", res.violation->rhs);
  }
  print(rep);
  return res.ok ? 0 : 1;
}

int run_card_expand(const std::string& in, const std::string& out_path) {
  CardinalityFn G = read_card(in);
  HalfFunction g = expand(G);
  write_hif(out_path, g);
  Report rep;
  rep.add("n", (long)g.n);
  rep.add("rows", (long)g.values.size());
  rep.add("out", out_path);
  print(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-boolean functions, half-integral relaxations, roof duality"};
  app.require_subcommand(1);
  uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for sampled checks");

  int rc = 0;

  auto* bisub = app.add_subcommand("bisub", "half-domain exchange checks and minimization");
  bisub->require_subcommand(1);
  std::string bc_in, bc_method = "all";
  auto* bcheck = bisub->add_subcommand("check", "test the exchange inequalities");
  bcheck->add_option("--in", bc_in, "hif file")->required();
  bcheck->add_option("--method", bc_method, "a|b|c|d|all")
      ->check(CLI::IsMember({"a", "b", "c", "d", "all"}));
  bcheck->callback([&] { rc = run_bisub_check(bc_in, bc_method); });
  std::string bm_in, bm_domain = "half";
  auto* bmin = bisub->add_subcommand("minimize", "brute-force minimum");
  bmin->add_option("--in", bm_in, "hif file")->required();
  bmin->add_option("--domain", bm_domain, "half|binary")
      ->check(CLI::IsMember({"half", "binary"}));
  bmin->callback([&] { rc = run_bisub_minimize(bm_in, bm_domain); });

  auto* roofdual = app.add_subcommand("roofdual", "quadratic relaxation by maxflow");
  roofdual->require_subcommand(1);
  std::string rd_in;
  auto* rsolve = roofdual->add_subcommand("solve", "bound, half-integral point, persistency");
  rsolve->add_option("--in", rd_in, "qpbf file")->required();
  rsolve->callback([&] { rc = run_roofdual_solve(rd_in); });

  auto* relax = app.add_subcommand("relax", "LP relaxation probes");
  relax->require_subcommand(1);
  std::string rt_in, rt_class = "bisub";
  auto* rtight = relax->add_subcommand("tightest", "max-min relaxation in a class");
  rtight->add_option("--in", rt_in, "pbf file")->required();
  rtight->add_option("--class", rt_class, "bisub|submod")
      ->check(CLI::IsMember({"bisub", "submod"}));
  rtight->callback([&] { rc = run_relax_tightest(rt_in, rt_class); });
  std::string re_in;
  bool re_sym = false;
  auto* rext = relax->add_subcommand("extend", "submodular extension feasibility");
  rext->add_option("--in", re_in, "hif file")->required();
  rext->add_flag("--symmetrize", re_sym, "collapse to count signatures");
  rext->callback([&] { rc = run_relax_extend(re_in, re_sym); });
  std::string rdo_in;
  auto* rdom = relax->add_subcommand("dominance", "LP maximum vs the quadratic relaxation");
  rdom->add_option("--in", rdo_in, "qpbf file")->required();
  rdom->callback([&] { rc = run_relax_dominance(rdo_in); });

  auto* lovasz = app.add_subcommand("lovasz", "piecewise-linear extension tools");
  lovasz->require_subcommand(1);
  std::string le_in, le_at;
  auto* leval = lovasz->add_subcommand("eval", "extension value at a point");
  leval->add_option("--in", le_in, "hif file")->required();
  leval->add_option("--at", le_at, "comma-separated rationals in [-1,1]")->required();
  leval->callback([&] { rc = run_lovasz_eval(le_in, le_at); });
  std::string lv_in;
  int lv_depth = 1, lv_samples = 4;
  auto* lverify = lovasz->add_subcommand("verify", "convexity and linearity probes");
  lverify->add_option("--in", lv_in, "hif file")->required();
  lverify->add_option("--depth", lv_depth, "restriction recursion depth");
  lverify->add_option("--samples", lv_samples, "sampled orderings per level");
  lverify->callback([&] { rc = run_lovasz_verify(lv_in, lv_depth, lv_samples, seed); });

  auto* card = app.add_subcommand("card", "cardinality-dependent functions");
  card->require_subcommand(1);
  std::string cc_in;
  auto* ccheck = card->add_subcommand("check", "boundary and interior conditions");
  ccheck->add_option("--in", cc_in, "card file")->required();
  ccheck->callback([&] { rc = run_card_check(cc_in); });
  std::string ce_in, ce_out;
  auto* cexpand = card->add_subcommand("expand", "write the half-domain table");
  cexpand->add_option("--in", ce_in, "card file")->required();
  cexpand->add_option("--out", ce_out, "hif output path")->required();
  cexpand->callback([&] { rc = run_card_expand(ce_in, ce_out); });

  // --seed lives on the root; let it appear after any subcommand
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    for (CLI::App* s : a->get_subcommands(std::function<bool(CLI::App*)>{})) {
      s->fallthrough();
      allow_fallthrough(s);
    }
  };
  allow_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
