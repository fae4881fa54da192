#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "testutil.hpp"

using grd::test::CliResult;
using grd::test::data_dir;
using grd::test::run_cli;
using grd::test::write_temp;

namespace {

bool has_line(const std::string& out, const std::string& line) {
  std::string want = line + "\n";
  size_t pos = out.find(want);
  while (pos != std::string::npos) {
    if (pos == 0 || out[pos - 1] == '\n') return true;
    pos = out.find(want, pos + 1);
  }
  return false;
}

// x1 + x2 - 2 x1 x2 sampled on the half grid: cardinality-dependent,
// not bisubmodular, no submodular extension
std::string xor_hif() {
  return write_temp("xor.hif",
                    "hif 2\n"
                    "00 0\n"
                    "0h 1/2\n"
                    "01 1\n"
                    "h0 1/2\n"
                    "hh 1/2\n"
                    "h1 1/2\n"
                    "10 1\n"
                    "1h 1/2\n"
                    "11 0\n");
}

std::string spike_hif() {
  return write_temp("spike.hif", "hif 1\n0 0\nh 1\n1 0\n");
}

std::string constant_hif() {
  return write_temp("const.hif", "hif 1\n0 2\nh 2\n1 2\n");
}

std::string triangle_qpbf() {
  return write_temp("triangle.qpbf",
                    "qpbf 3\n"
                    "e 1 2 1 0 0 1\n"
                    "e 1 3 1 0 0 1\n"
                    "e 2 3 1 0 0 1\n");
}

}  // namespace

TEST_CASE("bisub check accepts a constant function") {
  CliResult r = run_cli("bisub check --in " + constant_hif() + " --method all");
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.out, "method = all"));
  CHECK(has_line(r.out, "bisubmodular = true"));
  CHECK(r.out.find("violation") == std::string::npos);
}

TEST_CASE("bisub check reports the half-point spike with its certificate") {
  CliResult r = run_cli("bisub check --in " + spike_hif() + " --method a");
  CHECK(r.exit_code == 1);
  CHECK(has_line(r.out, "method = a"));
  CHECK(has_line(r.out, "bisubmodular = false"));
  CHECK(has_line(r.out, "violation_x = 01"));
  CHECK(has_line(r.out, "violation_y = 10"));
  CHECK(has_line(r.out, "violation_meet = 00"));
  CHECK(has_line(r.out, "violation_join = 00"));
  CHECK(has_line(r.out, "lhs = 2"));
  CHECK(has_line(r.out, "rhs = 0"));

  // every method rejects it, including the aggregate
  for (std::string m : {"b", "c", "d", "all"}) {
    CliResult rm = run_cli("bisub check --in " + spike_hif() + " --method " + m);
    CHECK(rm.exit_code == 1);
    CHECK(has_line(rm.out, "bisubmodular = false"));
  }
}

TEST_CASE("bisub minimize scans both domains") {
  CliResult half = run_cli("bisub minimize --in " + xor_hif() + " --domain half");
  CHECK(half.exit_code == 0);
  CHECK(has_line(half.out, "domain = half"));
  CHECK(has_line(half.out, "minimum = 0"));
  CHECK(has_line(half.out, "argmin = 00"));
  CHECK(has_line(half.out, "argmin_count = 2"));

  CliResult bin = run_cli("bisub minimize --in " + xor_hif() + " --domain binary");
  CHECK(bin.exit_code == 0);
  CHECK(has_line(bin.out, "domain = binary"));
  CHECK(has_line(bin.out, "minimum = 0"));
  CHECK(has_line(bin.out, "argmin = 00"));
  CHECK(has_line(bin.out, "argmin_count = 2"));
}

TEST_CASE("roofdual solve reports bound, point and persistency") {
  CliResult r = run_cli("roofdual solve --in " + triangle_qpbf());
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.out, "bound = 0"));
  CHECK(has_line(r.out, "xhat = hhh"));
  CHECK(has_line(r.out, "persistent = -"));
  CHECK(has_line(r.out, "persistent_count = 0"));

  // forced coordinate: 2 + 3 x1 - x1 x2
  std::string forced = write_temp("forced.qpbf",
                                  "qpbf 2\n"
                                  "c 2\n"
                                  "u 1 0 3\n"
                                  "e 1 2 0 0 0 -1\n");
  CliResult f = run_cli("roofdual solve --in " + forced);
  CHECK(f.exit_code == 0);
  CHECK(has_line(f.out, "bound = 2"));
  CHECK(has_line(f.out, "xhat = 0h"));
  CHECK(has_line(f.out, "persistent = 1"));
  CHECK(has_line(f.out, "persistent_count = 1"));
}

TEST_CASE("relax tightest finds the bisubmodular headline value") {
  CliResult r = run_cli("relax tightest --in " + data_dir() + "/fig1d.pbf --class bisub");
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.out, "class = bisub"));
  CHECK(has_line(r.out, "t_star = 0"));
}

TEST_CASE("relax extend rejects the xor sample with a one-row certificate") {
  CliResult r = run_cli("relax extend --in " + xor_hif());
  CHECK(r.exit_code == 1);
  CHECK(has_line(r.out, "symmetrize = false"));
  CHECK(has_line(r.out, "feasible = false"));
  CHECK(has_line(r.out, "certificate_valid = true"));
  CHECK(has_line(r.out, "certificate_rows = 1"));
  CHECK(r.out.find("cert[0000+0+3] = ") != std::string::npos);

  CliResult s = run_cli("relax extend --in " + xor_hif() + " --symmetrize");
  CHECK(s.exit_code == 1);
  CHECK(has_line(s.out, "symmetrize = true"));
  CHECK(has_line(s.out, "feasible = false"));
  CHECK(has_line(s.out, "certificate_valid = true"));
}

TEST_CASE("card expand feeds the other commands") {
  std::string out_path = "/tmp/grdtest_fig1b_expanded.hif";
  CliResult ex = run_cli("card expand --in " + data_dir() + "/fig1b.card --out " + out_path);
  CHECK(ex.exit_code == 0);
  CHECK(has_line(ex.out, "n = 3"));
  CHECK(has_line(ex.out, "rows = 27"));
  CHECK(has_line(ex.out, "out = " + out_path));

  // bisubmodular, yet no submodular extension exists
  CliResult chk = run_cli("bisub check --in " + out_path + " --method all");
  CHECK(chk.exit_code == 0);
  CHECK(has_line(chk.out, "bisubmodular = true"));

  CliResult ext = run_cli("relax extend --in " + out_path);
  CHECK(ext.exit_code == 1);
  CHECK(has_line(ext.out, "feasible = false"));
  CHECK(has_line(ext.out, "certificate_valid = true"));
  CHECK(ext.out.find("cert[") != std::string::npos);

  // the softened variant does extend
  std::string out_c = "/tmp/grdtest_fig1c_expanded.hif";
  run_cli("card expand --in " + data_dir() + "/fig1c.card --out " + out_c);
  CliResult ok = run_cli("relax extend --in " + out_c);
  CHECK(ok.exit_code == 0);
  CHECK(has_line(ok.out, "feasible = true"));
}

TEST_CASE("relax dominance compares the LP maximum with the maxflow relaxation") {
  std::string q = write_temp("dom.qpbf",
                             "qpbf 2\n"
                             "u 1 0 1\n"
                             "e 1 2 0 1 1 0\n");
  CliResult r = run_cli("relax dominance --in " + q);
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.out, "points = 9"));
  CHECK(has_line(r.out, "dominance = true"));

  std::string big = write_temp("dom4.qpbf", "qpbf 4\n");
  CliResult b = run_cli("relax dominance --in " + big);
  CHECK(b.exit_code == 2);
  CHECK(b.out.find("error:") != std::string::npos);
  CHECK(b.out.find("n <= 3") != std::string::npos);
}

TEST_CASE("lovasz eval interpolates the xor sample") {
  CliResult r = run_cli("lovasz eval --in " + xor_hif() + " --at 1/2,-1/4");
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.out, "at = 1/2,-1/4"));
  CHECK(has_line(r.out, "value = 5/8"));

  CliResult bad = run_cli("lovasz eval --in " + xor_hif() + " --at 1/2");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("error:") != std::string::npos);
}

TEST_CASE("lovasz verify separates convex from non-convex samples") {
  CliResult ok = run_cli("lovasz verify --in " + constant_hif());
  CHECK(ok.exit_code == 0);
  CHECK(has_line(ok.out, "depth = 1"));
  CHECK(has_line(ok.out, "verified = true"));

  CliResult seeded = run_cli("lovasz verify --in " + constant_hif() + " --seed 7 --depth 2");
  CHECK(seeded.exit_code == 0);
  CHECK(has_line(seeded.out, "verified = true"));

  CliResult bad = run_cli("lovasz verify --in " + spike_hif());
  CHECK(bad.exit_code == 1);
  CHECK(has_line(bad.out, "verified = false"));
  CHECK(bad.out.find("failure = ") != std::string::npos);
}

TEST_CASE("card check passes the bundled triangle and flags a convex one") {
  CliResult ok = run_cli("card check --in " + data_dir() + "/fig1b.card");
  CHECK(ok.exit_code == 0);
  CHECK(has_line(ok.out, "ok = true"));

  std::string sq = write_temp("sq.card",
                              "card 3\n"
                              "0 0 0\n0 1 0\n0 2 0\n0 3 0\n"
                              "1 0 1\n1 1 1\n1 2 1\n"
                              "2 0 4\n2 1 4\n"
                              "3 0 9\n");
  CliResult bad = run_cli("card check --in " + sq);
  CHECK(bad.exit_code == 1);
  CHECK(has_line(bad.out, "ok = false"));
  CHECK(has_line(bad.out, "condition = a"));
  CHECK(has_line(bad.out, "a = 2"));
  CHECK(has_line(bad.out, "b = 0"));
  CHECK(has_line(bad.out, "lhs = 4"));
  CHECK(has_line(bad.out, "rhs = 2"));
}

TEST_CASE("usage and input problems exit with code 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("bisub check").exit_code == 2);
  CHECK(run_cli("bisub check --in " + spike_hif() + " --method z").exit_code == 2);

  CliResult missing = run_cli("bisub check --in /nonexistent/grd.hif");
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.find("error: cannot open '/nonexistent/grd.hif'") != std::string::npos);

  std::string broken = write_temp("broken.hif", "hif 1\n0 1\n0 2\nh 0\n1 0\n");
  CliResult malformed = run_cli("bisub check --in " + broken);
  CHECK(malformed.exit_code == 2);
  CHECK(malformed.out.find("error: line 3: duplicate labeling 0") != std::string::npos);
}

TEST_CASE("reports are byte deterministic across runs") {
  std::string cmd = "roofdual solve --in " + triangle_qpbf();
  CliResult a = run_cli(cmd);
  CliResult b = run_cli(cmd);
  CHECK(a.exit_code == b.exit_code);
  CHECK(a.out == b.out);

  std::string ext = "relax extend --in " + xor_hif();
  CliResult c = run_cli(ext);
  CliResult d = run_cli(ext);
  CHECK(c.out == d.out);
}
