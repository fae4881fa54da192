#include "grd/cardfn.hpp"

#include <stdexcept>

#include "grd/io.hpp"

namespace grd {

CardCounts card_counts(const PairLabeling& u) {
  CardCounts c;
  for (int i = 0; i < u.classes(); ++i) {
    int a = u.at(i), b = u.at(i + u.classes());
    if (a == 0 && b == 1) c.n01++;
    else if (a == 1 && b == 0) c.n10++;
    else if (a == 0 && b == 0) c.n00++;
    else c.n11++;
  }
  return c;
}

int CardinalityFn::index(int a, int b) const {
  if (a < 0 || b < 0 || a + b > n_)
    throw std::out_of_range("cardinality function: point outside the triangle");
  // rows by a; row a holds b = 0 .. n-a
  int row_start = a * (n_ + 1) - a * (a - 1) / 2;
  return row_start + b;
}

HalfFunction expand(const CardinalityFn& G) {
  int n = G.size();
  HalfFunction g(n);
  for (uint64_t hr = 0; hr < pow3(n); ++hr) {
    HalfLabeling x(n, hr);
    int zeros = 0, ones = 0;
    for (int i = 0; i < n; ++i) {
      if (x.at(i) == HalfLabeling::kZero) zeros++;
      if (x.at(i) == HalfLabeling::kOne) ones++;
    }
    g.values[hr] = G.at(zeros, ones);
  }
  return g;
}

CardCheckResult check_card_conditions(const CardinalityFn& G) {
  int n = G.size();
  CardCheckResult out;
  auto fail = [&](char cond, int a, int b, Rational lhs, Rational rhs) {
    out.ok = false;
    out.violation = CardViolation{cond, a, b, std::move(lhs), std::move(rhs)};
  };
  for (int a = 2; a <= n && out.ok; ++a)
    for (int b = 0; a + b <= n && out.ok; ++b) {
      out.checked++;
      Rational lhs = G.at(a, b) + G.at(a - 2, b), rhs = Rational(2) * G.at(a - 1, b);
      if (lhs > rhs) fail('a', a, b, lhs, rhs);
    }
  for (int a = 0; a <= n && out.ok; ++a)
    for (int b = 2; a + b <= n && out.ok; ++b) {
      out.checked++;
      Rational lhs = G.at(a, b) + G.at(a, b - 2), rhs = Rational(2) * G.at(a, b - 1);
      if (lhs > rhs) fail('b', a, b, lhs, rhs);
    }
  for (int a = 1; a <= n && out.ok; ++a)
    for (int b = 1; a + b <= n && out.ok; ++b) {
      out.checked++;
      Rational lhs = G.at(a, b) + G.at(a - 1, b - 1);
      Rational rhs = G.at(a - 1, b) + G.at(a, b - 1);
      if (lhs > rhs) fail('c', a, b, lhs, rhs);
    }
  for (int a = 0; a < n && out.ok; ++a)
    for (int b = 0; a + b < n && out.ok; ++b) {
      out.checked++;
      Rational lhs = Rational(2) * G.at(a, b), rhs = G.at(a + 1, b) + G.at(a, b + 1);
      if (lhs > rhs) fail('d', a, b, lhs, rhs);
    }
  return out;
}

Fixtures fixtures(const std::string& data_dir) {
  Fixtures f;
  f.fig1b = read_card(data_dir + "/fig1b.card");
  f.fig1c = read_card(data_dir + "/fig1c.card");
  f.fig1d = fig1d_table();
  return f;
}

PBFTable fig1d_table() {
  PBFTable f(4);
  static const int vals[16] = {3, 2, 4, 10, 2, 12, 13, 12, 1, 3, 0, 12, 7, 10, 12, 14};
  for (int r = 0; r < 16; ++r) f.values[r] = vals[r];
  return f;
}

}  // namespace grd
