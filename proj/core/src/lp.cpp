#include "grd/lp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace grd {

int LinearProgram::add_var(std::string name, std::optional<Rational> lo,
                           std::optional<Rational> hi) {
  int id = num_vars();
  objective.push_back(Rational(0));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  var_names.push_back(name.empty() ? "v" + std::to_string(id) : std::move(name));
  return id;
}

void LinearProgram::add_row(LPRow row) {
  std::sort(row.terms.begin(), row.terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
  for (size_t k = 0; k + 1 < row.terms.size(); ++k)
    if (row.terms[k].var == row.terms[k + 1].var)
      throw std::invalid_argument("duplicate variable in constraint row");
  for (const LinearTerm& t : row.terms)
    if (t.var < 0 || t.var >= num_vars())
      throw std::invalid_argument("constraint references undeclared variable");
  rows.push_back(std::move(row));
}

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x) {
  Rational v;
  for (int i = 0; i < lp.num_vars(); ++i) v += lp.objective[i] * x[i];
  return v;
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if ((int)x.size() != lp.num_vars()) return false;
  for (int i = 0; i < lp.num_vars(); ++i) {
    if (lp.lower[i] && x[i] < *lp.lower[i]) return false;
    if (lp.upper[i] && x[i] > *lp.upper[i]) return false;
  }
  for (const LPRow& row : lp.rows) {
    Rational lhs;
    for (const LinearTerm& t : row.terms) lhs += t.coeff * x[t.var];
    switch (row.rel) {
      case Relation::LessEq:
        if (lhs > row.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != row.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

bool certifies_infeasible(const LinearProgram& lp, const std::vector<Rational>& mult) {
  int R = (int)lp.rows.size(), V = lp.num_vars();
  if ((int)mult.size() != R + 2 * V) return false;
  for (int r = 0; r < R; ++r) {
    if (lp.rows[r].rel == Relation::LessEq && mult[r].sign() < 0) return false;
    if (lp.rows[r].rel == Relation::GreaterEq && mult[r].sign() > 0) return false;
  }
  for (int i = 0; i < V; ++i) {
    const Rational& lo = mult[R + i];
    const Rational& hi = mult[R + V + i];
    if (lo.sign() < 0 || hi.sign() < 0) return false;
    if (lo.sign() > 0 && !lp.lower[i]) return false;
    if (hi.sign() > 0 && !lp.upper[i]) return false;
  }
  std::vector<Rational> gamma(V);
  Rational beta;
  for (int r = 0; r < R; ++r) {
    if (mult[r].is_zero()) continue;
    for (const LinearTerm& t : lp.rows[r].terms) gamma[t.var] += mult[r] * t.coeff;
    beta += mult[r] * lp.rows[r].rhs;
  }
  for (int i = 0; i < V; ++i) {
    // lower bound row is -x_i <= -l_i, upper bound row is x_i <= u_i
    if (!mult[R + i].is_zero()) {
      gamma[i] -= mult[R + i];
      beta -= mult[R + i] * *lp.lower[i];
    }
    if (!mult[R + V + i].is_zero()) {
      gamma[i] += mult[R + V + i];
      beta += mult[R + V + i] * *lp.upper[i];
    }
  }
  for (int i = 0; i < V; ++i)
    if (!gamma[i].is_zero()) return false;
  return beta.sign() < 0;
}

bool certifies_unbounded(const LinearProgram& lp, const std::vector<Rational>& x,
                         const std::vector<Rational>& ray) {
  if (!satisfies(lp, x)) return false;
  if ((int)ray.size() != lp.num_vars()) return false;
  bool moves = false;
  for (int i = 0; i < lp.num_vars(); ++i) {
    if (!ray[i].is_zero()) moves = true;
    if (lp.lower[i] && ray[i].sign() < 0) return false;
    if (lp.upper[i] && ray[i].sign() > 0) return false;
  }
  if (!moves) return false;
  for (const LPRow& row : lp.rows) {
    Rational drift;
    for (const LinearTerm& t : row.terms) drift += t.coeff * ray[t.var];
    switch (row.rel) {
      case Relation::LessEq:
        if (drift.sign() > 0) return false;
        break;
      case Relation::Equal:
        if (!drift.is_zero()) return false;
        break;
      case Relation::GreaterEq:
        if (drift.sign() < 0) return false;
        break;
    }
  }
  Rational gain;
  for (int i = 0; i < lp.num_vars(); ++i) gain += lp.objective[i] * ray[i];
  return lp.maximize ? gain.sign() > 0 : gain.sign() < 0;
}

std::string to_text(const LinearProgram& lp) {
  std::ostringstream os;
  auto write_terms = [&](const std::vector<LinearTerm>& terms) {
    bool first = true;
    for (const LinearTerm& t : terms) {
      if (t.coeff.is_zero()) continue;
      if (!first) os << " + ";
      os << t.coeff.str() << " " << lp.var_names[t.var];
      first = false;
    }
    if (first) os << "0";
  };
  os << (lp.maximize ? "maximize" : "minimize") << "\nobj: ";
  std::vector<LinearTerm> obj;
  for (int i = 0; i < lp.num_vars(); ++i) obj.push_back({i, lp.objective[i]});
  write_terms(obj);
  os << "\n";
  for (size_t r = 0; r < lp.rows.size(); ++r) {
    const LPRow& row = lp.rows[r];
    os << (row.name.empty() ? "r" + std::to_string(r) : row.name) << ": ";
    write_terms(row.terms);
    os << (row.rel == Relation::LessEq ? " <= " : row.rel == Relation::Equal ? " = " : " >= ");
    os << row.rhs.str() << "\n";
  }
  for (int i = 0; i < lp.num_vars(); ++i) {
    os << lp.var_names[i] << ":";
    if (lp.lower[i]) os << " >= " << lp.lower[i]->str();
    if (lp.upper[i]) os << " <= " << lp.upper[i]->str();
    if (!lp.lower[i] && !lp.upper[i]) os << " free";
    os << "\n";
  }
  return os.str();
}

namespace {

// standard form: maximize c p subject to M p <= b, p >= 0
struct StdForm {
  int n = 0;  // structural variables
  std::vector<std::vector<mpq_class>> M;
  std::vector<mpq_class> b;
  std::vector<mpq_class> c;

  // per original variable: how to recover x from p
  struct VarMap {
    enum Kind { LowerShift, UpperShift, Split } kind;
    int p1 = -1, p2 = -1;
    mpq_class base;  // l for LowerShift, u for UpperShift
  };
  std::vector<VarMap> vmap;

  // per standard row: where it came from
  struct RowSrc {
    enum Kind { OrigRow, UpperResidual } kind;
    int index;  // row index or variable index
    int sign;   // +1: as written (after <= orientation), -1: negated original
  };
  std::vector<RowSrc> rsrc;
};

StdForm translate(const LinearProgram& lp) {
  StdForm sf;
  int V = lp.num_vars();
  sf.vmap.resize(V);
  for (int i = 0; i < V; ++i) {
    auto& vm = sf.vmap[i];
    if (lp.lower[i]) {
      vm.kind = StdForm::VarMap::LowerShift;
      vm.base = lp.lower[i]->raw();
      vm.p1 = sf.n++;
    } else if (lp.upper[i]) {
      vm.kind = StdForm::VarMap::UpperShift;
      vm.base = lp.upper[i]->raw();
      vm.p1 = sf.n++;
    } else {
      vm.kind = StdForm::VarMap::Split;
      vm.p1 = sf.n++;
      vm.p2 = sf.n++;
    }
  }
  sf.c.assign(sf.n, 0);
  for (int i = 0; i < V; ++i) {
    mpq_class ci = lp.objective[i].raw();
    if (!lp.maximize) ci = -ci;
    const auto& vm = sf.vmap[i];
    if (vm.kind == StdForm::VarMap::UpperShift) {
      sf.c[vm.p1] -= ci;
    } else {
      sf.c[vm.p1] += ci;
      if (vm.kind == StdForm::VarMap::Split) sf.c[vm.p2] -= ci;
    }
  }
  auto push_row = [&](const LPRow& row, int sign, StdForm::RowSrc src) {
    std::vector<mpq_class> coeffs(sf.n, 0);
    mpq_class rhs = row.rhs.raw() * sign;
    for (const LinearTerm& t : row.terms) {
      mpq_class a = t.coeff.raw() * sign;
      const auto& vm = sf.vmap[t.var];
      switch (vm.kind) {
        case StdForm::VarMap::LowerShift:
          coeffs[vm.p1] += a;
          rhs -= a * vm.base;
          break;
        case StdForm::VarMap::UpperShift:
          coeffs[vm.p1] -= a;
          rhs -= a * vm.base;
          break;
        case StdForm::VarMap::Split:
          coeffs[vm.p1] += a;
          coeffs[vm.p2] -= a;
          break;
      }
    }
    sf.M.push_back(std::move(coeffs));
    sf.b.push_back(std::move(rhs));
    sf.rsrc.push_back(src);
  };
  for (int r = 0; r < (int)lp.rows.size(); ++r) {
    const LPRow& row = lp.rows[r];
    if (row.rel != Relation::GreaterEq)
      push_row(row, 1, {StdForm::RowSrc::OrigRow, r, 1});
    if (row.rel != Relation::LessEq)
      push_row(row, -1, {StdForm::RowSrc::OrigRow, r, -1});
  }
  for (int i = 0; i < V; ++i) {
    if (lp.lower[i] && lp.upper[i]) {
      // residual row p <= u - l for the doubly bounded variable
      LPRow row;
      row.terms = {{i, Rational(1)}};
      row.rhs = *lp.upper[i];
      push_row(row, 1, {StdForm::RowSrc::UpperResidual, i, 1});
    }
  }
  return sf;
}

// Dictionary simplex with Bland's rule. Row convention:
//   expr(row i) = D[i][bcol] - sum_j D[i][j] * x_{N[j]}
// where rows 0..m-1 define the basic variables, row m the objective z,
// row m+1 the phase-1 objective w = -x0.
class Dictionary {
 public:
  explicit Dictionary(const StdForm& sf)
      : n_(sf.n), m_((int)sf.M.size()), x0_(sf.n + (int)sf.M.size()) {
    N_.resize(n_ + 1);
    B_.resize(m_);
    D_.assign(m_ + 2, std::vector<mpq_class>(n_ + 2, 0));
    for (int j = 0; j < n_; ++j) N_[j] = j;
    N_[n_] = x0_;
    for (int i = 0; i < m_; ++i) {
      B_[i] = n_ + i;
      for (int j = 0; j < n_; ++j) D_[i][j] = sf.M[i][j];
      D_[i][n_] = -1;  // +x0 on every row
      D_[i][bcol()] = sf.b[i];
    }
    for (int j = 0; j < n_; ++j) D_[m_][j] = -sf.c[j];
    D_[m_ + 1][n_] = 1;  // w = -x0
  }

  int bcol() const { return n_ + 1; }

  // LPStatus::Optimal here means "phase ran to completion"
  LPStatus run(int obj_row, bool allow_x0, long& pivots) {
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (!allow_x0 && N_[j] == x0_) continue;
        if (D_[obj_row][j] < 0 && (s < 0 || N_[j] < N_[s])) s = j;
      }
      if (s < 0) return LPStatus::Optimal;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (D_[i][s] <= 0) continue;
        if (r < 0) {
          r = i;
          continue;
        }
        int c = cmp(D_[i][bcol()] * D_[r][s], D_[r][bcol()] * D_[i][s]);
        if (c < 0 || (c == 0 && B_[i] < B_[r])) r = i;
      }
      if (r < 0) {
        ray_col_ = s;
        return LPStatus::Unbounded;
      }
      pivot(r, s);
      ++pivots;
    }
  }

  void pivot(int r, int s) {
    mpq_class inv = 1 / D_[r][s];
    for (int j = 0; j <= bcol(); ++j)
      if (j != s) D_[r][j] *= inv;
    D_[r][s] = inv;
    for (int i = 0; i <= m_ + 1; ++i) {
      if (i == r) continue;
      mpq_class t = D_[i][s];
      if (sgn(t) == 0) continue;
      for (int j = 0; j <= bcol(); ++j)
        if (j != s) D_[i][j] -= t * D_[r][j];
      D_[i][s] = -t * inv;
    }
    std::swap(B_[r], N_[s]);
  }

  bool needs_phase1() const {
    for (int i = 0; i < m_; ++i)
      if (D_[i][bcol()] < 0) return true;
    return false;
  }

  void enter_x0(long& pivots) {
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (D_[i][bcol()] < D_[r][bcol()] ||
          (D_[i][bcol()] == D_[r][bcol()] && B_[i] < B_[r]))
        r = i;
    pivot(r, n_);  // x0 sits at column n_ initially
    ++pivots;
  }

  // drive a basic-at-zero x0 out of the basis; returns false if its row
  // became vacuous (then the row is retired)
  void expel_x0(long& pivots) {
    for (int i = 0; i < m_; ++i) {
      if (B_[i] != x0_) continue;
      int s = -1;
      for (int j = 0; j <= n_; ++j)
        if (sgn(D_[i][j]) != 0 && (s < 0 || N_[j] < N_[s])) s = j;
      if (s >= 0) {
        pivot(i, s);
        ++pivots;
      } else {
        B_[i] = x0_ + 1 + i;  // vacuous row: retire under a fresh id
      }
      return;
    }
  }

  std::vector<mpq_class> point() const {
    std::vector<mpq_class> p(n_, 0);
    for (int i = 0; i < m_; ++i)
      if (B_[i] < n_) p[B_[i]] = D_[i][bcol()];
    return p;
  }

  std::vector<mpq_class> ray() const {
    std::vector<mpq_class> d(n_, 0);
    int s = ray_col_;
    if (N_[s] < n_) d[N_[s]] = 1;
    for (int i = 0; i < m_; ++i)
      if (B_[i] < n_) d[B_[i]] = -D_[i][s];
    return d;
  }

  // reduced cost of standard variable id in the given objective row
  mpq_class reduced_cost(int obj_row, int id) const {
    for (int j = 0; j <= n_; ++j)
      if (N_[j] == id) return D_[obj_row][j];
    return 0;
  }

  const mpq_class& objective_constant(int obj_row) const { return D_[obj_row][bcol()]; }
  int slack_id(int row) const { return n_ + row; }
  int rows() const { return m_; }
  int obj_row() const { return m_; }
  int w_row() const { return m_ + 1; }

 private:
  int n_, m_, x0_;
  int ray_col_ = -1;
  std::vector<int> N_, B_;
  std::vector<std::vector<mpq_class>> D_;
};

std::vector<Rational> recover_point(const StdForm& sf, const std::vector<mpq_class>& p) {
  std::vector<Rational> x;
  x.reserve(sf.vmap.size());
  for (const auto& vm : sf.vmap) {
    mpq_class v;
    switch (vm.kind) {
      case StdForm::VarMap::LowerShift: v = vm.base + p[vm.p1]; break;
      case StdForm::VarMap::UpperShift: v = vm.base - p[vm.p1]; break;
      case StdForm::VarMap::Split: v = p[vm.p1] - p[vm.p2]; break;
    }
    x.push_back(Rational(std::move(v)));
  }
  return x;
}

std::vector<Rational> recover_ray(const StdForm& sf, const std::vector<mpq_class>& d) {
  std::vector<Rational> x;
  x.reserve(sf.vmap.size());
  for (const auto& vm : sf.vmap) {
    mpq_class v;
    switch (vm.kind) {
      case StdForm::VarMap::LowerShift: v = d[vm.p1]; break;
      case StdForm::VarMap::UpperShift: v = -d[vm.p1]; break;
      case StdForm::VarMap::Split: v = d[vm.p1] - d[vm.p2]; break;
    }
    x.push_back(Rational(std::move(v)));
  }
  return x;
}

}  // namespace

LPResult simplex_solve(const LinearProgram& lp) {
  StdForm sf = translate(lp);
  Dictionary dict(sf);
  LPResult res;

  if (dict.needs_phase1()) {
    dict.enter_x0(res.pivots);
    LPStatus st = dict.run(dict.w_row(), true, res.pivots);
    if (st != LPStatus::Optimal) throw std::logic_error("phase 1 cannot be unbounded");
    if (sgn(dict.objective_constant(dict.w_row())) < 0) {
      res.status = LPStatus::Infeasible;
      int R = (int)lp.rows.size(), V = lp.num_vars();
      res.row_mult.assign(R + 2 * V, Rational(0));
      for (int i = 0; i < dict.rows(); ++i) {
        mpq_class y = dict.reduced_cost(dict.w_row(), dict.slack_id(i));
        if (sgn(y) == 0) continue;
        const auto& src = sf.rsrc[i];
        if (src.kind == StdForm::RowSrc::OrigRow)
          res.row_mult[src.index] += Rational(mpq_class(y * src.sign));
        else
          res.row_mult[R + V + src.index] += Rational(y);
      }
      for (int i = 0; i < V; ++i) {
        const auto& vm = sf.vmap[i];
        if (vm.kind == StdForm::VarMap::LowerShift)
          res.row_mult[R + i] = Rational(dict.reduced_cost(dict.w_row(), vm.p1));
        else if (vm.kind == StdForm::VarMap::UpperShift)
          res.row_mult[R + V + i] += Rational(dict.reduced_cost(dict.w_row(), vm.p1));
      }
      if (!certifies_infeasible(lp, res.row_mult))
        throw std::logic_error("infeasibility certificate failed self-check");
      return res;
    }
    dict.expel_x0(res.pivots);
  }

  LPStatus st = dict.run(dict.obj_row(), false, res.pivots);
  if (st == LPStatus::Unbounded) {
    res.status = LPStatus::Unbounded;
    res.x = recover_point(sf, dict.point());
    res.ray = recover_ray(sf, dict.ray());
    if (!certifies_unbounded(lp, res.x, res.ray))
      throw std::logic_error("unboundedness certificate failed self-check");
    return res;
  }
  res.status = LPStatus::Optimal;
  res.x = recover_point(sf, dict.point());
  if (!satisfies(lp, res.x))
    throw std::logic_error("optimal point failed feasibility self-check");
  res.value = objective_value(lp, res.x);
  return res;
}

}  // namespace grd
