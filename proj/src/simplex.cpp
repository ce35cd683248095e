#include "bfclab/simplex.hpp"

#include <stdexcept>

#include "bfclab/errors.hpp"

namespace bfclab {

LPConstraint& LPProblem::add_row(Rel rel, const Rat& b) {
  rows.push_back(LPConstraint{std::vector<Rat>(num_vars, Rat(0)), rel, b});
  return rows.back();
}

namespace {

struct VarMap {
  int col = -1;      // canonical column of the variable
  int neg_col = -1;  // second column when the variable is free (x = x+ - x-)
  Rat shift;         // lower bound added back on extraction
};

// min c.x over canonical variables x >= 0
struct Canonical {
  int nvars = 0;
  std::vector<Rat> c;
  std::vector<LPConstraint> rows;
  std::vector<VarMap> vmap;
};

Canonical canonicalize(const LPProblem& p) {
  if (p.num_vars <= 0) throw input_error("LP needs at least one variable");
  if (int(p.c.size()) != p.num_vars) throw input_error("LP objective length mismatch");
  for (const LPConstraint& row : p.rows)
    if (int(row.a.size()) != p.num_vars) throw input_error("LP row length mismatch");
  if (!p.lower.empty() && int(p.lower.size()) != p.num_vars)
    throw input_error("LP lower bound length mismatch");
  if (!p.upper.empty() && int(p.upper.size()) != p.num_vars)
    throw input_error("LP upper bound length mismatch");

  Canonical cf;
  cf.vmap.resize(p.num_vars);
  for (int j = 0; j < p.num_vars; ++j) {
    std::optional<Rat> lo = p.lower.empty() ? std::optional<Rat>(Rat(0)) : p.lower[j];
    VarMap& vm = cf.vmap[j];
    vm.col = cf.nvars++;
    if (lo.has_value()) {
      vm.shift = *lo;
    } else {
      vm.neg_col = cf.nvars++;
    }
  }
  cf.c.assign(cf.nvars, Rat(0));
  Rat sign = p.maximize ? Rat(-1) : Rat(1);
  for (int j = 0; j < p.num_vars; ++j) {
    const VarMap& vm = cf.vmap[j];
    cf.c[vm.col] += sign * p.c[j];
    if (vm.neg_col >= 0) cf.c[vm.neg_col] -= sign * p.c[j];
  }

  for (const LPConstraint& row : p.rows) {
    LPConstraint out;
    out.a.assign(cf.nvars, Rat(0));
    out.rel = row.rel;
    out.b = row.b;
    for (int j = 0; j < p.num_vars; ++j) {
      if (row.a[j] == 0) continue;
      const VarMap& vm = cf.vmap[j];
      out.a[vm.col] += row.a[j];
      if (vm.neg_col >= 0)
        out.a[vm.neg_col] -= row.a[j];
      else
        out.b -= row.a[j] * vm.shift;
    }
    cf.rows.push_back(std::move(out));
  }

  for (int j = 0; j < p.num_vars; ++j) {
    if (p.upper.empty() || !p.upper[j].has_value()) continue;
    const VarMap& vm = cf.vmap[j];
    LPConstraint out;
    out.a.assign(cf.nvars, Rat(0));
    out.rel = Rel::LE;
    out.a[vm.col] = 1;
    if (vm.neg_col >= 0)
      out.a[vm.neg_col] = -1;
    out.b = *p.upper[j] - vm.shift;
    cf.rows.push_back(std::move(out));
  }
  return cf;
}

struct Tableau {
  int ncols = 0;
  std::vector<std::vector<Rat>> t;  // each row has width ncols + 1, rhs last
  std::vector<int> basis;
  std::vector<char> is_artificial;
  std::vector<Rat> red;  // reduced costs, red[ncols] = -objective
  bool phase_two = false;

  int rows() const { return int(t.size()); }

  void pivot(int pr, int pc) {
    Rat inv = Rat(1) / t[pr][pc];
    for (Rat& v : t[pr]) v *= inv;
    for (int r = 0; r < rows(); ++r) {
      if (r == pr || t[r][pc] == 0) continue;
      Rat factor = t[r][pc];
      for (int j = 0; j <= ncols; ++j) t[r][j] -= factor * t[pr][j];
    }
    if (red[pc] != 0) {
      Rat factor = red[pc];
      for (int j = 0; j <= ncols; ++j) red[j] -= factor * t[pr][j];
    }
    basis[pr] = pc;
  }

  void load_costs(const std::vector<Rat>& cost) {
    red.assign(ncols + 1, Rat(0));
    for (int j = 0; j < ncols; ++j) red[j] = j < int(cost.size()) ? cost[j] : Rat(0);
    for (int r = 0; r < rows(); ++r) {
      int b = basis[r];
      Rat cb = b < int(cost.size()) ? cost[b] : Rat(0);
      if (cb == 0) continue;
      for (int j = 0; j <= ncols; ++j) red[j] -= cb * t[r][j];
    }
  }

  // Bland's rule: smallest eligible entering column, smallest basic variable
  // among the ratio ties. Returns false when optimal, throws on unbounded.
  bool step() {
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (phase_two && is_artificial[j]) continue;
      if (red[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    Rat best_ratio;
    for (int r = 0; r < rows(); ++r) {
      if (t[r][enter] <= 0) continue;
      Rat ratio = t[r][ncols] / t[r][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::range_error("unbounded");
    pivot(leave, enter);
    return true;
  }

  Rat objective() const { return -red[ncols]; }
};

LPResult farkas_path(const Canonical& cf);

LPResult solve_canonical(const Canonical& cf, bool want_farkas) {
  Tableau tab;
  int m = int(cf.rows.size());
  std::vector<int> art_cols;

  int slack_needed = 0, art_needed = 0;
  for (const LPConstraint& row : cf.rows) {
    Rel rel = row.rel;
    if (row.b < 0) rel = rel == Rel::LE ? Rel::GE : (rel == Rel::GE ? Rel::LE : Rel::EQ);
    if (rel == Rel::LE)
      ++slack_needed;
    else if (rel == Rel::GE)
      ++slack_needed, ++art_needed;
    else
      ++art_needed;
  }
  tab.ncols = cf.nvars + slack_needed + art_needed;
  tab.is_artificial.assign(tab.ncols, 0);
  tab.basis.assign(m, -1);
  tab.t.assign(m, std::vector<Rat>(tab.ncols + 1, Rat(0)));

  int next_extra = cf.nvars;
  for (int r = 0; r < m; ++r) {
    const LPConstraint& row = cf.rows[r];
    Rat s = row.b < 0 ? Rat(-1) : Rat(1);
    for (int j = 0; j < cf.nvars; ++j) tab.t[r][j] = s * row.a[j];
    tab.t[r][tab.ncols] = s * row.b;
    Rel rel = row.rel;
    if (s < 0) rel = rel == Rel::LE ? Rel::GE : (rel == Rel::GE ? Rel::LE : Rel::EQ);
    if (rel == Rel::LE) {
      tab.t[r][next_extra] = 1;
      tab.basis[r] = next_extra++;
    } else {
      if (rel == Rel::GE) tab.t[r][next_extra++] = -1;
      tab.t[r][next_extra] = 1;
      tab.is_artificial[next_extra] = 1;
      art_cols.push_back(next_extra);
      tab.basis[r] = next_extra++;
    }
  }

  long long guard = 0;
  auto run = [&tab, &guard]() {
    while (tab.step())
      if (++guard > 1000000) throw std::logic_error("simplex pivot guard tripped");
  };

  if (!art_cols.empty()) {
    std::vector<Rat> phase1(tab.ncols, Rat(0));
    for (int j : art_cols) phase1[j] = 1;
    tab.load_costs(phase1);
    run();
    if (tab.objective() != 0) {
      if (!want_farkas) throw std::logic_error("auxiliary LP reported infeasible");
      return farkas_path(cf);
    }
    for (int r = 0; r < tab.rows(); ++r) {
      if (!tab.is_artificial[tab.basis[r]]) continue;
      int pc = -1;
      for (int j = 0; j < tab.ncols; ++j)
        if (tab.t[r][j] != 0 && !tab.is_artificial[j]) {
          pc = j;
          break;
        }
      if (pc >= 0) {
        tab.pivot(r, pc);
      } else {
        tab.t.erase(tab.t.begin() + r);
        tab.basis.erase(tab.basis.begin() + r);
        --r;
      }
    }
  }

  tab.phase_two = true;
  tab.load_costs(cf.c);
  try {
    run();
  } catch (const std::range_error&) {
    LPResult res;
    res.status = LPStatus::UNBOUNDED;
    return res;
  }

  LPResult res;
  res.status = LPStatus::OPTIMAL;
  res.x.assign(cf.nvars, Rat(0));
  for (int r = 0; r < tab.rows(); ++r)
    if (tab.basis[r] < cf.nvars) res.x[tab.basis[r]] = tab.t[r][tab.ncols];
  return res;
}

// canonical rows as A x >= b for the infeasibility certificate
void inequality_form(const Canonical& cf, std::vector<std::vector<Rat>>& a,
                     std::vector<Rat>& b) {
  for (const LPConstraint& row : cf.rows) {
    if (row.rel == Rel::GE || row.rel == Rel::EQ) {
      a.push_back(row.a);
      b.push_back(row.b);
    }
    if (row.rel == Rel::LE || row.rel == Rel::EQ) {
      std::vector<Rat> neg(row.a.size());
      for (size_t j = 0; j < row.a.size(); ++j) neg[j] = -row.a[j];
      a.push_back(std::move(neg));
      b.push_back(-row.b);
    }
  }
}

LPResult farkas_path(const Canonical& cf) {
  LPResult res;
  res.status = LPStatus::INFEASIBLE;
  inequality_form(cf, res.canon_a, res.canon_b);
  int k = int(res.canon_a.size());

  // max y.b over y >= 0 with y.A <= 0 columnwise, capped by y.b <= 1; a
  // positive optimum is exactly an infeasibility certificate
  LPProblem aux;
  aux.num_vars = k;
  aux.maximize = true;
  aux.c = res.canon_b;
  for (int j = 0; j < cf.nvars; ++j) {
    LPConstraint& row = aux.add_row(Rel::LE, Rat(0));
    for (int i = 0; i < k; ++i) row.a[i] = res.canon_a[i][j];
  }
  LPConstraint& cap_row = aux.add_row(Rel::LE, Rat(1));
  cap_row.a = res.canon_b;

  Canonical aux_cf = canonicalize(aux);
  LPResult aux_res = solve_canonical(aux_cf, false);
  if (aux_res.status != LPStatus::OPTIMAL)
    throw std::logic_error("certificate LP did not solve");
  res.farkas_y.assign(k, Rat(0));
  for (int i = 0; i < k; ++i) res.farkas_y[i] = aux_res.x[aux_cf.vmap[i].col];
  if (!farkas_certificate_valid(res))
    throw std::logic_error("infeasibility certificate failed verification");
  return res;
}

}  // namespace

LPResult solve_lp(const LPProblem& p) {
  Canonical cf = canonicalize(p);
  LPResult res = solve_canonical(cf, true);
  if (res.status != LPStatus::OPTIMAL) return res;

  std::vector<Rat> canon_x = std::move(res.x);
  res.x.assign(p.num_vars, Rat(0));
  for (int j = 0; j < p.num_vars; ++j) {
    const VarMap& vm = cf.vmap[j];
    res.x[j] = canon_x[vm.col] + vm.shift;
    if (vm.neg_col >= 0) res.x[j] -= canon_x[vm.neg_col];
  }

  res.objective = 0;
  for (int j = 0; j < p.num_vars; ++j) res.objective += p.c[j] * res.x[j];

  for (const LPConstraint& row : p.rows) {
    Rat lhs = 0;
    for (int j = 0; j < p.num_vars; ++j) lhs += row.a[j] * res.x[j];
    bool ok = row.rel == Rel::LE ? lhs <= row.b
              : row.rel == Rel::GE ? lhs >= row.b
                                   : lhs == row.b;
    if (!ok) throw std::logic_error("simplex solution violates a row");
  }
  for (int j = 0; j < p.num_vars; ++j) {
    if (!p.lower.empty() && p.lower[j].has_value() && res.x[j] < *p.lower[j])
      throw std::logic_error("simplex solution violates a lower bound");
    if (p.lower.empty() && res.x[j] < 0)
      throw std::logic_error("simplex solution violates a lower bound");
    if (!p.upper.empty() && p.upper[j].has_value() && res.x[j] > *p.upper[j])
      throw std::logic_error("simplex solution violates an upper bound");
  }
  return res;
}

bool farkas_certificate_valid(const LPResult& r) {
  if (r.status != LPStatus::INFEASIBLE) return false;
  size_t k = r.canon_a.size();
  if (k == 0 || r.farkas_y.size() != k || r.canon_b.size() != k) return false;
  size_t nv = r.canon_a[0].size();
  for (const Rat& y : r.farkas_y)
    if (y < 0) return false;
  for (size_t j = 0; j < nv; ++j) {
    Rat col = 0;
    for (size_t i = 0; i < k; ++i) col += r.farkas_y[i] * r.canon_a[i][j];
    if (col > 0) return false;
  }
  Rat val = 0;
  for (size_t i = 0; i < k; ++i) val += r.farkas_y[i] * r.canon_b[i];
  return val > 0;
}

}  // namespace bfclab
