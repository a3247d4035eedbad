#include "mpctrf/lp.hpp"

#include <algorithm>

#include "mpctrf/errors.hpp"

namespace mpctrf {

namespace {

// Dense exact-rational tableau. Columns: structurals, then one slack or
// surplus per inequality row, then one artificial per GE/EQ row. The basis
// inverse is carried implicitly by keeping the rows in B^{-1}A form.
struct Tableau {
  int m = 0;
  int n_struct = 0;
  std::vector<std::vector<Rat>> a;  // m rows, n_total columns
  std::vector<Rat> b;               // >= 0 throughout
  std::vector<int> basis;           // basic column per row
  std::vector<char> artificial;     // per column
  std::vector<int> dual_col;        // per row: its slack/surplus/artificial
  std::vector<int> dual_sign;       // per row: y_i = dual_sign * rc(dual_col)

  int n_total() const { return static_cast<int>(a.empty() ? 0 : a[0].size()); }

  void pivot(int row, int col) {
    Rat p = a[row][col];
    for (Rat& v : a[row]) v /= p;
    b[row] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat factor = a[i][col];
      for (int j = 0; j < n_total(); ++j) a[i][j] -= factor * a[row][j];
      b[i] -= factor * b[row];
    }
    basis[row] = col;
  }
};

std::vector<Rat> reduced_costs(const Tableau& t, const std::vector<Rat>& cost) {
  std::vector<Rat> rc(cost);
  for (int i = 0; i < t.m; ++i) {
    const Rat& cb = cost[t.basis[i]];
    if (cb == 0) continue;
    for (int j = 0; j < t.n_total(); ++j) {
      if (t.a[i][j] != 0) rc[j] -= cb * t.a[i][j];
    }
  }
  return rc;
}

// Bland's rule: smallest eligible entering column; smallest basic column
// index on ratio-test ties. Returns Optimal or Unbounded.
LPStatus run_simplex(Tableau& t, const std::vector<Rat>& cost,
                     const std::vector<char>& allowed) {
  for (;;) {
    std::vector<Rat> rc = reduced_costs(t, cost);
    int enter = -1;
    for (int j = 0; j < t.n_total(); ++j) {
      if (allowed[j] && rc[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return LPStatus::Optimal;

    int leave = -1;
    Rat best_ratio;
    for (int i = 0; i < t.m; ++i) {
      if (t.a[i][enter] <= 0) continue;
      Rat ratio = t.b[i] / t.a[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[i] < t.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return LPStatus::Unbounded;
    t.pivot(leave, enter);
  }
}

}  // namespace

LPSolution lp_solve_exact(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = static_cast<int>(lp.objective.size());
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(lp.rows[i].size()) != n) {
      fail(ErrorKind::Internal, "LP row length mismatch");
    }
  }
  if (static_cast<int>(lp.rhs.size()) != m ||
      static_cast<int>(lp.sense.size()) != m) {
    fail(ErrorKind::Internal, "LP shape mismatch");
  }

  // Normalize to nonnegative right-hand sides, remembering row flips.
  std::vector<int> flip(m, 1);
  std::vector<RowSense> sense = lp.sense;
  for (int i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0) {
      flip[i] = -1;
      if (sense[i] == RowSense::LE) {
        sense[i] = RowSense::GE;
      } else if (sense[i] == RowSense::GE) {
        sense[i] = RowSense::LE;
      }
    }
  }

  int n_slack = 0, n_art = 0;
  for (int i = 0; i < m; ++i) {
    if (sense[i] != RowSense::EQ) ++n_slack;
    if (sense[i] != RowSense::LE) ++n_art;
  }
  const int total = n + n_slack + n_art;

  Tableau t;
  t.m = m;
  t.n_struct = n;
  t.a.assign(m, std::vector<Rat>(total, Rat(0)));
  t.b.resize(m);
  t.basis.assign(m, -1);
  t.artificial.assign(total, 0);
  t.dual_col.resize(m);
  t.dual_sign.resize(m);

  int slack_at = n;
  int art_at = n + n_slack;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.a[i][j] = Rat(flip[i]) * lp.rows[i][j];
    t.b[i] = Rat(flip[i]) * lp.rhs[i];
    if (sense[i] == RowSense::LE) {
      t.a[i][slack_at] = 1;
      t.basis[i] = slack_at;
      t.dual_col[i] = slack_at;
      t.dual_sign[i] = -1;
      ++slack_at;
    } else if (sense[i] == RowSense::GE) {
      t.a[i][slack_at] = -1;
      t.dual_col[i] = slack_at;
      t.dual_sign[i] = 1;
      ++slack_at;
    } else {
      t.dual_col[i] = -1;
    }
    if (sense[i] != RowSense::LE) {
      t.a[i][art_at] = 1;
      t.basis[i] = art_at;
      t.artificial[art_at] = 1;
      if (sense[i] == RowSense::EQ) {
        t.dual_col[i] = art_at;
        t.dual_sign[i] = -1;
      }
      ++art_at;
    }
  }

  LPSolution out;

  // Phase 1: minimize the artificial total.
  if (n_art > 0) {
    std::vector<Rat> cost1(total, Rat(0));
    for (int j = 0; j < total; ++j) {
      if (t.artificial[j]) cost1[j] = 1;
    }
    std::vector<char> allowed(total, 1);
    LPStatus st = run_simplex(t, cost1, allowed);
    if (st != LPStatus::Optimal) {
      fail(ErrorKind::Internal, "phase 1 cannot be unbounded");
    }
    Rat art_total = 0;
    for (int i = 0; i < m; ++i) {
      if (t.artificial[t.basis[i]]) art_total += t.b[i];
    }
    if (art_total != 0) {
      out.status = LPStatus::Infeasible;
      return out;
    }
    // Degenerate artificials left in the basis: pivot them out where some
    // non-artificial column has a nonzero entry; otherwise the row is
    // redundant and the artificial stays basic at zero.
    for (int i = 0; i < m; ++i) {
      if (!t.artificial[t.basis[i]]) continue;
      for (int j = 0; j < total; ++j) {
        if (!t.artificial[j] && t.a[i][j] != 0) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2: original objective; artificials may not re-enter.
  std::vector<Rat> cost2(total, Rat(0));
  for (int j = 0; j < n; ++j) cost2[j] = lp.objective[j];
  std::vector<char> allowed(total, 1);
  for (int j = 0; j < total; ++j) {
    if (t.artificial[j]) allowed[j] = 0;
  }
  LPStatus st = run_simplex(t, cost2, allowed);
  if (st == LPStatus::Unbounded) {
    out.status = LPStatus::Unbounded;
    return out;
  }

  out.status = LPStatus::Optimal;
  out.x.assign(n, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) out.x[t.basis[i]] = t.b[i];
  }
  out.objective = 0;
  for (int j = 0; j < n; ++j) out.objective += lp.objective[j] * out.x[j];

  std::vector<Rat> rc = reduced_costs(t, cost2);
  out.dual.assign(m, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (t.dual_col[i] >= 0) {
      out.dual[i] = Rat(flip[i] * t.dual_sign[i]) * rc[t.dual_col[i]];
    }
  }

  // Verify the certificate before handing it out.
  auto check = [](bool ok, const char* what) {
    if (!ok) fail(ErrorKind::Internal, std::string("LP verification: ") + what);
  };
  for (int j = 0; j < n; ++j) check(out.x[j] >= 0, "x >= 0");
  Rat dual_obj = 0;
  for (int i = 0; i < m; ++i) {
    Rat act = 0;
    for (int j = 0; j < n; ++j) act += lp.rows[i][j] * out.x[j];
    switch (lp.sense[i]) {
      case RowSense::LE:
        check(act <= lp.rhs[i], "LE row feasible");
        check(out.dual[i] <= 0, "LE dual sign");
        break;
      case RowSense::GE:
        check(act >= lp.rhs[i], "GE row feasible");
        check(out.dual[i] >= 0, "GE dual sign");
        break;
      case RowSense::EQ:
        check(act == lp.rhs[i], "EQ row feasible");
        break;
    }
    check(out.dual[i] == 0 || act == lp.rhs[i], "complementary slackness (rows)");
    dual_obj += out.dual[i] * lp.rhs[i];
  }
  for (int j = 0; j < n; ++j) {
    Rat red = lp.objective[j];
    for (int i = 0; i < m; ++i) red -= out.dual[i] * lp.rows[i][j];
    check(red >= 0, "dual feasibility");
    check(out.x[j] == 0 || red == 0, "complementary slackness (columns)");
  }
  check(dual_obj == out.objective, "strong duality");

  return out;
}

}  // namespace mpctrf
