#include "rlah/simplex.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

#include "rlah/errors.hpp"

namespace rlah {

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw InvalidParameter("dot: length mismatch");
  Rational sum;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RationalMatrix& m, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][static_cast<std::size_t>(c)].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    const Rational inv = Rational(1) / m[row][static_cast<std::size_t>(c)];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row) continue;
      const Rational f = m[i][static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      for (int j = c; j < cols; ++j)
        m[i][static_cast<std::size_t>(j)] -= f * m[row][static_cast<std::size_t>(j)];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank(RationalMatrix rows) {
  if (rows.empty()) return 0;
  const int cols = static_cast<int>(rows.front().size());
  return static_cast<int>(rref(rows, cols).size());
}

std::vector<RationalVector> null_space(const RationalMatrix& m, int cols) {
  RationalMatrix a = m;
  const auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<RationalVector> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RationalVector z(static_cast<std::size_t>(cols));
    z[static_cast<std::size_t>(f)] = Rational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      z[static_cast<std::size_t>(pivots[i])] = -a[i][static_cast<std::size_t>(f)];
    basis.push_back(std::move(z));
  }
  return basis;
}

namespace {

// Tableau rows 0..m-1 are constraints, row m holds reduced costs; the last
// column is the right-hand side (row m carries -objective there).
struct Tableau {
  RationalMatrix t;
  std::vector<int> basis;
  int cols = 0;  // structural columns, excluding rhs

  std::size_t rhs() const { return static_cast<std::size_t>(cols); }
  std::size_t rows() const { return basis.size(); }

  void pivot(std::size_t r, int c) {
    const auto cc = static_cast<std::size_t>(c);
    const Rational inv = Rational(1) / t[r][cc];
    for (auto& v : t[r]) v *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r) continue;
      const Rational f = t[i][cc];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j <= rhs(); ++j)
        if (!t[r][j].is_zero()) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  void set_costs(const RationalVector& c) {
    auto& z = t.back();
    for (std::size_t j = 0; j <= rhs(); ++j) z[j] = j < rhs() ? c[j] : Rational(0);
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = c[static_cast<std::size_t>(basis[i])];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= rhs(); ++j) z[j] -= cb * t[i][j];
    }
  }

  // Maximizes over the allowed columns; false when unbounded.
  bool run(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (allowed[static_cast<std::size_t>(j)] && t.back()[static_cast<std::size_t>(j)].sign() > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      const auto ce = static_cast<std::size_t>(enter);
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t[i][ce].sign() <= 0) continue;
        const Rational ratio = t[i][rhs()] / t[i][ce];
        if (leave == rows() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const auto nv = static_cast<std::size_t>(lp.num_vars);
  if (!lp.free_vars.empty() && lp.free_vars.size() != nv)
    throw InvalidParameter("free_vars length mismatch");
  if (!lp.objective.empty() && lp.objective.size() != nv)
    throw InvalidParameter("objective length mismatch");
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != nv) throw InvalidParameter("constraint length mismatch");

  // Column layout: x+ (one per variable), x- (free variables only),
  // one slack per inequality, one artificial per row.
  std::vector<int> neg_col(nv, -1);
  int cols = lp.num_vars;
  for (std::size_t v = 0; v < nv; ++v)
    if (!lp.free_vars.empty() && lp.free_vars[v]) neg_col[v] = cols++;
  const std::size_t m = lp.constraints.size();
  std::vector<int> slack_col(m, -1);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.constraints[i].relation != Relation::Equal) slack_col[i] = cols++;
  const int first_art = cols;
  cols += static_cast<int>(m);

  Tableau tab;
  tab.cols = cols;
  tab.t.assign(m + 1, RationalVector(static_cast<std::size_t>(cols) + 1));
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    auto& row = tab.t[i];
    for (std::size_t v = 0; v < nv; ++v) {
      row[v] = c.coeffs[v];
      if (neg_col[v] >= 0) row[static_cast<std::size_t>(neg_col[v])] = -c.coeffs[v];
    }
    if (slack_col[i] >= 0)
      row[static_cast<std::size_t>(slack_col[i])] = Rational(c.relation == Relation::LessEqual ? 1 : -1);
    row[tab.rhs()] = c.rhs;
    if (c.rhs.sign() < 0)
      for (auto& x : row) x = -x;
    const int art = first_art + static_cast<int>(i);
    row[static_cast<std::size_t>(art)] = Rational(1);
    tab.basis[i] = art;
  }

  std::vector<bool> allowed(static_cast<std::size_t>(cols), true);
  RationalVector cost(static_cast<std::size_t>(cols));
  for (int a = first_art; a < cols; ++a) cost[static_cast<std::size_t>(a)] = Rational(-1);
  tab.set_costs(cost);
  tab.run(allowed);  // bounded above by zero

  LpSolution out;
  if (tab.t.back()[tab.rhs()].sign() != 0) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis[i] < first_art) {
      ++i;
      continue;
    }
    int enter = -1;
    for (int j = 0; j < first_art; ++j)
      if (!tab.t[i][static_cast<std::size_t>(j)].is_zero()) {
        enter = j;
        break;
      }
    if (enter >= 0) {
      tab.pivot(i, enter);
      ++i;
    } else {
      tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  for (int a = first_art; a < cols; ++a) allowed[static_cast<std::size_t>(a)] = false;
  std::fill(cost.begin(), cost.end(), Rational(0));
  for (std::size_t v = 0; v < nv && !lp.objective.empty(); ++v) {
    cost[v] = lp.objective[v];
    if (neg_col[v] >= 0) cost[static_cast<std::size_t>(neg_col[v])] = -lp.objective[v];
  }
  tab.set_costs(cost);
  if (!tab.run(allowed)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  RationalVector col_value(static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < tab.rows(); ++i)
    col_value[static_cast<std::size_t>(tab.basis[i])] = tab.t[i][tab.rhs()];
  out.status = LpStatus::Optimal;
  out.x.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    out.x[v] = col_value[v];
    if (neg_col[v] >= 0) out.x[v] -= col_value[static_cast<std::size_t>(neg_col[v])];
  }
  out.objective = lp.objective.empty() ? Rational(0) : dot(lp.objective, out.x);
  return out;
}

bool satisfies(const LinearProgram& lp, const RationalVector& x) {
  if (x.size() != static_cast<std::size_t>(lp.num_vars)) return false;
  for (std::size_t v = 0; v < x.size(); ++v) {
    const bool is_free = !lp.free_vars.empty() && lp.free_vars[v];
    if (!is_free && x[v].sign() < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    const Rational lhs = dot(c.coeffs, x);
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace rlah
