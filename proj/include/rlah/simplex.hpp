#pragma once

/**
 * @file simplex.hpp
 * @brief Dense exact-rational linear algebra and a two-phase simplex.
 *
 * Sized for small instances (tens of variables and constraints). Pivoting
 * follows Bland's rule on both the entering and the leaving variable, so
 * the method terminates without anti-cycling tolerances. All arithmetic
 * is exact.
 */

#include <vector>

#include "rlah/rational.hpp"

namespace rlah {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;  // row-major

Rational dot(const RationalVector& a, const RationalVector& b);

// Rank by Gaussian elimination over Q.
int rank(RationalMatrix rows);

// Basis of {z : m z = 0}; one vector per kernel dimension.
std::vector<RationalVector> null_space(const RationalMatrix& m, int cols);

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  RationalVector coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

// maximize objective . x subject to the constraints. Variables flagged in
// `free_vars` are unrestricted, the rest are >= 0. An empty objective
// asks for feasibility only.
struct LinearProgram {
  int num_vars = 0;
  std::vector<bool> free_vars;
  std::vector<LinearConstraint> constraints;
  RationalVector objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  RationalVector x;
};

LpSolution solve(const LinearProgram& lp);

// Exact check that x satisfies every constraint and sign restriction.
bool satisfies(const LinearProgram& lp, const RationalVector& x);

}  // namespace rlah
