#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "socnewton/factorization.hpp"
#include "socnewton/matrix.hpp"
#include "socnewton/soc_cone.hpp"

// The piecewise-linear equation P_K(x) + Tx = b over the second-order cone,
// solved by an undamped semi-smooth Newton method: each step solves
//   [V(x_k) + T] x_{k+1} = b
// with V(x_k) an element of the B-subdifferential of P_K.

namespace socnewton {

struct PwlsProblem {
  Matrix T;
  Eigen::VectorXd b;
  std::optional<Eigen::VectorXd> planted_solution;
};

enum class StartStrategy {
  kSolveLinear,  // x0 solves Tx = b (the iterate produced from any point with V = 0)
  kZero,
  kGiven,
};

struct SolveOptions {
  double tol = 1e-6;
  int max_iter = 20;
  StartStrategy x0_strategy = StartStrategy::kSolveLinear;
  Eigen::VectorXd x0;  // used when x0_strategy = kGiven
  TieBreakPolicy tie_break = TieBreakPolicy::kSimplest;
};

enum class SolveStatus { kSolutionFound, kMaxIterations, kLinearSolveFailure };

const char* to_string(SolveStatus status);

// Full trace of one solve. The histories all have length iterations + 1 and
// start at x0; the stopping test is evaluated at iterates 1, 2, ..., never at
// x0 itself.
struct SolveReport {
  SolveStatus status = SolveStatus::kMaxIterations;
  int iterations = 0;
  Eigen::VectorXd final_x;
  std::vector<double> residual_history;
  std::vector<ConeRegion> region_history;
  std::vector<Eigen::VectorXd> iterate_history;
  bool stopped_by_v_fixpoint = false;
  // Iteration whose linear system failed (status kLinearSolveFailure), else -1.
  int failure_iteration = -1;
};

enum class GuaranteeClass {
  kUniqueSolution,  // ||T^-1|| < 1
  kQLinear,         // ||T^-1|| < 1/2, rate ||T^-1||/(1 - ||T^-1||)
  kSpdWellDefined,  // T symmetric positive definite
  kSpdQLinear,      // SPD and ||T^-1|| < 1, rate ||T^-1||
  kNoGuarantee,
};

const char* to_string(GuaranteeClass cls);

struct GuaranteeCertificate {
  double inv_norm = 0.0;  // ||T^-1|| = 1/sigma_min(T)
  bool spd = false;
  GuaranteeClass cls = GuaranteeClass::kNoGuarantee;
  std::optional<double> rate_bound;
  // True when inv_norm came from the sparse estimators rather than an exact
  // dense decomposition; estimate_rel_accuracy records their target accuracy.
  bool norm_estimated = false;
  double estimate_rel_accuracy = 0.0;
};

// P_K(x) + Tx - b and its Euclidean norm.
std::pair<Eigen::VectorXd, double> residual(const PwlsProblem& p, const Eigen::VectorXd& x);

SolveReport newton_solve(const PwlsProblem& p, const SolveOptions& opts = {});

GuaranteeCertificate certificate(const PwlsProblem& p);

// Reference fixed-point iteration x <- T^-1 (b - P_K(x)) from 0, valid when
// ||T^-1|| < 1 (refused otherwise). Stops when the step norm drops below tol.
Eigen::VectorXd fixed_point_oracle(const PwlsProblem& p, double tol = 1e-10,
                                   int max_iter = 10000);

}  // namespace socnewton
