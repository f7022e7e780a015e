#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>

#include "socnewton/matrix.hpp"
#include "socnewton/pwls.hpp"

// The linear second-order-cone complementarity problem
//   x in K,  Mx + q in K,  <Mx + q, x> = 0
// solved through the reformulated equation (M - Id) P_K(y) + y = -q, or its
// beta-scaled variant with M_beta = beta*M, q_beta = beta*q. A solution y*
// yields x* = P_K(y*).

namespace socnewton {

struct LsoccpProblem {
  Matrix M;
  Eigen::VectorXd q;
};

struct BetaChoice {
  enum class Mode { kOne, kAuto, kExplicit };
  Mode mode = Mode::kOne;
  double value = 1.0;  // used by kExplicit

  static BetaChoice one() { return {Mode::kOne, 1.0}; }
  static BetaChoice auto_spd() { return {Mode::kAuto, 0.0}; }
  static BetaChoice explicit_value(double v);
};

struct ComplementaritySolution {
  Eigen::VectorXd y_star;
  Eigen::VectorXd x_star;  // = P_K(y_star)
  Eigen::VectorXd slack;   // = M x_star + q
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
};

enum class LsoccpClass {
  kUniqueMI,           // ||M - Id|| < 1
  kBetaRateGuarantee,  // ||M|| ||M^-1|| < 3 and beta inside the rate window
  kUniqueMinvI,        // ||M^-1 - Id|| < 1
  kSpdWellDefined,     // M symmetric positive definite
  kNoGuarantee,
};

const char* to_string(LsoccpClass cls);

struct LsoccpCertificate {
  double norm_M_minus_I = 0.0;
  std::optional<double> norm_Minv_minus_I;  // absent when M is singular
  // (0.5*||M^-1||, 1.5/||M||); present when M is nonsingular.
  std::optional<std::pair<double, double>> beta_range;
  std::optional<double> cond_product;  // ||M|| * ||M^-1||
  LsoccpClass cls = LsoccpClass::kNoGuarantee;
  double beta_used = 1.0;
  std::optional<double> rate_bound;  // for kUniqueMI / kBetaRateGuarantee
  bool eig_estimated = false;        // sparse-path estimates involved
};

// Resolves the beta value: kOne -> 1, kExplicit -> value, kAuto -> beta_star.
double resolve_beta(const LsoccpProblem& p, const BetaChoice& beta);

// Semi-smooth Newton on the reformulated equation: each step solves
//   [(M_beta - Id) V(y_k) + Id] y_{k+1} = -beta*q.
// The default start (StartStrategy::kSolveLinear) is y0 = -beta*q, the
// iterate produced from any point with V = 0. On success the
// ComplementaritySolution carries the recovered x* and its residuals.
std::pair<SolveReport, ComplementaritySolution> lsoccp_newton_solve(
    const LsoccpProblem& p, const BetaChoice& beta, const SolveOptions& opts = {});

// (beta*, rate) = (2/(lambda_min + lambda_max),
//                  (lambda_max - lambda_min)/(2*lambda_min))
// for symmetric positive definite M.
std::pair<double, double> beta_star(const LsoccpProblem& p);

LsoccpCertificate lsoccp_certificate(const LsoccpProblem& p, const BetaChoice& beta);

struct ComplementarityCheck {
  bool ok = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
};

// Checks the triple condition: x in K and Mx + q in K within tol (distance
// via projection), and |<Mx + q, x>| <= tol*(1 + ||x||)*(1 + ||Mx + q||).
ComplementarityCheck verify_complementarity(const LsoccpProblem& p, const Eigen::VectorXd& x,
                                            double tol);

}  // namespace socnewton
