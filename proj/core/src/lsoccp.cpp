#include "socnewton/lsoccp.hpp"

#include <cmath>

#include "socnewton/spectral.hpp"

namespace socnewton {

namespace {

constexpr double kVCompareTol = 1e-12;

void check_problem(const LsoccpProblem& p) {
  if (p.M.rows() != p.M.cols()) throw InvalidInputError("LsoccpProblem: M must be square");
  if (p.q.size() != p.M.rows()) throw DimensionMismatchError("LsoccpProblem: q length mismatch");
  if (!p.q.allFinite()) throw InvalidInputError("LsoccpProblem: q must be finite");
}

// System matrix [(M_beta - Id) V + Id] without densifying V: with S = M_beta - Id,
//   S V = 1/2 [ (1+rho) S + (S e)(u - rho e)^T + (S u)(e - rho u)^T ]
// where e is the first basis vector and u = (0, w).
DenseMat assemble_system(const DenseMat& s, const BSubdiffElement& v) {
  const Eigen::Index n = s.rows();
  switch (v.kind()) {
    case BSubdiffElement::Kind::kZero:
      return DenseMat(DenseMat::Identity(n, n));
    case BSubdiffElement::Kind::kIdentity: {
      DenseMat a = s;
      a.diagonal().array() += 1.0;
      return a;
    }
    case BSubdiffElement::Kind::kStructured:
      break;
  }
  const Eigen::VectorXd& w = v.w();
  const double rho = v.rho();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e[0] = 1.0;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  u.tail(n - 1) = w;
  const Eigen::VectorXd se = s.col(0);
  const Eigen::VectorXd su = s * u;
  DenseMat a = 0.5 * (1.0 + rho) * s;
  a.noalias() += (0.5 * se) * (u - rho * e).transpose();
  a.noalias() += (0.5 * su) * (e - rho * u).transpose();
  a.diagonal().array() += 1.0;
  return a;
}

// (M_beta - Id) P_K(y) + y + beta q, applied matrix-free through M.
std::pair<Eigen::VectorXd, double> reform_residual(const LsoccpProblem& p, double beta,
                                                   const Eigen::VectorXd& y) {
  Eigen::VectorXd pk = project(y);
  Eigen::VectorXd value = beta * p.M.apply(pk) - pk + y + beta * p.q;
  const double norm = value.norm();
  return {std::move(value), norm};
}

ComplementaritySolution recover(const LsoccpProblem& p, const Eigen::VectorXd& y) {
  ComplementaritySolution sol;
  sol.y_star = y;
  sol.x_star = project(y);
  sol.slack = p.M.apply(sol.x_star) + p.q;
  sol.primal_residual = (sol.x_star - project(sol.x_star)).norm();
  sol.dual_residual = (sol.slack - project(sol.slack)).norm();
  sol.gap = std::abs(sol.slack.dot(sol.x_star));
  return sol;
}

}  // namespace

const char* to_string(LsoccpClass cls) {
  switch (cls) {
    case LsoccpClass::kUniqueMI:
      return "Unique_MI";
    case LsoccpClass::kBetaRateGuarantee:
      return "BetaRateGuarantee";
    case LsoccpClass::kUniqueMinvI:
      return "Unique_MinvI";
    case LsoccpClass::kSpdWellDefined:
      return "SpdWellDefined";
    case LsoccpClass::kNoGuarantee:
      return "NoGuarantee";
  }
  return "Unknown";
}

BetaChoice BetaChoice::explicit_value(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidInputError("BetaChoice: explicit beta must be finite and > 0");
  }
  return {Mode::kExplicit, v};
}

double resolve_beta(const LsoccpProblem& p, const BetaChoice& beta) {
  switch (beta.mode) {
    case BetaChoice::Mode::kOne:
      return 1.0;
    case BetaChoice::Mode::kExplicit:
      if (!(beta.value > 0.0) || !std::isfinite(beta.value)) {
        throw InvalidInputError("resolve_beta: explicit beta must be finite and > 0");
      }
      return beta.value;
    case BetaChoice::Mode::kAuto:
      return beta_star(p).first;
  }
  throw InvalidInputError("resolve_beta: unknown mode");
}

std::pair<double, double> beta_star(const LsoccpProblem& p) {
  check_problem(p);
  if (!p.M.is_symmetric()) {
    throw InvalidInputError("beta_star: M must be symmetric positive definite");
  }
  const auto [lmin, lmax] = sym_eig_extremes(p.M);
  if (!(lmin > 0.0)) {
    throw InvalidInputError("beta_star: M must be positive definite");
  }
  return {2.0 / (lmin + lmax), (lmax - lmin) / (2.0 * lmin)};
}

std::pair<SolveReport, ComplementaritySolution> lsoccp_newton_solve(const LsoccpProblem& p,
                                                                    const BetaChoice& beta,
                                                                    const SolveOptions& opts) {
  check_problem(p);
  const Eigen::Index n = p.q.size();
  if (!(opts.tol >= 0.0) || !std::isfinite(opts.tol)) {
    throw InvalidInputError("SolveOptions: tol must be finite and >= 0");
  }
  if (opts.max_iter < 1) throw InvalidInputError("SolveOptions: max_iter must be >= 1");

  const double b = resolve_beta(p, beta);
  DenseMat s = b * p.M.to_dense();
  s.diagonal().array() -= 1.0;
  const Eigen::VectorXd rhs = -b * p.q;

  Eigen::VectorXd y;
  switch (opts.x0_strategy) {
    case StartStrategy::kSolveLinear:
      y = rhs;
      break;
    case StartStrategy::kZero:
      y = Eigen::VectorXd::Zero(n);
      break;
    case StartStrategy::kGiven:
      if (opts.x0.size() != n) throw DimensionMismatchError("SolveOptions: x0 length mismatch");
      y = opts.x0;
      break;
  }

  SolveReport report;
  auto record = [&](const Eigen::VectorXd& yk) {
    report.residual_history.push_back(reform_residual(p, b, yk).second);
    report.region_history.push_back(classify(SocVector(yk)));
    report.iterate_history.push_back(yk);
  };
  record(y);

  BSubdiffElement v_prev = bsubdiff_element(SocVector(y), opts.tie_break);
  for (int k = 1; k <= opts.max_iter; ++k) {
    Eigen::VectorXd y_next;
    try {
      y_next = factor(Matrix::dense(assemble_system(s, v_prev))).solve(rhs);
    } catch (const SingularMatrixError&) {
      report.status = SolveStatus::kLinearSolveFailure;
      report.failure_iteration = k;
      report.iterations = k - 1;
      report.final_x = std::move(y);
      ComplementaritySolution sol = recover(p, report.final_x);
      return {std::move(report), std::move(sol)};
    }
    record(y_next);
    const double r = report.residual_history.back();
    BSubdiffElement v_next = bsubdiff_element(SocVector(y_next), opts.tie_break);
    const bool v_fixed = v_next.same_element(v_prev, kVCompareTol);
    if (r <= opts.tol) {
      report.status = SolveStatus::kSolutionFound;
      report.stopped_by_v_fixpoint = v_fixed;
      report.iterations = k;
      report.final_x = std::move(y_next);
      ComplementaritySolution sol = recover(p, report.final_x);
      return {std::move(report), std::move(sol)};
    }
    v_prev = std::move(v_next);
    y = std::move(y_next);
  }

  report.status = SolveStatus::kMaxIterations;
  report.iterations = opts.max_iter;
  report.final_x = std::move(y);
  ComplementaritySolution sol = recover(p, report.final_x);
  return {std::move(report), std::move(sol)};
}

LsoccpCertificate lsoccp_certificate(const LsoccpProblem& p, const BetaChoice& beta) {
  check_problem(p);
  LsoccpCertificate cert;
  cert.eig_estimated = p.M.is_sparse();
  cert.beta_used = resolve_beta(p, beta);

  const Eigen::Index n = p.M.rows();
  DenseMat m_dense = p.M.to_dense();
  {
    DenseMat mi = m_dense;
    mi.diagonal().array() -= 1.0;
    cert.norm_M_minus_I = op_norm_2(Matrix::dense(std::move(mi)));
  }

  const double norm_m = op_norm_2(p.M);
  const double sm = sigma_min(p.M);
  if (sm > 0.0) {
    const double norm_minv = 1.0 / sm;
    cert.cond_product = norm_m * norm_minv;
    cert.beta_range = std::make_pair(0.5 * norm_minv, 1.5 / norm_m);
    // ||M^-1 - Id|| from the explicit dense inverse.
    const Factorization f = factor(Matrix::dense(m_dense));
    DenseMat inv(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      inv.col(j) = f.solve(Eigen::VectorXd::Unit(n, j));
    }
    inv.diagonal().array() -= 1.0;
    cert.norm_Minv_minus_I = op_norm_2(Matrix::dense(std::move(inv)));
  }

  bool spd = false;
  if (p.M.is_symmetric()) {
    spd = sym_eig_extremes(p.M).first > 0.0;
  }

  const bool beta_rate_ok = cert.cond_product.has_value() && *cert.cond_product < 3.0 &&
                            cert.beta_used > cert.beta_range->first &&
                            cert.beta_used < cert.beta_range->second;

  if (cert.norm_M_minus_I < 1.0) {
    cert.cls = LsoccpClass::kUniqueMI;
    cert.rate_bound = cert.norm_M_minus_I / (1.0 - cert.norm_M_minus_I);
  } else if (beta_rate_ok) {
    cert.cls = LsoccpClass::kBetaRateGuarantee;
    DenseMat mb = cert.beta_used * m_dense;
    mb.diagonal().array() -= 1.0;
    const double norm_mb_i = op_norm_2(Matrix::dense(std::move(mb)));
    if (norm_mb_i < 1.0) cert.rate_bound = norm_mb_i / (1.0 - norm_mb_i);
  } else if (cert.norm_Minv_minus_I.has_value() && *cert.norm_Minv_minus_I < 1.0) {
    cert.cls = LsoccpClass::kUniqueMinvI;
  } else if (spd) {
    cert.cls = LsoccpClass::kSpdWellDefined;
  } else {
    cert.cls = LsoccpClass::kNoGuarantee;
  }
  return cert;
}

ComplementarityCheck verify_complementarity(const LsoccpProblem& p, const Eigen::VectorXd& x,
                                            double tol) {
  check_problem(p);
  if (x.size() != p.q.size()) {
    throw DimensionMismatchError("verify_complementarity: x length mismatch");
  }
  if (!(tol >= 0.0)) throw InvalidInputError("verify_complementarity: tol must be >= 0");
  ComplementarityCheck check;
  const Eigen::VectorXd slack = p.M.apply(x) + p.q;
  check.primal_residual = (x - project(x)).norm();
  check.dual_residual = (slack - project(slack)).norm();
  check.gap = std::abs(slack.dot(x));
  check.ok = check.primal_residual <= tol && check.dual_residual <= tol &&
             check.gap <= tol * (1.0 + x.norm()) * (1.0 + slack.norm());
  return check;
}

}  // namespace socnewton
