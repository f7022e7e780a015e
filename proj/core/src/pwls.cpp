#include "socnewton/pwls.hpp"

#include <cmath>
#include <limits>

#include "socnewton/spectral.hpp"

namespace socnewton {

namespace {

constexpr double kVCompareTol = 1e-12;

void check_problem(const PwlsProblem& p) {
  if (p.T.rows() != p.T.cols()) throw InvalidInputError("PwlsProblem: T must be square");
  if (p.b.size() != p.T.rows()) throw DimensionMismatchError("PwlsProblem: b length mismatch");
  if (!p.b.allFinite()) throw InvalidInputError("PwlsProblem: b must be finite");
}

void check_options(const SolveOptions& opts, Eigen::Index n) {
  if (!(opts.tol >= 0.0) || !std::isfinite(opts.tol)) {
    throw InvalidInputError("SolveOptions: tol must be finite and >= 0");
  }
  if (opts.max_iter < 1) throw InvalidInputError("SolveOptions: max_iter must be >= 1");
  if (opts.x0_strategy == StartStrategy::kGiven && opts.x0.size() != n) {
    throw DimensionMismatchError("SolveOptions: x0 length mismatch");
  }
}

// In-place A += V for a structured element. The tail diagonal uses the form
// 1 + rho*(1 - w_i^2), which is exact when w_i^2 = 1; the (1+rho) - rho*w_i^2
// ordering is off by an ulp in that case, enough to break bit-exact
// reproduction of small rational iterate sequences.
void add_structured(DenseMat& a, const BSubdiffElement& v) {
  const Eigen::VectorXd& w = v.w();
  const double rho = v.rho();
  const Eigen::Index m = w.size();
  a(0, 0) += 0.5;
  for (Eigen::Index j = 0; j < m; ++j) {
    a(0, 1 + j) += 0.5 * w[j];
    a(1 + j, 0) += 0.5 * w[j];
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const double wi = w[i];
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i == j) {
        a(1 + i, 1 + i) += 0.5 * (1.0 + rho * (1.0 - wi * wi));
      } else {
        a(1 + i, 1 + j) -= 0.5 * rho * wi * w[j];
      }
    }
  }
}

// [V + T] for the current subdifferential element. Sparse T stays sparse for
// the Zero and Identity elements; a structured V is dense, so the system is
// densified in that case.
Matrix assemble_system(const Matrix& T, const BSubdiffElement& v) {
  const Eigen::Index n = T.rows();
  if (T.is_sparse() && v.kind() != BSubdiffElement::Kind::kStructured) {
    if (v.kind() == BSubdiffElement::Kind::kZero) return T;
    SparseMat id(n, n);
    id.setIdentity();
    return Matrix::sparse(SparseMat(T.sparse_data() + id));
  }
  DenseMat a = T.to_dense();
  switch (v.kind()) {
    case BSubdiffElement::Kind::kZero:
      break;
    case BSubdiffElement::Kind::kIdentity:
      a.diagonal().array() += 1.0;
      break;
    case BSubdiffElement::Kind::kStructured:
      add_structured(a, v);
      break;
  }
  return Matrix::dense(std::move(a));
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolutionFound:
      return "SolutionFound";
    case SolveStatus::kMaxIterations:
      return "MaxIterations";
    case SolveStatus::kLinearSolveFailure:
      return "LinearSolveFailure";
  }
  return "Unknown";
}

const char* to_string(GuaranteeClass cls) {
  switch (cls) {
    case GuaranteeClass::kUniqueSolution:
      return "UniqueSolution";
    case GuaranteeClass::kQLinear:
      return "QLinear";
    case GuaranteeClass::kSpdWellDefined:
      return "SpdWellDefined";
    case GuaranteeClass::kSpdQLinear:
      return "SpdQLinear";
    case GuaranteeClass::kNoGuarantee:
      return "NoGuarantee";
  }
  return "Unknown";
}

std::pair<Eigen::VectorXd, double> residual(const PwlsProblem& p, const Eigen::VectorXd& x) {
  check_problem(p);
  if (x.size() != p.b.size()) throw DimensionMismatchError("residual: x length mismatch");
  Eigen::VectorXd value = project(x) + p.T.apply(x) - p.b;
  const double norm = value.norm();
  return {std::move(value), norm};
}

SolveReport newton_solve(const PwlsProblem& p, const SolveOptions& opts) {
  check_problem(p);
  const Eigen::Index n = p.b.size();
  check_options(opts, n);

  Eigen::VectorXd x;
  switch (opts.x0_strategy) {
    case StartStrategy::kSolveLinear:
      x = factor(p.T).solve(p.b);
      break;
    case StartStrategy::kZero:
      x = Eigen::VectorXd::Zero(n);
      break;
    case StartStrategy::kGiven:
      x = opts.x0;
      break;
  }

  SolveReport report;
  auto record = [&](const Eigen::VectorXd& xk) {
    report.residual_history.push_back(residual(p, xk).second);
    report.region_history.push_back(classify(SocVector(xk)));
    report.iterate_history.push_back(xk);
  };
  record(x);

  BSubdiffElement v_prev = bsubdiff_element(SocVector(x), opts.tie_break);
  for (int k = 1; k <= opts.max_iter; ++k) {
    Matrix system = assemble_system(p.T, v_prev);
    Eigen::VectorXd x_next;
    try {
      x_next = factor(system).solve(p.b);
    } catch (const SingularMatrixError&) {
      report.status = SolveStatus::kLinearSolveFailure;
      report.failure_iteration = k;
      report.iterations = k - 1;
      report.final_x = std::move(x);
      return report;
    }
    record(x_next);
    const double r = report.residual_history.back();
    BSubdiffElement v_next = bsubdiff_element(SocVector(x_next), opts.tie_break);
    // The V-fix-point rule says a repeated element makes x_next a solution;
    // its residual still has to pass the tolerance before we report success,
    // so the residual test is the single stopping gate either way.
    const bool v_fixed = v_next.same_element(v_prev, kVCompareTol);
    if (r <= opts.tol) {
      report.status = SolveStatus::kSolutionFound;
      report.stopped_by_v_fixpoint = v_fixed;
      report.iterations = k;
      report.final_x = std::move(x_next);
      return report;
    }
    v_prev = std::move(v_next);
    x = std::move(x_next);
  }

  report.status = SolveStatus::kMaxIterations;
  report.iterations = opts.max_iter;
  report.final_x = std::move(x);
  return report;
}

GuaranteeCertificate certificate(const PwlsProblem& p) {
  check_problem(p);
  GuaranteeCertificate cert;
  const double sm = sigma_min(p.T);
  cert.inv_norm = sm > 0.0 ? 1.0 / sm : std::numeric_limits<double>::infinity();
  cert.norm_estimated = p.T.is_sparse();
  cert.estimate_rel_accuracy = p.T.is_sparse() ? kSparseNormRelAccuracy : 0.0;
  if (p.T.is_symmetric()) {
    cert.spd = sym_eig_extremes(p.T).first > 0.0;
  }
  if (cert.spd && cert.inv_norm < 1.0) {
    cert.cls = GuaranteeClass::kSpdQLinear;
    cert.rate_bound = cert.inv_norm;
  } else if (cert.inv_norm < 0.5) {
    cert.cls = GuaranteeClass::kQLinear;
    cert.rate_bound = cert.inv_norm / (1.0 - cert.inv_norm);
  } else if (cert.inv_norm < 1.0) {
    cert.cls = GuaranteeClass::kUniqueSolution;
  } else if (cert.spd) {
    cert.cls = GuaranteeClass::kSpdWellDefined;
  } else {
    cert.cls = GuaranteeClass::kNoGuarantee;
  }
  return cert;
}

Eigen::VectorXd fixed_point_oracle(const PwlsProblem& p, double tol, int max_iter) {
  check_problem(p);
  if (!(tol > 0.0) || max_iter < 1) {
    throw InvalidInputError("fixed_point_oracle: need tol > 0 and max_iter >= 1");
  }
  const double sm = sigma_min(p.T);
  if (!(sm > 1.0)) {
    throw HypothesisNotMetError(
        "fixed_point_oracle: requires ||T^-1|| < 1, got sigma_min(T) = " +
        std::to_string(sm));
  }
  const Factorization f = factor(p.T);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(p.b.size());
  for (int k = 0; k < max_iter; ++k) {
    Eigen::VectorXd x_next = f.solve(p.b - project(x));
    if ((x_next - x).norm() <= tol) return x_next;
    x = std::move(x_next);
  }
  throw OracleFailureError("fixed_point_oracle: no convergence within iteration cap");
}

}  // namespace socnewton
