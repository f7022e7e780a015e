#include "socnewton/factorization.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SparseLU>
#include <cmath>
#include <variant>

namespace socnewton {

namespace {

// Closed-form elimination for n <= 2. Cramer solves on 2x2 systems with
// dyadic-rational entries are exact, which partial-pivot LU is not.
struct TinySolve {
  Eigen::Matrix2d a;  // top-left block, unused entries zero
  double det;
  Eigen::Index n;
};

using SparseLuSolver = Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>;

}  // namespace

struct Factorization::Impl {
  Kind kind = Kind::kLuPartialPivot;
  Eigen::Index n = 0;
  double rcond = -1.0;
  std::variant<TinySolve, Eigen::PartialPivLU<DenseMat>, Eigen::LLT<DenseMat>,
               std::unique_ptr<SparseLuSolver>>
      solver;
};

Factorization::Kind Factorization::kind() const { return impl_->kind; }
Eigen::Index Factorization::dim() const { return impl_->n; }
double Factorization::rcond_hint() const { return impl_->rcond; }

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != impl_->n) {
    throw DimensionMismatchError("Factorization::solve: rhs length mismatch");
  }
  return std::visit(
      [&](const auto& s) -> Eigen::VectorXd {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, TinySolve>) {
          if (s.n == 1) {
            Eigen::VectorXd x(1);
            x[0] = rhs[0] / s.a(0, 0);
            return x;
          }
          Eigen::VectorXd x(2);
          x[0] = (s.a(1, 1) * rhs[0] - s.a(0, 1) * rhs[1]) / s.det;
          x[1] = (s.a(0, 0) * rhs[1] - s.a(1, 0) * rhs[0]) / s.det;
          return x;
        } else if constexpr (std::is_same_v<S, std::unique_ptr<SparseLuSolver>>) {
          return s->solve(rhs);
        } else {
          return s.solve(rhs);
        }
      },
      impl_->solver);
}

namespace {

double max_row_norm(const DenseMat& a) {
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

std::shared_ptr<Factorization::Impl> factor_tiny(const DenseMat& a) {
  auto impl = std::make_shared<Factorization::Impl>();
  impl->n = a.rows();
  impl->kind = Factorization::Kind::kLuPartialPivot;
  TinySolve t;
  t.n = a.rows();
  t.a.setZero();
  t.a.topLeftCorner(t.n, t.n) = a;
  if (t.n == 1) {
    if (a(0, 0) == 0.0) {
      throw SingularMatrixError("factor: singular 1x1 matrix", 0);
    }
    t.det = a(0, 0);
    impl->rcond = 1.0;
  } else {
    const double p0 = std::max(std::abs(a(0, 0)), std::abs(a(1, 0)));
    const double q0 = std::max(std::abs(a(0, 1)), std::abs(a(1, 1)));
    const double scale = std::max(max_row_norm(a), 0.0);
    if (p0 <= kSingularPivotEps * scale) {
      throw SingularMatrixError("factor: zero pivot column", 0);
    }
    t.det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (std::abs(t.det) <= kSingularPivotEps * p0 * q0) {
      throw SingularMatrixError("factor: singular 2x2 matrix", 1);
    }
    impl->rcond = std::abs(t.det) / std::max(p0 * q0, 1e-300);
  }
  impl->solver = t;
  return impl;
}

std::shared_ptr<Factorization::Impl> factor_dense(const DenseMat& a) {
  if (a.rows() <= 2) return factor_tiny(a);

  if ((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0) {
    Eigen::LLT<DenseMat> llt(a);
    if (llt.info() == Eigen::Success) {
      auto impl = std::make_shared<Factorization::Impl>();
      impl->n = a.rows();
      impl->kind = Factorization::Kind::kCholeskyLike;
      const auto d = llt.matrixLLT().diagonal();
      const double dmin = d.minCoeff();
      const double dmax = d.maxCoeff();
      impl->rcond = dmax > 0.0 ? (dmin / dmax) * (dmin / dmax) : 0.0;
      impl->solver = std::move(llt);
      return impl;
    }
  }

  Eigen::PartialPivLU<DenseMat> lu(a);
  const auto u_diag = lu.matrixLU().diagonal().cwiseAbs();
  const double scale = max_row_norm(a);
  for (Eigen::Index i = 0; i < u_diag.size(); ++i) {
    if (u_diag[i] <= kSingularPivotEps * scale) {
      throw SingularMatrixError("factor: zero pivot at elimination step", i);
    }
  }
  auto impl = std::make_shared<Factorization::Impl>();
  impl->n = a.rows();
  impl->kind = Factorization::Kind::kLuPartialPivot;
  impl->rcond = u_diag.minCoeff() / u_diag.maxCoeff();
  impl->solver = std::move(lu);
  return impl;
}

std::shared_ptr<Factorization::Impl> factor_sparse(const SparseMat& a) {
  Eigen::SparseMatrix<double> col_major(a);
  auto solver = std::make_unique<SparseLuSolver>();
  solver->compute(col_major);
  if (solver->info() != Eigen::Success) {
    // The sparse backend does not expose which pivot failed.
    throw SingularMatrixError("factor: sparse factorization failed (singular?)", -1);
  }
  auto impl = std::make_shared<Factorization::Impl>();
  impl->n = a.rows();
  impl->kind = Factorization::Kind::kLuPartialPivot;
  impl->rcond = -1.0;
  impl->solver = std::move(solver);
  return impl;
}

}  // namespace

Factorization factor(const Matrix& A) {
  if (A.rows() != A.cols()) {
    throw InvalidInputError("factor: matrix must be square");
  }
  if (A.is_dense()) {
    return Factorization(factor_dense(A.dense_data()));
  }
  return Factorization(factor_sparse(A.sparse_data()));
}

Eigen::VectorXd solve(const Factorization& f, const Eigen::VectorXd& rhs) {
  return f.solve(rhs);
}

}  // namespace socnewton
