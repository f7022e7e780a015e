#pragma once

#include <Eigen/Dense>
#include <memory>

#include "socnewton/matrix.hpp"

namespace socnewton {

// A pivot is treated as exactly singular when |pivot| <= kSingularPivotEps
// times the largest absolute row sum of the input matrix.
inline constexpr double kSingularPivotEps = 1e-14;

// Reusable direct factorization of a square matrix. Immutable and cheap to
// copy (shared internals), so it can be used from several threads at once.
class Factorization {
 public:
  enum class Kind { kLuPartialPivot, kCholeskyLike };

  Kind kind() const;
  Eigen::Index dim() const;

  // Rough reciprocal-condition hint from the factor diagonals; -1 when the
  // backend does not expose one (sparse path). Informational only.
  double rcond_hint() const;

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  struct Impl;

 private:
  friend Factorization factor(const Matrix& A);
  explicit Factorization(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Factors A for repeated solves. Dense path: row-pivoted elimination, with a
// Cholesky fast path for exactly symmetric positive definite inputs and a
// closed-form kernel for n <= 2 (which keeps small rational systems exact).
// Sparse path: sparse LU with a fill-reducing column ordering.
// Throws SingularMatrixError for singular input.
Factorization factor(const Matrix& A);

Eigen::VectorXd solve(const Factorization& f, const Eigen::VectorXd& rhs);

}  // namespace socnewton
