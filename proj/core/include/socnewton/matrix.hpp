#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <variant>

#include "socnewton/errors.hpp"

namespace socnewton {

// Dense storage is row-major; sparse storage is compressed row (CSR) with
// column indices strictly increasing within each row.
using DenseMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// A real matrix, dense or sparse. Immutable after construction.
class Matrix {
 public:
  Matrix() : data_(DenseMat()) {}  // empty 0x0 dense matrix

  static Matrix dense(DenseMat values);
  static Matrix dense(const Eigen::MatrixXd& values);
  static Matrix sparse(SparseMat values);

  bool is_dense() const { return std::holds_alternative<DenseMat>(data_); }
  bool is_sparse() const { return !is_dense(); }

  Eigen::Index rows() const;
  Eigen::Index cols() const;
  Eigen::Index nonzeros() const;

  const DenseMat& dense_data() const;
  const SparseMat& sparse_data() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const;

  DenseMat to_dense() const;
  Matrix transpose() const;
  bool is_symmetric(double rel_tol = 1e-10) const;

 private:
  explicit Matrix(std::variant<DenseMat, SparseMat> data) : data_(std::move(data)) {}
  std::variant<DenseMat, SparseMat> data_;
};

Matrix identity_matrix(Eigen::Index n);

}  // namespace socnewton
