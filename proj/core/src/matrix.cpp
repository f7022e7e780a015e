#include "socnewton/matrix.hpp"

namespace socnewton {

Matrix Matrix::dense(DenseMat values) {
  if (values.rows() < 1 || values.cols() < 1) {
    throw InvalidInputError("Matrix: dimensions must be positive");
  }
  if (!values.allFinite()) {
    throw InvalidInputError("Matrix: entries must be finite");
  }
  return Matrix(std::variant<DenseMat, SparseMat>(std::in_place_index<0>, std::move(values)));
}

Matrix Matrix::dense(const Eigen::MatrixXd& values) { return dense(DenseMat(values)); }

Matrix Matrix::sparse(SparseMat values) {
  if (values.rows() < 1 || values.cols() < 1) {
    throw InvalidInputError("Matrix: dimensions must be positive");
  }
  values.makeCompressed();
  for (Eigen::Index k = 0; k < values.nonZeros(); ++k) {
    if (!std::isfinite(values.valuePtr()[k])) {
      throw InvalidInputError("Matrix: entries must be finite");
    }
  }
  return Matrix(std::variant<DenseMat, SparseMat>(std::in_place_index<1>, std::move(values)));
}

Eigen::Index Matrix::rows() const {
  return is_dense() ? dense_data().rows() : sparse_data().rows();
}

Eigen::Index Matrix::cols() const {
  return is_dense() ? dense_data().cols() : sparse_data().cols();
}

Eigen::Index Matrix::nonzeros() const {
  return is_dense() ? rows() * cols() : sparse_data().nonZeros();
}

const DenseMat& Matrix::dense_data() const {
  if (!is_dense()) throw InvalidInputError("Matrix: not dense");
  return std::get<0>(data_);
}

const SparseMat& Matrix::sparse_data() const {
  if (!is_sparse()) throw InvalidInputError("Matrix: not sparse");
  return std::get<1>(data_);
}

Eigen::VectorXd Matrix::apply(const Eigen::VectorXd& x) const {
  if (x.size() != cols()) throw DimensionMismatchError("Matrix::apply: size mismatch");
  if (is_dense()) return dense_data() * x;
  return sparse_data() * x;
}

Eigen::VectorXd Matrix::apply_transpose(const Eigen::VectorXd& x) const {
  if (x.size() != rows()) {
    throw DimensionMismatchError("Matrix::apply_transpose: size mismatch");
  }
  if (is_dense()) return dense_data().transpose() * x;
  return sparse_data().transpose() * x;
}

DenseMat Matrix::to_dense() const {
  if (is_dense()) return dense_data();
  return DenseMat(sparse_data());
}

Matrix Matrix::transpose() const {
  if (is_dense()) return dense(DenseMat(dense_data().transpose()));
  return sparse(SparseMat(sparse_data().transpose()));
}

bool Matrix::is_symmetric(double rel_tol) const {
  if (rows() != cols()) return false;
  if (is_dense()) {
    const DenseMat& a = dense_data();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
  }
  const SparseMat& a = sparse_data();
  SparseMat diff = SparseMat(a - SparseMat(a.transpose()));
  double max_abs = 0.0;
  double scale = 1.0;
  for (Eigen::Index k = 0; k < a.nonZeros(); ++k) {
    scale = std::max(scale, std::abs(a.valuePtr()[k]));
  }
  for (Eigen::Index k = 0; k < diff.nonZeros(); ++k) {
    max_abs = std::max(max_abs, std::abs(diff.valuePtr()[k]));
  }
  return max_abs <= rel_tol * scale;
}

Matrix identity_matrix(Eigen::Index n) {
  SparseMat id(n, n);
  id.setIdentity();
  return Matrix::sparse(std::move(id));
}

}  // namespace socnewton
