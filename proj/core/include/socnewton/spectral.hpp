#pragma once

#include <utility>

#include "socnewton/matrix.hpp"

namespace socnewton {

// Iteration caps for the sparse estimators. Dense inputs are computed exactly
// (full SVD / symmetric eigendecomposition); sparse inputs fall back to power
// iteration, and to shifted inverse iteration for eigenvalue refinement.
inline constexpr int kSparseNormMaxIter = 20000;
inline constexpr int kSparseEigMaxIter = 100000;

// Target relative accuracy of the sparse estimates.
inline constexpr double kSparseNormRelAccuracy = 1e-6;
inline constexpr double kSparseEigRelAccuracy = 1e-8;

// Largest singular value (the operator 2-norm).
double op_norm_2(const Matrix& A);

// Smallest singular value of a square matrix. Returns 0 for singular input.
double sigma_min(const Matrix& A);

// (lambda_min, lambda_max) of a symmetric matrix. Throws InvalidInputError if
// the input is not symmetric within 1e-10 relative.
std::pair<double, double> sym_eig_extremes(const Matrix& A);

}  // namespace socnewton
