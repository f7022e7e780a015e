#include "socnewton/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <optional>

#include "socnewton/factorization.hpp"
#include "socnewton/rng.hpp"

namespace socnewton {

namespace {

constexpr double kSymTol = 1e-10;

Eigen::VectorXd deterministic_unit(Eigen::Index n, std::uint64_t salt) {
  rng::Xoshiro256pp gen(rng::derive_seed(0xA11CEu, salt));
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = gen.uniform(-1.0, 1.0);
  const double nrm = v.norm();
  return nrm > 0.0 ? Eigen::VectorXd(v / nrm) : Eigen::VectorXd(Eigen::VectorXd::Unit(n, 0));
}

double dense_sigma_extreme(const DenseMat& a, bool want_max) {
  if (a.rows() == a.cols()) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() <= kSymTol * scale) {
      Eigen::SelfAdjointEigenSolver<DenseMat> es(a, Eigen::EigenvaluesOnly);
      const auto abs_evs = es.eigenvalues().cwiseAbs();
      return want_max ? abs_evs.maxCoeff() : abs_evs.minCoeff();
    }
  }
  Eigen::BDCSVD<DenseMat> svd(a);
  const auto& sv = svd.singularValues();
  return want_max ? sv(0) : sv(sv.size() - 1);
}

// Power iteration on A^T A; the Rayleigh estimates increase monotonically to
// sigma_max^2, so a stalled estimate means convergence.
double sparse_norm_estimate(const SparseMat& a) {
  Eigen::VectorXd v = deterministic_unit(a.cols(), 1);
  double s_prev = -1.0;
  int stable = 0;
  double s = 0.0;
  for (int iter = 0; iter < kSparseNormMaxIter; ++iter) {
    Eigen::VectorXd w = a * v;
    s = w.norm();
    if (s == 0.0) return 0.0;
    Eigen::VectorXd v2 = a.transpose() * w;
    const double nv = v2.norm();
    if (nv == 0.0) break;
    v = v2 / nv;
    if (s_prev >= 0.0 && std::abs(s - s_prev) <= 0.1 * kSparseNormRelAccuracy * s) {
      if (++stable >= 2) break;
    } else {
      stable = 0;
    }
    s_prev = s;
  }
  return s;
}

double sparse_sigma_min_estimate(const Matrix& A) {
  std::optional<Factorization> lu, lu_t;
  try {
    lu = factor(A);
    lu_t = factor(A.transpose());
  } catch (const SingularMatrixError&) {
    return 0.0;
  }
  Eigen::VectorXd v = deterministic_unit(A.rows(), 2);
  double lam_prev = -1.0;
  double lam = 0.0;
  int stable = 0;
  for (int iter = 0; iter < kSparseNormMaxIter; ++iter) {
    // One application of the symmetric operator A^{-1} A^{-T}.
    Eigen::VectorXd w = lu->solve(lu_t->solve(v));
    lam = v.dot(w);
    const double nw = w.norm();
    if (nw == 0.0 || lam <= 0.0) return 0.0;
    v = w / nw;
    if (lam_prev > 0.0 && std::abs(lam - lam_prev) <= 0.1 * kSparseNormRelAccuracy * lam) {
      if (++stable >= 2) break;
    } else {
      stable = 0;
    }
    lam_prev = lam;
  }
  return 1.0 / std::sqrt(lam);
}

struct PowerResult {
  double lambda = 0.0;
  Eigen::VectorXd vec;
};

// Rayleigh-quotient power iteration on A + shift*I for a symmetric A.
PowerResult sym_power(const SparseMat& a, double shift, std::uint64_t salt) {
  Eigen::VectorXd v = deterministic_unit(a.rows(), salt);
  double lam = 0.0;
  for (int iter = 0; iter < kSparseEigMaxIter; ++iter) {
    Eigen::VectorXd w = a * v + shift * v;
    lam = v.dot(w);
    if ((w - lam * v).norm() <= 1e-10 * (1.0 + std::abs(lam))) break;
    const double nw = w.norm();
    if (nw == 0.0) {
      lam = 0.0;
      break;
    }
    v = w / nw;
  }
  return {lam - shift, v};
}

// Shifted inverse iteration refining one spectral extreme; dir = +1 refines
// from above (lambda_max), -1 from below (lambda_min).
double sym_inverse_polish(const SparseMat& a, const PowerResult& start, double dir,
                          double spread) {
  double delta = std::max(1e-8 * (1.0 + std::abs(start.lambda)), 1e-4 * spread);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double sigma = start.lambda + dir * delta;
    Eigen::SparseMatrix<double> shifted(a);
    for (Eigen::Index i = 0; i < a.rows(); ++i) shifted.coeffRef(i, i) -= sigma;
    shifted.makeCompressed();
    std::optional<Factorization> lu;
    try {
      lu = factor(Matrix::sparse(SparseMat(shifted)));
    } catch (const SingularMatrixError&) {
      delta *= 10.0;
      continue;
    }
    Eigen::VectorXd v = start.vec;
    double lam = start.lambda;
    for (int iter = 0; iter < 200; ++iter) {
      Eigen::VectorXd z = lu->solve(v);
      const double nz = z.norm();
      if (nz == 0.0) break;
      v = z / nz;
      Eigen::VectorXd av = a * v;
      lam = v.dot(av);
      if ((av - lam * v).norm() <= kSparseEigRelAccuracy * 0.01 * (1.0 + std::abs(lam))) {
        return lam;
      }
    }
    return lam;
  }
  return start.lambda;
}

std::pair<double, double> sparse_eig_extremes(const SparseMat& a) {
  // Gershgorin-style bound, >= spectral radius.
  double c = 0.0;
  for (Eigen::Index i = 0; i < a.outerSize(); ++i) {
    double row_sum = 0.0;
    for (SparseMat::InnerIterator it(a, i); it; ++it) row_sum += std::abs(it.value());
    c = std::max(c, row_sum);
  }
  if (c == 0.0) return {0.0, 0.0};
  PowerResult hi = sym_power(a, c, 3);   // dominant of A + cI  ->  lambda_max
  PowerResult lo = sym_power(a, -c, 4);  // dominant of A - cI  ->  lambda_min
  const double spread = std::max(0.0, hi.lambda - lo.lambda);
  double lambda_max = hi.lambda;
  double lambda_min = lo.lambda;
  if (spread > 0.0) {
    lambda_max = sym_inverse_polish(a, hi, +1.0, spread);
    lambda_min = sym_inverse_polish(a, lo, -1.0, spread);
  }
  if (lambda_min > lambda_max) std::swap(lambda_min, lambda_max);
  return {lambda_min, lambda_max};
}

}  // namespace

double op_norm_2(const Matrix& A) {
  if (A.is_dense()) return dense_sigma_extreme(A.dense_data(), true);
  return sparse_norm_estimate(A.sparse_data());
}

double sigma_min(const Matrix& A) {
  if (A.rows() != A.cols()) {
    throw InvalidInputError("sigma_min: matrix must be square");
  }
  if (A.is_dense()) return dense_sigma_extreme(A.dense_data(), false);
  return sparse_sigma_min_estimate(A);
}

std::pair<double, double> sym_eig_extremes(const Matrix& A) {
  if (!A.is_symmetric(kSymTol)) {
    throw InvalidInputError("sym_eig_extremes: matrix is not symmetric");
  }
  if (A.is_dense()) {
    Eigen::SelfAdjointEigenSolver<DenseMat> es(A.dense_data(), Eigen::EigenvaluesOnly);
    const auto& evs = es.eigenvalues();
    return {evs.minCoeff(), evs.maxCoeff()};
  }
  return sparse_eig_extremes(A.sparse_data());
}

}  // namespace socnewton
