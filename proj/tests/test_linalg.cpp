#include <catch2/catch.hpp>
#include <cmath>
#include <vector>

#include "socnewton/errors.hpp"
#include "socnewton/factorization.hpp"
#include "socnewton/matrix.hpp"
#include "socnewton/rng.hpp"
#include "socnewton/spectral.hpp"

using namespace socnewton;

namespace {

DenseMat dense2(double a, double b, double c, double d) {
  DenseMat m(2, 2);
  m << a, b, c, d;
  return m;
}

SparseMat sparse_from_triplets(Eigen::Index rows, Eigen::Index cols,
                               const std::vector<Eigen::Triplet<double>>& t) {
  SparseMat m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

Matrix random_diag_dominant_sparse(Eigen::Index n, std::uint64_t seed) {
  rng::Xoshiro256pp g(seed);
  std::vector<Eigen::Triplet<double>> t;
  for (Eigen::Index i = 0; i < n; ++i) {
    t.emplace_back(i, i, 10.0 + g.uniform01());
    const Eigen::Index j = static_cast<Eigen::Index>(g.next() % static_cast<std::uint64_t>(n));
    if (j != i) t.emplace_back(i, j, g.uniform(-1.0, 1.0));
  }
  return Matrix::sparse(sparse_from_triplets(n, n, t));
}

}  // namespace

TEST_CASE("Matrix factories validate and report shape") {
  const Matrix d = Matrix::dense(dense2(1, 2, 3, 4));
  CHECK(d.is_dense());
  CHECK(d.rows() == 2);
  CHECK(d.cols() == 2);
  CHECK(d.nonzeros() == 4);

  const Matrix s = identity_matrix(3);
  CHECK(s.is_sparse());
  CHECK(s.nonzeros() == 3);

  DenseMat bad = dense2(1, 2, 3, std::nan(""));
  CHECK_THROWS_AS(Matrix::dense(std::move(bad)), InvalidInputError);
}

TEST_CASE("Matrix apply and transpose agree with dense arithmetic") {
  const Matrix d = Matrix::dense(dense2(1, 2, 3, 4));
  Eigen::VectorXd x(2);
  x << 5, -1;
  Eigen::VectorXd dx = d.apply(x);
  CHECK(dx[0] == 3.0);
  CHECK(dx[1] == 11.0);
  Eigen::VectorXd dtx = d.apply_transpose(x);
  CHECK(dtx[0] == 2.0);
  CHECK(dtx[1] == 6.0);

  const Matrix s = random_diag_dominant_sparse(17, 5);
  const Matrix st = s.transpose();
  CHECK((s.apply_transpose(Eigen::VectorXd::Ones(17)) - st.apply(Eigen::VectorXd::Ones(17)))
            .norm() == 0.0);
  CHECK((s.to_dense() - st.to_dense().transpose()).norm() == 0.0);
  CHECK_THROWS_AS(s.apply(Eigen::VectorXd::Ones(4)), DimensionMismatchError);
}

TEST_CASE("is_symmetric uses a relative tolerance") {
  DenseMat m(2, 2);
  m << 1.0, 2.0, 2.0 + 1e-16, 3.0;
  CHECK(Matrix::dense(m).is_symmetric());
  m(1, 0) = 2.1;
  CHECK_FALSE(Matrix::dense(m).is_symmetric());
  CHECK(identity_matrix(4).is_symmetric());
}

TEST_CASE("tiny solves are exact on small rational systems") {
  // These two systems arise in the 2 x 2 oscillation example; the adjugate
  // formula reproduces the integer solutions exactly.
  const Factorization f1 = factor(Matrix::dense(dense2(5.5, 1.5, 1.5, 0.5)));
  Eigen::VectorXd b(2);
  b << 13, 3;
  const Eigen::VectorXd x1 = f1.solve(b);
  CHECK(x1[0] == 4.0);
  CHECK(x1[1] == -6.0);

  const Factorization f2 = factor(Matrix::dense(dense2(5.5, 0.5, 0.5, 0.5)));
  const Eigen::VectorXd x2 = f2.solve(b);
  CHECK(x2[0] == 2.0);
  CHECK(x2[1] == 4.0);

  DenseMat one(1, 1);
  one << 4.0;
  Eigen::VectorXd r1(1);
  r1 << 10.0;
  CHECK(factor(Matrix::dense(one)).solve(r1)[0] == 2.5);
}

TEST_CASE("singular matrices are reported with a pivot index") {
  try {
    factor(Matrix::dense(dense2(1, 2, 2, 4)));
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot_index() == 1);
  }
  try {
    factor(Matrix::dense(dense2(0, 0, 0, 1)));
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot_index() == 0);
  }
  DenseMat zero1(1, 1);
  zero1 << 0.0;
  CHECK_THROWS_AS(factor(Matrix::dense(zero1)), SingularMatrixError);

  DenseMat rank2(3, 3);
  rank2 << 1, 1, 1, 1, 1, 1, 2, 3, 4;
  CHECK_THROWS_AS(factor(Matrix::dense(rank2)), SingularMatrixError);
}

TEST_CASE("exactly symmetric positive definite input takes the Cholesky path") {
  DenseMat spd(3, 3);
  spd << 4, 1, 0, 1, 3, 1, 0, 1, 5;
  const Factorization f = factor(Matrix::dense(spd));
  CHECK(f.kind() == Factorization::Kind::kCholeskyLike);
  Eigen::VectorXd b(3);
  b << 1, 2, 3;
  CHECK((Eigen::MatrixXd(spd) * f.solve(b) - b).norm() < 1e-12);

  // Symmetric but indefinite falls back to row-pivoted elimination.
  DenseMat indef(3, 3);
  indef << 1, 0, 0, 0, -1, 0, 0, 0, 1;
  const Factorization g = factor(Matrix::dense(indef));
  CHECK(g.kind() == Factorization::Kind::kLuPartialPivot);
  CHECK((g.solve(b) - Eigen::VectorXd(b.cwiseProduct(Eigen::Vector3d(1, -1, 1)))).norm() == 0.0);
}

TEST_CASE("dense solves match Eigen on random systems") {
  rng::Xoshiro256pp g(17);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(g.next() % 30);
    DenseMat a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = g.uniform(-10.0, 10.0);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) b[i] = g.uniform(-10.0, 10.0);
    const Eigen::VectorXd x = factor(Matrix::dense(a)).solve(b);
    CHECK((Eigen::MatrixXd(a) * x - b).norm() <= 1e-9 * b.norm());
  }
}

TEST_CASE("sparse factorization solves and flags singularity") {
  const Matrix a = random_diag_dominant_sparse(40, 9);
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(40, -1.0, 1.0);
  const Factorization f = factor(a);
  CHECK(f.kind() == Factorization::Kind::kLuPartialPivot);
  CHECK((a.apply(f.solve(b)) - b).norm() <= 1e-10 * b.norm());

  std::vector<Eigen::Triplet<double>> t = {{0, 0, 1.0}};
  const Matrix singular = Matrix::sparse(sparse_from_triplets(2, 2, t));
  try {
    factor(singular);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot_index() == -1);
  }
}

TEST_CASE("operator norms: dense exact values") {
  CHECK(op_norm_2(Matrix::dense(dense2(3, 0, 0, -4))) == 4.0);
  CHECK(sigma_min(Matrix::dense(dense2(3, 0, 0, -4))) == 3.0);
  CHECK(op_norm_2(Matrix::dense(dense2(0, 2, 0, 0))) == 2.0);
  CHECK(sigma_min(Matrix::dense(dense2(0, 2, 0, 0))) == 0.0);
  CHECK(sigma_min(Matrix::dense(dense2(1, 2, 2, 4))) == Approx(0.0).margin(1e-12));
}

TEST_CASE("sparse norm estimates match the dense oracle") {
  const Matrix s = random_diag_dominant_sparse(60, 21);
  const Matrix d = Matrix::dense(Eigen::MatrixXd(s.to_dense()));
  CHECK(op_norm_2(s) == Approx(op_norm_2(d)).epsilon(1e-4));
  CHECK(sigma_min(s) == Approx(sigma_min(d)).epsilon(1e-4));
}

TEST_CASE("sigma_min of a singular sparse matrix is zero") {
  std::vector<Eigen::Triplet<double>> t = {{0, 0, 1.0}, {1, 1, 1.0}};
  const Matrix s = Matrix::sparse(sparse_from_triplets(3, 3, t));
  CHECK(sigma_min(s) == 0.0);
}

TEST_CASE("symmetric eigenvalue extremes, dense and sparse") {
  DenseMat diag = DenseMat::Zero(5, 5);
  for (int i = 0; i < 5; ++i) diag(i, i) = i + 1.0;
  const auto [lo, hi] = sym_eig_extremes(Matrix::dense(diag));
  CHECK(lo == 1.0);
  CHECK(hi == 5.0);

  // Tridiagonal (-1, 2, -1): eigenvalues 2 - 2 cos(k pi / (n+1)).
  const Eigen::Index n = 20;
  std::vector<Eigen::Triplet<double>> t;
  for (Eigen::Index i = 0; i < n; ++i) {
    t.emplace_back(i, i, 2.0);
    if (i + 1 < n) {
      t.emplace_back(i, i + 1, -1.0);
      t.emplace_back(i + 1, i, -1.0);
    }
  }
  const auto [slo, shi] = sym_eig_extremes(Matrix::sparse(sparse_from_triplets(n, n, t)));
  const double expect_lo = 2.0 - 2.0 * std::cos(M_PI / (n + 1));
  const double expect_hi = 2.0 - 2.0 * std::cos(n * M_PI / (n + 1));
  CHECK(slo == Approx(expect_lo).epsilon(1e-6));
  CHECK(shi == Approx(expect_hi).epsilon(1e-6));

  CHECK_THROWS_AS(sym_eig_extremes(Matrix::dense(dense2(1, 2, 3, 4))), InvalidInputError);
}
