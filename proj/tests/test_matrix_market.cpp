#include "socnewton/matrix_market.hpp"

#include <catch2/catch.hpp>
#include <vector>

#include "socnewton/errors.hpp"
#include "test_util.hpp"

using namespace socnewton;
using testutil::TempDir;

namespace {

SparseMat sparse_from_triplets(Eigen::Index rows, Eigen::Index cols,
                               const std::vector<Eigen::Triplet<double>>& t) {
  SparseMat m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

}  // namespace

TEST_CASE("sparse round trip through coordinate format") {
  TempDir dir("mm");
  std::vector<Eigen::Triplet<double>> t = {
      {0, 0, 1.5}, {0, 2, -2.0}, {1, 1, 1.0 / 3.0}, {2, 0, 4.0}};
  const Matrix a = Matrix::sparse(sparse_from_triplets(3, 3, t));
  write_matrix_market(dir.file("a.mtx"), a);
  const Matrix back = read_matrix_market(dir.file("a.mtx"));
  REQUIRE(back.is_sparse());
  CHECK((back.to_dense() - a.to_dense()).cwiseAbs().maxCoeff() == 0.0);

  // Canonical writer output is stable byte for byte.
  write_matrix_market(dir.file("b.mtx"), back);
  CHECK(testutil::read_text(dir.file("a.mtx")) == testutil::read_text(dir.file("b.mtx")));
}

TEST_CASE("dense round trip through array format") {
  TempDir dir("mm");
  DenseMat m(2, 3);
  m << 1, 2, 3, 4, 5, 1e-20;
  const Matrix a = Matrix::dense(m);
  write_matrix_market(dir.file("a.mtx"), a);
  const Matrix back = read_matrix_market(dir.file("a.mtx"));
  REQUIRE(back.is_dense());
  CHECK((back.to_dense() - a.to_dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("array data is stored column-major") {
  TempDir dir("mm");
  testutil::write_text(dir.file("c.mtx"),
                       "%%MatrixMarket matrix array real general\n"
                       "2 2\n"
                       "1\n3\n2\n4\n");
  const Matrix a = read_matrix_market(dir.file("c.mtx"));
  REQUIRE(a.is_dense());
  CHECK(a.dense_data()(0, 0) == 1.0);
  CHECK(a.dense_data()(1, 0) == 3.0);
  CHECK(a.dense_data()(0, 1) == 2.0);
  CHECK(a.dense_data()(1, 1) == 4.0);
}

TEST_CASE("symmetric input is expanded to full storage") {
  TempDir dir("mm");
  testutil::write_text(dir.file("s.mtx"),
                       "%%MatrixMarket matrix coordinate real symmetric\n"
                       "% comment line\n"
                       "3 3 4\n"
                       "1 1 2.0\n"
                       "2 1 -1.0\n"
                       "3 3 5.0\n"
                       "3 2 0.5\n");
  const Matrix a = read_matrix_market(dir.file("s.mtx"));
  const DenseMat d = a.to_dense();
  CHECK(d(0, 1) == -1.0);
  CHECK(d(1, 0) == -1.0);
  CHECK(d(1, 2) == 0.5);
  CHECK(d(2, 1) == 0.5);
  CHECK(d(0, 0) == 2.0);

  testutil::write_text(dir.file("sa.mtx"),
                       "%%MatrixMarket matrix array integer symmetric\n"
                       "2 2\n"
                       "7\n1\n9\n");
  const DenseMat da = read_matrix_market(dir.file("sa.mtx")).to_dense();
  CHECK(da(0, 0) == 7.0);
  CHECK(da(1, 0) == 1.0);
  CHECK(da(0, 1) == 1.0);
  CHECK(da(1, 1) == 9.0);
}

TEST_CASE("integer fields parse as reals") {
  TempDir dir("mm");
  testutil::write_text(dir.file("i.mtx"),
                       "%%MatrixMarket matrix coordinate integer general\n"
                       "2 2 2\n"
                       "1 1 3\n"
                       "2 2 -4\n");
  const DenseMat d = read_matrix_market(dir.file("i.mtx")).to_dense();
  CHECK(d(0, 0) == 3.0);
  CHECK(d(1, 1) == -4.0);
}

TEST_CASE("malformed headers and bodies raise ParseError") {
  TempDir dir("mm");

  testutil::write_text(dir.file("h1.mtx"), "%%NotMatrixMarket matrix coordinate real general\n");
  CHECK_THROWS_AS(read_matrix_market(dir.file("h1.mtx")), ParseError);

  testutil::write_text(dir.file("h2.mtx"),
                       "%%MatrixMarket matrix coordinate complex general\n1 1 0\n");
  CHECK_THROWS_AS(read_matrix_market(dir.file("h2.mtx")), ParseError);

  testutil::write_text(dir.file("h3.mtx"),
                       "%%MatrixMarket matrix coordinate real general\n"
                       "2 2 1\n"
                       "3 1 5.0\n");  // row index out of bounds
  CHECK_THROWS_AS(read_matrix_market(dir.file("h3.mtx")), ParseError);

  testutil::write_text(dir.file("h4.mtx"),
                       "%%MatrixMarket matrix coordinate real general\n"
                       "2 2 2\n"
                       "1 1 5.0\n");  // too few entries
  CHECK_THROWS_AS(read_matrix_market(dir.file("h4.mtx")), ParseError);

  testutil::write_text(dir.file("h5.mtx"),
                       "%%MatrixMarket matrix coordinate real general\n"
                       "2 2 1\n"
                       "1 1 abc\n");
  CHECK_THROWS_AS(read_matrix_market(dir.file("h5.mtx")), ParseError);
}

TEST_CASE("header is case-insensitive and comments are skipped") {
  TempDir dir("mm");
  testutil::write_text(dir.file("c.mtx"),
                       "%%matrixmarket MATRIX Coordinate Real General\n"
                       "% a comment\n"
                       "%%another comment\n"
                       "1 1 1\n"
                       "1 1 2.5\n");
  CHECK(read_matrix_market(dir.file("c.mtx")).to_dense()(0, 0) == 2.5);
}
