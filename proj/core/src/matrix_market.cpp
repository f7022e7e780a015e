#include "socnewton/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <vector>

#include "socnewton/textio.hpp"

namespace socnewton {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string loc(const std::filesystem::path& path, long line) {
  return path.string() + ":" + std::to_string(line);
}

struct Header {
  bool coordinate = true;
  bool symmetric = false;
};

Header parse_header(const std::string& line, const std::filesystem::path& path) {
  const auto tokens = split_whitespace(line);
  if (tokens.size() != 5 || lower(tokens[0]) != "%%matrixmarket" ||
      lower(tokens[1]) != "matrix") {
    throw ParseError(loc(path, 1) + ": malformed MatrixMarket header line");
  }
  Header h;
  const std::string format = lower(tokens[2]);
  const std::string field = lower(tokens[3]);
  const std::string symmetry = lower(tokens[4]);
  if (format == "coordinate") h.coordinate = true;
  else if (format == "array") h.coordinate = false;
  else throw ParseError(loc(path, 1) + ": unsupported format '" + tokens[2] + "'");
  if (field != "real" && field != "integer") {
    throw ParseError(loc(path, 1) + ": unsupported field '" + tokens[3] + "'");
  }
  if (symmetry == "general") h.symmetric = false;
  else if (symmetry == "symmetric") h.symmetric = true;
  else throw ParseError(loc(path, 1) + ": unsupported symmetry '" + tokens[4] + "'");
  return h;
}

}  // namespace

Matrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file " + path.string());

  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError(path.string() + ": empty file");
  }
  ++line_no;
  const Header header = parse_header(line, path);

  auto next_data_line = [&]() -> std::vector<std::string> {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line[0] == '%') continue;
      auto tokens = split_whitespace(line);
      if (!tokens.empty()) return tokens;
    }
    throw ParseError(loc(path, line_no) + ": unexpected end of file");
  };

  const auto size_tokens = next_data_line();
  const std::string where = loc(path, line_no);
  if (size_tokens.size() != (header.coordinate ? 3u : 2u)) {
    throw ParseError(where + ": malformed size line");
  }
  const long long rows = parse_integer(size_tokens[0], where);
  const long long cols = parse_integer(size_tokens[1], where);
  if (rows < 1 || cols < 1) throw ParseError(where + ": dimensions must be positive");
  if (header.symmetric && rows != cols) {
    throw ParseError(where + ": symmetric matrix must be square");
  }

  if (header.coordinate) {
    const long long nnz = parse_integer(size_tokens[2], where);
    if (nnz < 0) throw ParseError(where + ": negative entry count");
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(nnz) * (header.symmetric ? 2 : 1));
    for (long long k = 0; k < nnz; ++k) {
      const auto tokens = next_data_line();
      const std::string entry_loc = loc(path, line_no);
      if (tokens.size() != 3) throw ParseError(entry_loc + ": expected 'i j value'");
      const long long i = parse_integer(tokens[0], entry_loc);
      const long long j = parse_integer(tokens[1], entry_loc);
      const double v = parse_double(tokens[2], entry_loc);
      if (i < 1 || i > rows || j < 1 || j > cols) {
        throw ParseError(entry_loc + ": index out of range");
      }
      triplets.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
      if (header.symmetric && i != j) {
        triplets.emplace_back(static_cast<int>(j - 1), static_cast<int>(i - 1), v);
      }
    }
    SparseMat m(rows, cols);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return Matrix::sparse(std::move(m));
  }

  DenseMat m = DenseMat::Zero(rows, cols);
  // Array data is column-major; symmetric array stores the lower triangle of
  // each column.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = header.symmetric ? j : 0; i < rows; ++i) {
      const auto tokens = next_data_line();
      const std::string entry_loc = loc(path, line_no);
      if (tokens.size() != 1) throw ParseError(entry_loc + ": expected one value per line");
      const double v = parse_double(tokens[0], entry_loc);
      m(i, j) = v;
      if (header.symmetric) m(j, i) = v;
    }
  }
  return Matrix::dense(std::move(m));
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& A) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open matrix file for writing: " + path.string());
  if (A.is_sparse()) {
    const SparseMat& m = A.sparse_data();
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
    for (Eigen::Index row = 0; row < m.outerSize(); ++row) {
      for (SparseMat::InnerIterator it(m, row); it; ++it) {
        out << (it.row() + 1) << " " << (it.col() + 1) << " " << format_double(it.value())
            << "\n";
      }
    }
  } else {
    const DenseMat& m = A.dense_data();
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << " " << m.cols() << "\n";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << format_double(m(i, j)) << "\n";
      }
    }
  }
  if (!out) throw ParseError("failed writing matrix file " + path.string());
}

}  // namespace socnewton
