#include "socnewton/problem_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "socnewton/errors.hpp"
#include "socnewton/matrix_market.hpp"
#include "socnewton/textio.hpp"

namespace socnewton {
namespace {

// Strict line cursor: every read records the position so ParseError messages
// can point at "<file>:<line>".
struct LineCursor {
  std::istream& in;
  std::string path;
  int lineno = 0;
  std::string line;

  bool next() {
    if (!std::getline(in, line)) return false;
    ++lineno;
    return true;
  }

  std::string where() const { return path + ":" + std::to_string(lineno); }

  void require(const std::string& what) {
    if (!next()) {
      throw ParseError("unexpected end of file, expected " + what, path + ":" +
                                                                       std::to_string(lineno + 1));
    }
  }

  void expect_exact(const std::string& expected) {
    require("'" + expected + "'");
    if (line != expected) {
      throw ParseError("expected '" + expected + "', got '" + line + "'", where());
    }
  }

  // Consumes a "key: value" line and returns the value part.
  std::string expect_key(const std::string& key) {
    require("'" + key + ": ...'");
    return value_for(key);
  }

  std::string value_for(const std::string& key) const {
    const std::string prefix = key + ": ";
    if (line.rfind(prefix, 0) != 0) {
      throw ParseError("expected '" + key + ": ...', got '" + line + "'", where());
    }
    return line.substr(prefix.size());
  }
};

Eigen::VectorXd read_value_block(LineCursor& cur, Eigen::Index n, const std::string& section) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cur.require("value " + std::to_string(i + 1) + " of section '" + section + "'");
    const std::vector<std::string> toks = split_whitespace(cur.line);
    if (toks.size() != 1) {
      throw ParseError("expected exactly one value per line in section '" + section + "'",
                       cur.where());
    }
    v[i] = parse_double(toks[0], cur.where());
  }
  return v;
}

void write_value_block(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << "\n";
}

void write_vector_line(std::ostream& out, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out << ' ';
    out << format_double(v[i]);
  }
  out << "\n";
}

void write_row(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out << ' ';
    out << format_double(v[i]);
  }
  out << "\n";
}

std::string opt_value(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("none");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace

const char* to_string(ProblemKind kind) {
  return kind == ProblemKind::kPwls ? "pwls" : "lsoccp";
}

void write_problem_file(const std::filesystem::path& path, const ProblemFile& pf) {
  const Eigen::Index n = pf.matrix.rows();
  if (pf.matrix.cols() != n) throw InvalidInputError("problem matrix must be square");
  if (pf.rhs.size() != n) throw DimensionMismatchError("rhs length does not match matrix");
  if (pf.planted && pf.planted->size() != n) {
    throw DimensionMismatchError("planted solution length does not match matrix");
  }
  if (pf.provenance && pf.provenance->find('\n') != std::string::npos) {
    throw InvalidInputError("provenance must be a single line");
  }

  std::ostringstream out;
  out << "soc-newton problem v1\n";
  out << "kind: " << to_string(pf.kind) << "\n";
  out << "n: " << n << "\n";
  if (pf.matrix.is_dense()) {
    out << "matrix: inline\n";
    const DenseMat& a = pf.matrix.dense_data();
    for (Eigen::Index i = 0; i < n; ++i) write_row(out, a.row(i).transpose());
  } else {
    std::filesystem::path side = path;
    side.replace_extension(".mtx");
    write_matrix_market(side, pf.matrix);
    out << "matrix: file " << side.filename().string() << "\n";
  }
  out << "rhs:\n";
  write_value_block(out, pf.rhs);
  if (pf.planted) {
    out << "planted:\n";
    write_value_block(out, *pf.planted);
  }
  if (pf.provenance) out << "provenance: " << *pf.provenance << "\n";
  write_text_file(path, out.str());
}

ProblemFile read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
  LineCursor cur{in, path.string()};

  cur.expect_exact("soc-newton problem v1");
  ProblemFile pf;
  {
    const std::string kind = cur.expect_key("kind");
    if (kind == "pwls") {
      pf.kind = ProblemKind::kPwls;
    } else if (kind == "lsoccp") {
      pf.kind = ProblemKind::kLsoccp;
    } else {
      throw ParseError("unknown problem kind '" + kind + "'", cur.where());
    }
  }
  const long long n_ll = parse_integer(cur.expect_key("n"), cur.where());
  if (n_ll < 1 || n_ll > (1 << 24)) throw ParseError("dimension out of range", cur.where());
  const Eigen::Index n = static_cast<Eigen::Index>(n_ll);

  std::optional<Matrix> mat;
  {
    const std::string spec = cur.expect_key("matrix");
    if (spec == "inline") {
      DenseMat a(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        cur.require("matrix row " + std::to_string(i + 1));
        const std::vector<std::string> toks = split_whitespace(cur.line);
        if (static_cast<Eigen::Index>(toks.size()) != n) {
          throw ParseError("matrix row has " + std::to_string(toks.size()) + " values, expected " +
                               std::to_string(n),
                           cur.where());
        }
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = parse_double(toks[j], cur.where());
      }
      mat.emplace(Matrix::dense(std::move(a)));
    } else if (spec.rfind("file ", 0) == 0) {
      const std::string name = spec.substr(5);
      if (name.empty() || name.find('/') != std::string::npos) {
        throw ParseError("matrix side file must be a bare file name", cur.where());
      }
      mat.emplace(read_matrix_market(path.parent_path() / name));
    } else {
      throw ParseError("matrix storage must be 'inline' or 'file <name>'", cur.where());
    }
  }
  if (mat->rows() != n || mat->cols() != n) {
    throw ParseError("matrix is " + std::to_string(mat->rows()) + "x" +
                         std::to_string(mat->cols()) + ", expected " + std::to_string(n) + "x" +
                         std::to_string(n),
                     cur.where());
  }
  pf.matrix = std::move(*mat);

  cur.expect_exact("rhs:");
  pf.rhs = read_value_block(cur, n, "rhs");

  // Optional trailing sections, in fixed order.
  if (cur.next()) {
    if (cur.line == "planted:") {
      pf.planted = read_value_block(cur, n, "planted");
      if (!cur.next()) return pf;
    }
    if (cur.line.rfind("provenance: ", 0) == 0) {
      pf.provenance = cur.value_for("provenance");
      if (!cur.next()) return pf;
    }
    throw ParseError("unexpected trailing content '" + cur.line + "'", cur.where());
  }
  return pf;
}

void write_report_file(const std::filesystem::path& path, const ReportFile& rf) {
  const SolveReport& rep = rf.report;
  const std::size_t expected = static_cast<std::size_t>(rep.iterations) + 1;
  if (rep.residual_history.size() != expected || rep.region_history.size() != expected ||
      rep.iterate_history.size() != expected) {
    throw InvalidInputError("report histories must have length iterations + 1");
  }
  if (rep.final_x.size() != rep.iterate_history.front().size()) {
    throw InvalidInputError("final_x length does not match the iterate width");
  }

  std::ostringstream out;
  out << "soc-newton report v1\n";
  out << "problem: " << rf.problem_path << "\n";
  out << "kind: " << to_string(rf.kind) << "\n";
  out << "status: " << to_string(rep.status) << "\n";
  out << "iterations: " << rep.iterations << "\n";
  out << "stopped_by_v_fixpoint: " << (rep.stopped_by_v_fixpoint ? "true" : "false") << "\n";
  out << "failure_iteration: " << rep.failure_iteration << "\n";
  out << "tol: " << format_double(rf.tol) << "\n";
  out << "max_iter: " << rf.max_iter << "\n";
  out << "wall_time_ms: " << format_double(rf.wall_time_ms) << "\n";
  if (rf.beta) out << "beta: " << format_double(*rf.beta) << "\n";

  if (rf.pwls_certificate) {
    const GuaranteeCertificate& c = *rf.pwls_certificate;
    out << "certificate: class=" << to_string(c.cls) << " inv_norm=" << format_double(c.inv_norm)
        << " spd=" << (c.spd ? "true" : "false") << " rate_bound=" << opt_value(c.rate_bound)
        << " estimated=" << (c.norm_estimated ? "true" : "false") << "\n";
  } else if (rf.lsoccp_certificate) {
    const LsoccpCertificate& c = *rf.lsoccp_certificate;
    out << "certificate: class=" << to_string(c.cls)
        << " norm_M_minus_I=" << format_double(c.norm_M_minus_I)
        << " norm_Minv_minus_I=" << opt_value(c.norm_Minv_minus_I) << " beta_range=";
    if (c.beta_range) {
      out << format_double(c.beta_range->first) << ".." << format_double(c.beta_range->second);
    } else {
      out << "none";
    }
    out << " cond_product=" << opt_value(c.cond_product)
        << " beta_used=" << format_double(c.beta_used) << " rate_bound=" << opt_value(c.rate_bound)
        << " estimated=" << (c.eig_estimated ? "true" : "false") << "\n";
  }

  out << "residual_history: ";
  write_vector_line(out, rep.residual_history);
  out << "region_history:";
  for (ConeRegion r : rep.region_history) out << ' ' << to_string(r);
  out << "\n";
  out << "iterate_history:\n";
  for (const Eigen::VectorXd& x : rep.iterate_history) write_row(out, x);
  out << "final_x:\n";
  write_value_block(out, rep.final_x);

  if (rf.complementarity) {
    const ComplementaritySolution& s = *rf.complementarity;
    out << "complementarity: primal=" << format_double(s.primal_residual)
        << " dual=" << format_double(s.dual_residual) << " gap=" << format_double(s.gap) << "\n";
    out << "x_star:\n";
    write_value_block(out, s.x_star);
    out << "slack:\n";
    write_value_block(out, s.slack);
  }
  write_text_file(path, out.str());
}

ReportSummary validate_report_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
  LineCursor cur{in, path.string()};

  cur.expect_exact("soc-newton report v1");
  cur.expect_key("problem");
  const std::string kind = cur.expect_key("kind");
  if (kind != "pwls" && kind != "lsoccp") {
    throw ParseError("unknown report kind '" + kind + "'", cur.where());
  }

  ReportSummary sum;
  sum.status = cur.expect_key("status");
  static const std::set<std::string> kStatuses = {"SolutionFound", "MaxIterations",
                                                 "LinearSolveFailure"};
  if (!kStatuses.count(sum.status)) {
    throw ParseError("unknown status '" + sum.status + "'", cur.where());
  }
  sum.iterations = static_cast<int>(parse_integer(cur.expect_key("iterations"), cur.where()));
  if (sum.iterations < 0) throw ParseError("negative iteration count", cur.where());
  {
    const std::string v = cur.expect_key("stopped_by_v_fixpoint");
    if (v != "true" && v != "false") throw ParseError("expected true or false", cur.where());
  }
  parse_integer(cur.expect_key("failure_iteration"), cur.where());
  parse_double(cur.expect_key("tol"), cur.where());
  parse_integer(cur.expect_key("max_iter"), cur.where());
  parse_double(cur.expect_key("wall_time_ms"), cur.where());

  cur.require("certificate or history sections");
  if (cur.line.rfind("beta: ", 0) == 0) {
    parse_double(cur.value_for("beta"), cur.where());
    cur.require("certificate or history sections");
  }
  if (cur.line.rfind("certificate: ", 0) == 0) {
    sum.has_certificate = true;
    cur.require("residual_history");
  }

  const int expected = sum.iterations + 1;
  {
    const std::vector<std::string> toks = split_whitespace(cur.value_for("residual_history"));
    for (const std::string& t : toks) parse_double(t, cur.where());
    sum.residual_count = static_cast<int>(toks.size());
  }
  sum.region_count = static_cast<int>(split_whitespace(cur.expect_key("region_history")).size());
  if (sum.residual_count != expected || sum.region_count != expected) {
    throw ParseError("history lengths disagree with the iteration count", cur.where());
  }

  cur.expect_exact("iterate_history:");
  int width = -1;
  for (int i = 0; i < expected; ++i) {
    cur.require("iterate " + std::to_string(i));
    const std::vector<std::string> toks = split_whitespace(cur.line);
    for (const std::string& t : toks) parse_double(t, cur.where());
    if (width < 0) width = static_cast<int>(toks.size());
    if (static_cast<int>(toks.size()) != width) {
      throw ParseError("iterate rows have inconsistent lengths", cur.where());
    }
  }
  sum.iterate_count = expected;

  cur.expect_exact("final_x:");
  for (int i = 0; i < width; ++i) {
    cur.require("final_x value " + std::to_string(i + 1));
    const std::vector<std::string> toks = split_whitespace(cur.line);
    if (toks.size() != 1) throw ParseError("expected one value per final_x line", cur.where());
    parse_double(toks[0], cur.where());
  }
  sum.final_x_count = width;

  if (cur.next()) {
    if (cur.line.rfind("complementarity: ", 0) != 0) {
      throw ParseError("unexpected trailing content '" + cur.line + "'", cur.where());
    }
    cur.expect_exact("x_star:");
    for (int i = 0; i < width; ++i) cur.require("x_star value");
    cur.expect_exact("slack:");
    for (int i = 0; i < width; ++i) cur.require("slack value");
    if (cur.next()) throw ParseError("unexpected trailing content '" + cur.line + "'", cur.where());
  }
  return sum;
}

Eigen::VectorXd read_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (const std::string& tok : split_whitespace(line)) {
      values.push_back(parse_double(tok, path.string() + ":" + std::to_string(lineno)));
    }
  }
  if (values.empty()) throw ParseError("no values found", path.string());
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace socnewton
