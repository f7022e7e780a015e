#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "socnewton/lsoccp.hpp"
#include "socnewton/matrix.hpp"
#include "socnewton/pwls.hpp"

// Problem and report files. Both are line-oriented text with a fixed section
// order, so writing a file that was just read reproduces it byte for byte.
//
// Problem format (canonical form):
//   soc-newton problem v1
//   kind: pwls                (or: lsoccp)
//   n: <dimension>
//   matrix: inline            (dense; followed by n rows of n values)
//   matrix: file <name>       (sparse; side file in Matrix Market format)
//   rhs:                      (followed by n values, one per line)
//   planted:                  (optional, n values)
//   provenance: <one line>    (optional, verbatim)
// All reals are printed with printf %.17g.
//
// Report format:
//   soc-newton report v1
//   problem: <path>
//   kind: pwls | lsoccp
//   status / iterations / stopped_by_v_fixpoint / failure_iteration
//   tol / max_iter / wall_time_ms
//   beta: <value>             (lsoccp only)
//   certificate: key=value pairs on one line
//   residual_history: <iterations+1 values on one line>
//   region_history: <iterations+1 region names on one line>
//   iterate_history:          (iterations+1 lines of n values)
//   final_x:                  (n values, one per line)
//   complementarity: key=value pairs (lsoccp only), then x_star: block

namespace socnewton {

enum class ProblemKind { kPwls, kLsoccp };

const char* to_string(ProblemKind kind);

struct ProblemFile {
  ProblemKind kind = ProblemKind::kPwls;
  Matrix matrix;  // T or M
  Eigen::VectorXd rhs;
  std::optional<Eigen::VectorXd> planted;
  std::optional<std::string> provenance;
};

// Sparse matrices go to a Matrix Market side file named after the problem
// file (extension .mtx, same directory, referenced by bare file name).
void write_problem_file(const std::filesystem::path& path, const ProblemFile& pf);
ProblemFile read_problem_file(const std::filesystem::path& path);

struct ReportFile {
  ProblemKind kind = ProblemKind::kPwls;
  std::string problem_path;
  double tol = 1e-6;
  int max_iter = 20;
  double wall_time_ms = 0.0;
  SolveReport report;
  std::optional<double> beta;
  std::optional<GuaranteeCertificate> pwls_certificate;
  std::optional<LsoccpCertificate> lsoccp_certificate;
  std::optional<ComplementaritySolution> complementarity;
};

void write_report_file(const std::filesystem::path& path, const ReportFile& rf);

// Parsed-back view of a report, used to check schema conformance.
struct ReportSummary {
  std::string status;
  int iterations = 0;
  int residual_count = 0;
  int region_count = 0;
  int iterate_count = 0;
  int final_x_count = 0;
  bool has_certificate = false;
};

// Parses a report file strictly; throws ParseError if any required section is
// missing, out of order, or inconsistent with the iteration count.
ReportSummary validate_report_file(const std::filesystem::path& path);

// Whitespace-separated reals from a text file (used for --x0 file:PATH).
Eigen::VectorXd read_vector_file(const std::filesystem::path& path);

}  // namespace socnewton
