#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socnewton/probgen.hpp"
#include "socnewton/pwls.hpp"

// Batch benchmark runner. Generates seeded instances, solves each one, and
// aggregates a summary row in the style of a performance table: dimension,
// average condition number, solved count, average iterations, average time.
// Instances are independent jobs; a worker pool may run them concurrently,
// and results are keyed by instance index so output order is deterministic.

namespace socnewton {

enum class BenchSuite { kDense, kSparse, kSpd };

const char* to_string(BenchSuite suite);

struct BenchOptions {
  BenchSuite suite = BenchSuite::kDense;
  Eigen::Index n = 500;
  int count = 50;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency capped by count
  double tol = 1e-6;
  int max_iter = 20;
  double density = 0.004;       // sparse suite
  double target_cond = 1e4;     // sparse suite
  double lambda_min = 0.0;      // spd suite (open interval)
  double lambda_max = 1.0;
};

struct InstanceResult {
  int index = 0;
  std::uint64_t seed = 0;
  SolveStatus status = SolveStatus::kMaxIterations;
  int iterations = 0;
  double residual = 0.0;
  double cond = 0.0;
  double solve_time_s = 0.0;
};

struct BenchSummaryRow {
  std::string kind;
  Eigen::Index n = 0;
  double avg_cond = 0.0;
  int solved = 0;
  int total = 0;
  double solved_pct = 0.0;
  double avg_iters = 0.0;  // over solved instances
  double avg_time_s = 0.0;  // over solved instances
};

struct BenchRun {
  BenchSummaryRow summary;
  std::vector<InstanceResult> instances;
};

// Builds the GenSpec for instance `index` of a suite (seed derived from the
// suite seed), so tests and the CLI agree on what instance k means.
GenSpec suite_instance_spec(const BenchOptions& opts, int index);

BenchRun run_bench(const BenchOptions& opts);

// Per-region comparison: each instance is solved three times, once from a
// starting point in the interior of K, once from the interior of -K, and
// once from the region outside both cones.
struct RegionsRow {
  std::string region;
  int solved = 0;
  int total = 0;
  double avg_time_s = 0.0;  // over solved starts
};

struct RegionsRun {
  std::vector<RegionsRow> rows;  // always 3 rows, fixed order
  // Largest distance between final iterates of different starts on the same
  // instance, over instances where all three starts solved.
  double max_solution_spread = 0.0;
};

RegionsRun run_regions(const BenchOptions& opts);

// Rendering. The CSV pieces follow RFC-4180 quoting.
std::string format_summary_text(const BenchSummaryRow& row);
std::string summary_csv_header();
std::string summary_csv_row(const BenchSummaryRow& row);
std::string instance_csv_header();
std::string instance_csv_row(const InstanceResult& r);
std::string format_regions_text(const RegionsRun& run);

}  // namespace socnewton
