#include "socnewton/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "socnewton/errors.hpp"
#include "socnewton/spectral.hpp"
#include "socnewton/textio.hpp"

namespace socnewton {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// sigma_max / sigma_min. One decomposition for dense input; the sparse path
// uses the iterative estimators.
double cond_estimate(const Matrix& a) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.is_dense()) {
    if (a.is_symmetric()) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(a.dense_data()),
                                                        Eigen::EigenvaluesOnly);
      const Eigen::VectorXd mags = es.eigenvalues().cwiseAbs();
      const double lo = mags.minCoeff();
      return lo > 0.0 ? mags.maxCoeff() / lo : kInf;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(a.dense_data()));
    const Eigen::VectorXd& sv = svd.singularValues();
    const double lo = sv[sv.size() - 1];
    return lo > 0.0 ? sv[0] / lo : kInf;
  }
  const double lo = sigma_min(a);
  return lo > 0.0 ? op_norm_2(a) / lo : kInf;
}

int resolve_threads(int requested, int count) {
  const int cap = std::max(count, 1);
  if (requested > 0) return std::min(requested, cap);
  const unsigned hc = std::thread::hardware_concurrency();
  return std::clamp(hc ? static_cast<int>(hc) : 1, 1, cap);
}

PwlsProblem generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenKind::kDense:
      return gen_dense(spec);
    case GenKind::kSparse:
      return gen_sparse(spec);
    case GenKind::kSpdDense:
      return gen_spd(spec);
  }
  throw InvalidInputError("unknown generator kind");
}

// Runs job(i) for i in [0, count) on `threads` workers. The first exception
// is rethrown on the calling thread after all workers join.
void parallel_for(int count, int threads, const std::function<void(int)>& job) {
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string format_count(int solved, int total) {
  std::ostringstream out;
  out << solved << '/' << total;
  return out.str();
}

}  // namespace

const char* to_string(BenchSuite suite) {
  switch (suite) {
    case BenchSuite::kDense:
      return "dense";
    case BenchSuite::kSparse:
      return "sparse";
    case BenchSuite::kSpd:
      return "spd";
  }
  return "?";
}

GenSpec suite_instance_spec(const BenchOptions& opts, int index) {
  GenSpec spec;
  spec.n = static_cast<int>(opts.n);
  spec.seed = rng::derive_seed(opts.seed, static_cast<std::uint64_t>(index));
  spec.density = opts.density;
  spec.target_cond = opts.target_cond;
  spec.lambda_min = opts.lambda_min;
  spec.lambda_max = opts.lambda_max;
  switch (opts.suite) {
    case BenchSuite::kDense:
      spec.kind = GenKind::kDense;
      break;
    case BenchSuite::kSparse:
      spec.kind = GenKind::kSparse;
      break;
    case BenchSuite::kSpd:
      spec.kind = GenKind::kSpdDense;
      break;
  }
  return spec;
}

BenchRun run_bench(const BenchOptions& opts) {
  if (opts.count < 1) throw InvalidInputError("instance count must be at least 1");
  BenchRun run;
  run.instances.resize(static_cast<std::size_t>(opts.count));

  SolveOptions sopts;
  sopts.tol = opts.tol;
  sopts.max_iter = opts.max_iter;

  const int threads = resolve_threads(opts.threads, opts.count);
  parallel_for(opts.count, threads, [&](int i) {
    const GenSpec spec = suite_instance_spec(opts, i);
    const PwlsProblem prob = generate(spec);

    InstanceResult& r = run.instances[static_cast<std::size_t>(i)];
    r.index = i;
    r.seed = spec.seed;
    r.cond = cond_estimate(prob.T);

    const Clock::time_point t0 = Clock::now();
    const SolveReport rep = newton_solve(prob, sopts);
    r.solve_time_s = seconds_since(t0);
    r.status = rep.status;
    r.iterations = rep.iterations;
    r.residual = rep.residual_history.back();
  });

  BenchSummaryRow& row = run.summary;
  row.kind = to_string(opts.suite);
  row.n = opts.n;
  row.total = opts.count;
  double cond_sum = 0.0, iter_sum = 0.0, time_sum = 0.0;
  for (const InstanceResult& r : run.instances) {
    cond_sum += r.cond;
    if (r.status == SolveStatus::kSolutionFound) {
      ++row.solved;
      iter_sum += r.iterations;
      time_sum += r.solve_time_s;
    }
  }
  row.avg_cond = cond_sum / row.total;
  row.solved_pct = 100.0 * row.solved / row.total;
  if (row.solved > 0) {
    row.avg_iters = iter_sum / row.solved;
    row.avg_time_s = time_sum / row.solved;
  }
  return run;
}

RegionsRun run_regions(const BenchOptions& opts) {
  if (opts.count < 1) throw InvalidInputError("instance count must be at least 1");
  if (opts.n < 2) throw InvalidInputError("region starts need dimension at least 2");

  static const ConeRegion kRegions[3] = {ConeRegion::kInteriorCone, ConeRegion::kInteriorPolar,
                                         ConeRegion::kOutside};

  struct StartOutcome {
    bool solved = false;
    double time_s = 0.0;
    Eigen::VectorXd x;
  };
  std::vector<std::array<StartOutcome, 3>> outcomes(static_cast<std::size_t>(opts.count));

  SolveOptions base;
  base.tol = opts.tol;
  base.max_iter = opts.max_iter;

  const int threads = resolve_threads(opts.threads, opts.count);
  parallel_for(opts.count, threads, [&](int i) {
    const GenSpec spec = suite_instance_spec(opts, i);
    const PwlsProblem prob = generate(spec);
    const Eigen::Index n = prob.b.size();

    rng::Xoshiro256pp gen = rng::make_stream(spec.seed, rng::Site::kStartPoints);
    Eigen::VectorXd tail(n - 1);
    double r = 0.0;
    do {
      for (Eigen::Index j = 0; j < n - 1; ++j) tail[j] = gen.uniform(-10.0, 10.0);
      r = tail.norm();
    } while (r == 0.0);

    // One first coordinate per region: strictly above the cone boundary,
    // strictly below the polar boundary, and a strict convex combination.
    const double heads[3] = {r + 1.0 + 9.0 * gen.uniform01_open(),
                             -r - 1.0 - 9.0 * gen.uniform01_open(),
                             -r + gen.uniform01_open() * 2.0 * r};

    for (int s = 0; s < 3; ++s) {
      Eigen::VectorXd x0(n);
      x0[0] = heads[s];
      x0.tail(n - 1) = tail;
      if (classify(SocVector(x0)) != kRegions[s]) {
        throw Error("region start construction produced the wrong region");
      }
      SolveOptions sopts = base;
      sopts.x0_strategy = StartStrategy::kGiven;
      sopts.x0 = std::move(x0);

      const Clock::time_point t0 = Clock::now();
      const SolveReport rep = newton_solve(prob, sopts);
      StartOutcome& out = outcomes[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
      out.time_s = seconds_since(t0);
      out.solved = rep.status == SolveStatus::kSolutionFound;
      out.x = rep.final_x;
    }
  });

  RegionsRun run;
  for (int s = 0; s < 3; ++s) {
    RegionsRow row;
    row.region = to_string(kRegions[s]);
    row.total = opts.count;
    double time_sum = 0.0;
    for (const auto& inst : outcomes) {
      if (inst[static_cast<std::size_t>(s)].solved) {
        ++row.solved;
        time_sum += inst[static_cast<std::size_t>(s)].time_s;
      }
    }
    if (row.solved > 0) row.avg_time_s = time_sum / row.solved;
    run.rows.push_back(std::move(row));
  }
  for (const auto& inst : outcomes) {
    if (!(inst[0].solved && inst[1].solved && inst[2].solved)) continue;
    const double spread = std::max({(inst[0].x - inst[1].x).norm(), (inst[0].x - inst[2].x).norm(),
                                    (inst[1].x - inst[2].x).norm()});
    run.max_solution_spread = std::max(run.max_solution_spread, spread);
  }
  return run;
}

std::string format_summary_text(const BenchSummaryRow& row) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "suite" << std::right << std::setw(6) << "n" << std::setw(12)
      << "avg_cond" << std::setw(16) << "solved" << std::setw(11) << "avg_iters" << std::setw(12)
      << "avg_time_s" << "\n";
  out << std::left << std::setw(8) << row.kind << std::right << std::setw(6) << row.n;
  out << std::setw(12) << std::setprecision(4) << std::scientific << row.avg_cond;
  std::ostringstream solved;
  solved << format_count(row.solved, row.total) << " (" << std::fixed << std::setprecision(1)
         << row.solved_pct << "%)";
  out << std::setw(16) << solved.str();
  out << std::setw(11) << std::fixed << std::setprecision(2) << row.avg_iters;
  out << std::setw(12) << std::setprecision(4) << row.avg_time_s << "\n";
  return out.str();
}

std::string summary_csv_header() { return "kind,n,avg_cond,solved,solved_pct,avg_iters,avg_time_s"; }

std::string summary_csv_row(const BenchSummaryRow& row) {
  std::ostringstream out;
  out << csv_quote(row.kind) << ',' << row.n << ',' << format_double(row.avg_cond) << ','
      << row.solved << ',' << format_double(row.solved_pct) << ',' << format_double(row.avg_iters)
      << ',' << format_double(row.avg_time_s);
  return out.str();
}

std::string instance_csv_header() { return "index,seed,status,iterations,residual,cond,time_s"; }

std::string instance_csv_row(const InstanceResult& r) {
  std::ostringstream out;
  out << r.index << ',' << r.seed << ',' << csv_quote(to_string(r.status)) << ',' << r.iterations
      << ',' << format_double(r.residual) << ',' << format_double(r.cond) << ','
      << format_double(r.solve_time_s);
  return out.str();
}

std::string format_regions_text(const RegionsRun& run) {
  std::ostringstream out;
  out << std::left << std::setw(15) << "region" << std::right << std::setw(10) << "solved"
      << std::setw(12) << "avg_time_s" << "\n";
  for (const RegionsRow& row : run.rows) {
    out << std::left << std::setw(15) << row.region << std::right << std::setw(10)
        << format_count(row.solved, row.total) << std::setw(12) << std::fixed
        << std::setprecision(4) << row.avg_time_s << "\n";
  }
  out << "max solution spread across starts: " << std::scientific << std::setprecision(3)
      << run.max_solution_spread << "\n";
  return out.str();
}

}  // namespace socnewton
