// Command-line front end: generate problem instances, solve problem files,
// and run benchmark / region-comparison batches.
//
// Exit codes: 0 success (for solve: SolutionFound), 1 solver did not reach a
// solution, 2 usage or input-file errors.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/program_options.hpp>

#include "socnewton/bench.hpp"
#include "socnewton/errors.hpp"
#include "socnewton/lsoccp.hpp"
#include "socnewton/probgen.hpp"
#include "socnewton/problem_io.hpp"
#include "socnewton/pwls.hpp"
#include "socnewton/rng.hpp"
#include "socnewton/textio.hpp"

namespace po = boost::program_options;
namespace fs = std::filesystem;
using namespace socnewton;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotSolved = 1;
constexpr int kExitUsage = 2;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void print_usage(std::ostream& out) {
  out << "usage: soc_newton <command> [options]\n"
         "\n"
         "commands:\n"
         "  gen      generate seeded problem files\n"
         "  solve    solve one problem file and write a report\n"
         "  bench    generate and solve a batch, print a summary table\n"
         "  regions  compare starting points from the three regions\n"
         "\n"
         "run 'soc_newton <command> --help' for the options of a command.\n";
}

int threads_default() {
  const char* env = std::getenv("SOC_NEWTON_THREADS");
  if (!env || !*env) return 0;
  try {
    return static_cast<int>(parse_integer(env, "SOC_NEWTON_THREADS"));
  } catch (const ParseError&) {
    std::cerr << "warning: ignoring non-numeric SOC_NEWTON_THREADS\n";
    return 0;
  }
}

// Shared flag handling: returns true if --help was printed.
bool parse_or_help(const po::options_description& desc, const std::vector<std::string>& args,
                   const std::string& command, po::variables_map& vm) {
  po::store(po::command_line_parser(args).options(desc).run(), vm);
  if (vm.count("help")) {
    std::cout << "usage: soc_newton " << command << " [options]\n" << desc;
    return true;
  }
  po::notify(vm);
  return false;
}

GenKind parse_gen_kind(const std::string& s) {
  if (s == "dense") return GenKind::kDense;
  if (s == "sparse") return GenKind::kSparse;
  if (s == "spd") return GenKind::kSpdDense;
  if (s == "lsoccp") return GenKind::kDense;  // M family; see cmd_gen
  throw po::error("unknown --kind '" + s + "' (expected dense|sparse|spd|lsoccp)");
}

BenchSuite parse_suite(const std::string& s, bool allow_spd) {
  if (s == "dense") return BenchSuite::kDense;
  if (s == "sparse") return BenchSuite::kSparse;
  if (allow_spd && s == "spd") return BenchSuite::kSpd;
  throw po::error("unknown --suite '" + s + "'");
}

int cmd_gen(const std::vector<std::string>& args) {
  std::string kind_str;
  int n = 0;
  int count = 1;
  std::uint64_t seed = 0;
  double density = 0.004;
  double target_cond = 1e4;
  std::string out_dir = ".";

  po::options_description desc("options");
  desc.add_options()                                                       //
      ("help", "show this help")                                           //
      ("kind", po::value(&kind_str)->required(), "dense|sparse|spd|lsoccp")  //
      ("n", po::value(&n)->required(), "problem dimension")                //
      ("seed", po::value(&seed)->required(), "base seed")                  //
      ("count", po::value(&count), "number of instances (default 1)")      //
      ("density", po::value(&density), "sparse density (default 0.004)")   //
      ("target-cond", po::value(&target_cond), "sparse condition target")  //
      ("out", po::value(&out_dir), "output directory (default .)");
  po::variables_map vm;
  if (parse_or_help(desc, args, "gen", vm)) return kExitOk;

  const bool lsoccp = kind_str == "lsoccp";
  const GenKind kind = parse_gen_kind(kind_str);
  if (count < 1) throw po::error("--count must be at least 1");
  fs::create_directories(out_dir);

  for (int i = 0; i < count; ++i) {
    GenSpec spec;
    spec.n = n;
    spec.kind = kind;
    spec.seed = rng::derive_seed(seed, static_cast<std::uint64_t>(i));
    spec.density = density;
    spec.target_cond = target_cond;

    ProblemFile pf;
    if (lsoccp) {
      LsoccpProblem p = gen_lsoccp(spec);
      pf.kind = ProblemKind::kLsoccp;
      pf.matrix = std::move(p.M);
      pf.rhs = std::move(p.q);
    } else {
      PwlsProblem p = spec.kind == GenKind::kDense    ? gen_dense(spec)
                      : spec.kind == GenKind::kSparse ? gen_sparse(spec)
                                                      : gen_spd(spec);
      pf.kind = ProblemKind::kPwls;
      pf.matrix = std::move(p.T);
      pf.rhs = std::move(p.b);
      pf.planted = std::move(p.planted_solution);
    }
    std::ostringstream prov;
    prov << "gen kind=" << kind_str << " n=" << n << " seed=" << seed << " index=" << i
         << " instance_seed=" << spec.seed;
    if (kind_str == "sparse") prov << " density=" << density << " target_cond=" << target_cond;
    pf.provenance = prov.str();

    std::ostringstream name;
    name << kind_str << "_n" << n << "_seed" << seed << "_" << i << ".prob";
    const fs::path path = fs::path(out_dir) / name.str();
    write_problem_file(path, pf);
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

StartStrategy parse_x0(const std::string& s, Eigen::VectorXd* given) {
  if (s == "tsolve") return StartStrategy::kSolveLinear;
  if (s == "zero") return StartStrategy::kZero;
  if (s.rfind("file:", 0) == 0) {
    *given = read_vector_file(s.substr(5));
    return StartStrategy::kGiven;
  }
  throw po::error("--x0 must be tsolve, zero, or file:PATH");
}

BetaChoice parse_beta(const std::string& s) {
  if (s == "auto") return BetaChoice::auto_spd();
  if (s == "one") return BetaChoice::one();
  return BetaChoice::explicit_value(parse_double(s, "--beta"));
}

int cmd_solve(const std::vector<std::string>& args) {
  std::string problem_path;
  double tol = 1e-6;
  int max_iter = 20;
  std::string x0_str = "tsolve";
  std::string beta_str = "one";
  std::string report_path;

  po::options_description desc("options");
  desc.add_options()                                                            //
      ("help", "show this help")                                                //
      ("problem", po::value(&problem_path)->required(), "problem file")         //
      ("tol", po::value(&tol), "residual tolerance (default 1e-6)")             //
      ("max-iter", po::value(&max_iter), "iteration cap (default 20)")          //
      ("x0", po::value(&x0_str), "start: tsolve|zero|file:PATH")                //
      ("beta", po::value(&beta_str), "lsoccp scaling: auto|one|VALUE")          //
      ("report", po::value(&report_path), "report path (default PROBLEM.report)");
  po::variables_map vm;
  if (parse_or_help(desc, args, "solve", vm)) return kExitOk;

  const ProblemFile pf = read_problem_file(problem_path);
  if (report_path.empty()) {
    report_path = fs::path(problem_path).replace_extension(".report").string();
  }

  SolveOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  opts.x0_strategy = parse_x0(x0_str, &opts.x0);

  ReportFile rf;
  rf.kind = pf.kind;
  rf.problem_path = problem_path;
  rf.tol = tol;
  rf.max_iter = max_iter;

  std::ostringstream line;
  if (pf.kind == ProblemKind::kPwls) {
    const PwlsProblem prob{pf.matrix, pf.rhs, pf.planted};
    const Clock::time_point t0 = Clock::now();
    rf.report = newton_solve(prob, opts);
    rf.wall_time_ms = ms_since(t0);
    rf.pwls_certificate = certificate(prob);
    line << "pwls status=" << to_string(rf.report.status)
         << " certificate=" << to_string(rf.pwls_certificate->cls);
  } else {
    const LsoccpProblem prob{pf.matrix, pf.rhs};
    const BetaChoice beta = parse_beta(beta_str);
    const Clock::time_point t0 = Clock::now();
    auto [rep, sol] = lsoccp_newton_solve(prob, beta, opts);
    rf.wall_time_ms = ms_since(t0);
    rf.report = std::move(rep);
    rf.beta = resolve_beta(prob, beta);
    rf.lsoccp_certificate = lsoccp_certificate(prob, beta);
    line << "lsoccp status=" << to_string(rf.report.status)
         << " certificate=" << to_string(rf.lsoccp_certificate->cls)
         << " beta=" << format_double(*rf.beta);
    if (rf.report.status == SolveStatus::kSolutionFound) {
      line << " gap=" << format_double(sol.gap);
      rf.complementarity = std::move(sol);
    }
  }
  write_report_file(report_path, rf);

  line << " iterations=" << rf.report.iterations
       << " residual=" << format_double(rf.report.residual_history.back())
       << " time_ms=" << std::fixed << std::setprecision(3) << rf.wall_time_ms
       << " report=" << report_path;
  std::cout << line.str() << "\n";
  return rf.report.status == SolveStatus::kSolutionFound ? kExitOk : kExitNotSolved;
}

void add_batch_options(po::options_description& desc, std::string* suite, int* n, int* count,
                       std::uint64_t* seed, int* threads, double* tol, int* max_iter,
                       double* density, double* target_cond) {
  desc.add_options()                                                            //
      ("help", "show this help")                                                //
      ("suite", po::value(suite)->required(), "instance family")                //
      ("n", po::value(n)->required(), "problem dimension")                      //
      ("count", po::value(count)->required(), "number of instances")            //
      ("seed", po::value(seed)->required(), "base seed")                        //
      ("threads", po::value(threads), "worker threads (default: all cores)")    //
      ("tol", po::value(tol), "residual tolerance (default 1e-6)")              //
      ("max-iter", po::value(max_iter), "iteration cap (default 20)")           //
      ("density", po::value(density), "sparse density (default 0.004)")         //
      ("target-cond", po::value(target_cond), "sparse condition target");
}

BenchOptions batch_options(const std::string& suite, bool allow_spd, int n, int count,
                           std::uint64_t seed, int threads, double tol, int max_iter,
                           double density, double target_cond) {
  BenchOptions opts;
  opts.suite = parse_suite(suite, allow_spd);
  opts.n = n;
  opts.count = count;
  opts.seed = seed;
  opts.threads = threads;
  opts.tol = tol;
  opts.max_iter = max_iter;
  opts.density = density;
  opts.target_cond = target_cond;
  return opts;
}

int cmd_bench(const std::vector<std::string>& args) {
  std::string suite;
  int n = 0, count = 0, threads = threads_default(), max_iter = 20;
  std::uint64_t seed = 0;
  double tol = 1e-6, density = 0.004, target_cond = 1e4;
  std::string out_dir = ".";

  po::options_description desc("options");
  add_batch_options(desc, &suite, &n, &count, &seed, &threads, &tol, &max_iter, &density,
                    &target_cond);
  desc.add_options()("out", po::value(&out_dir), "CSV output directory (default .)");
  po::variables_map vm;
  if (parse_or_help(desc, args, "bench", vm)) return kExitOk;

  const BenchOptions opts =
      batch_options(suite, true, n, count, seed, threads, tol, max_iter, density, target_cond);
  const BenchRun run = run_bench(opts);

  std::cout << format_summary_text(run.summary);
  std::cout << summary_csv_header() << "\n" << summary_csv_row(run.summary) << "\n";

  fs::create_directories(out_dir);
  std::ostringstream stem;
  stem << "bench_" << suite << "_n" << n;
  const fs::path summary_path = fs::path(out_dir) / (stem.str() + "_summary.csv");
  const fs::path instances_path = fs::path(out_dir) / (stem.str() + "_instances.csv");
  {
    std::ofstream out(summary_path);
    out << summary_csv_header() << "\n" << summary_csv_row(run.summary) << "\n";
  }
  {
    std::ofstream out(instances_path);
    out << instance_csv_header() << "\n";
    for (const InstanceResult& r : run.instances) out << instance_csv_row(r) << "\n";
  }
  std::cout << "wrote " << summary_path.string() << " and " << instances_path.string() << "\n";
  return kExitOk;
}

int cmd_regions(const std::vector<std::string>& args) {
  std::string suite;
  int n = 0, count = 0, threads = threads_default(), max_iter = 20;
  std::uint64_t seed = 0;
  double tol = 1e-6, density = 0.004, target_cond = 1e4;

  po::options_description desc("options");
  add_batch_options(desc, &suite, &n, &count, &seed, &threads, &tol, &max_iter, &density,
                    &target_cond);
  po::variables_map vm;
  if (parse_or_help(desc, args, "regions", vm)) return kExitOk;

  const BenchOptions opts =
      batch_options(suite, false, n, count, seed, threads, tol, max_iter, density, target_cond);
  std::cout << format_regions_text(run_regions(opts));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_usage(std::cerr);
    return kExitUsage;
  }
  const std::string command = argv[1];
  const std::vector<std::string> args(argv + 2, argv + argc);
  if (command == "--help" || command == "help") {
    print_usage(std::cout);
    return kExitOk;
  }

  try {
    if (command == "gen") return cmd_gen(args);
    if (command == "solve") return cmd_solve(args);
    if (command == "bench") return cmd_bench(args);
    if (command == "regions") return cmd_regions(args);
    std::cerr << "error: unknown command '" << command << "'\n";
    print_usage(std::cerr);
    return kExitUsage;
  } catch (const po::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidSpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotSolved;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotSolved;
  }
}
