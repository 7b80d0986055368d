#include "mdi_cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "mdi/errors.hpp"
#include "mdi/problem_file.hpp"
#include "mdi/solver.hpp"
#include "mdi/trajectory_csv.hpp"
#include "mdi/verifier.hpp"
#include "mdi/vladimirov.hpp"

namespace mdi::cli {
namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const NonConvergenceError& e) {
    err << "non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const BoundViolation& e) {
    err << "hypothesis violated during solve: " << e.what() << "\n";
    return kAuditFailure;
  } catch (const DomainError& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

ProblemFile load(const std::string& path, const Options& opts) {
  ProblemFile file = load_problem(path);
  if (opts.eps0) file.solver.eps0 = *opts.eps0;
  if (opts.levels) file.solver.max_levels = *opts.levels;
  if (opts.seed) file.solver.seed = *opts.seed;
  if (!(file.solver.eps0 > 0.0)) throw ParseError("--eps0 must be positive");
  if (file.solver.max_levels == 0) throw ParseError("--levels must be at least 1");
  return file;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string vec(const Point& p) {
  std::ostringstream os;
  os << std::setprecision(10) << '(';
  for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p(i);
  return os.str() + ')';
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << contents;
  if (!f) throw std::runtime_error("failed writing " + path);
}

double oracle_error(const Trajectory& traj, OracleKind kind) {
  double err = 0.0;
  for (double t : traj.partition().nodes) {
    err = std::max(err, (traj.at(t) - reference_solution(kind, traj.problem(), t)).norm());
  }
  return err;
}

}  // namespace

int cmd_solve(const std::string& problem_path, const Options& opts, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile file = load(problem_path, opts);
    AuditOptions audit_opts;
    audit_opts.seed = file.solver.seed;
    const HypothesisAudit audit = audit_hypotheses(*file.problem, audit_opts);
    if (!audit.pass()) {
      err << "hypothesis audit failed\n" << format_audit(audit);
      return static_cast<int>(kAuditFailure);
    }
    SolveOptions so;
    so.eps0 = file.solver.eps0;
    so.max_levels = file.solver.max_levels;
    so.tol = opts.tol.value_or(file.solver.tol);
    SolveResult result = solve(file.problem, so);

    const double vtol = default_verification_tol(*file.problem, result.report.final_eps);
    const VerificationReport v =
        check_inclusion(result.trajectory, *file.problem, ZSampler(file.solver.seed), vtol);
    result.report.verification =
        VerificationSummary{v.pass, v.tol, v.worst_slack, v.worst_domain_distance};

    std::ostringstream report;
    if (!file.name.empty()) report << "problem: " << file.name << "\n";
    report << "seed: " << file.solver.seed << "\n" << format_audit(audit)
           << format_report(result.report);
    const std::string csv = trajectory_csv(result.trajectory);
    if (opts.output) {
      write_file(*opts.output, csv);
      out << report.str();
    } else {
      out << csv;
      err << report.str();
    }
    return static_cast<int>(v.pass ? kOk : kVerifyFail);
  });
}

int cmd_verify(const std::string& trajectory_path, const std::string& problem_path,
               const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile file = load(problem_path, opts);
    std::ifstream in(trajectory_path, std::ios::binary);
    if (!in) throw ParseError(trajectory_path + ": cannot open file");
    const TrajectoryTable table = parse_trajectory_csv(in, file.problem->dimension());
    const Trajectory traj = reconstruct_trajectory(table, file.problem);
    const double tol =
        opts.tol.value_or(default_verification_tol(*file.problem, traj.partition().eps));
    const VerificationReport r =
        check_inclusion(traj, *file.problem, ZSampler(file.solver.seed), tol);
    out << format_verification(r);
    return static_cast<int>(r.pass ? kOk : kVerifyFail);
  });
}

int cmd_convergence_table(const std::string& problem_path, const Options& opts, std::ostream& out,
                          std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile file = load(problem_path, opts);
    const ProblemPtr& problem = file.problem;
    const AprioriConstants bounds = a_priori_bounds(*problem);
    const std::size_t levels = file.solver.max_levels;
    std::vector<Trajectory> trajs;
    for (std::size_t k = 0; k < levels; ++k) {
      const double eps = file.solver.eps0 * std::ldexp(1.0, -static_cast<int>(k));
      trajs.push_back(run_scheme(problem, build_partition(problem->rho(), eps, problem->horizon()), bounds));
    }
    std::optional<Trajectory> fine;
    if (file.oracle) {
      out << "reference: closed form (" << to_string(*file.oracle) << ")\n";
    } else {
      const double eps = file.solver.eps0 * std::ldexp(1.0, -static_cast<int>(levels + 2));
      fine.emplace(run_scheme(problem, build_partition(problem->rho(), eps, problem->horizon()), bounds));
      out << "reference: fine solve at eps " << fmt(eps) << "\n";
    }
    out << "level eps cells gap error ratio\n";
    double prev_error = std::nan("");
    for (std::size_t k = 0; k < levels; ++k) {
      const Trajectory& tr = trajs[k];
      const double gap = k == 0 ? std::nan("") : sup_distance(tr, trajs[k - 1]);
      const double error = file.oracle ? oracle_error(tr, *file.oracle) : sup_distance(tr, *fine);
      const double ratio = (k == 0 || !(prev_error > 0.0)) ? std::nan("") : error / prev_error;
      out << k << ' ' << fmt(tr.partition().eps) << ' ' << tr.partition().cells() << ' ' << fmt(gap)
          << ' ' << fmt(error) << ' ' << fmt(ratio) << "\n";
      prev_error = error;
    }
    return static_cast<int>(kOk);
  });
}

int cmd_dis_estimate(const std::string& problem_path, std::optional<double> from,
                     std::optional<double> to, std::size_t samples, const Options& opts,
                     std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile file = load(problem_path, opts);
    const OperatorFamily& family = file.problem->family();
    const double s = from.value_or(0.0);
    const double t = to.value_or(family.horizon());
    if (!(s >= 0.0 && s <= t && t <= family.horizon())) {
      throw DomainError("dis-estimate: need 0 <= --from <= --to <= T");
    }
    const GraphSample at_t = sample_graph(family, t, samples, file.solver.seed);
    const GraphSample at_s = sample_graph(family, s, samples, file.solver.seed);
    const DisEstimate d = dis_lower_bound(at_t, at_s);
    const double increment = family.rho_certificate().rho_measure({s, t});
    out << std::setprecision(17);
    out << "dis(A(" << t << "), A(" << s << ")) >= " << d.value << "\n";
    out << "attained by (x, y) = " << vec(at_t.pairs[d.a_index].x) << ", "
        << vec(at_t.pairs[d.a_index].y) << " in Gr A(" << t << ")\n";
    out << "        and (x', y') = " << vec(at_s.pairs[d.b_index].x) << ", "
        << vec(at_s.pairs[d.b_index].y) << " in Gr A(" << s << ")\n";
    out << "rho(t) - rho(s) = " << increment << ", margin " << increment - d.value << "\n";
    out << "samples " << at_t.pairs.size() << " x " << at_s.pairs.size() << ", seed "
        << file.solver.seed << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_audit(const std::string& problem_path, const Options& opts, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile file = load(problem_path, opts);
    AuditOptions audit_opts;
    audit_opts.seed = file.solver.seed;
    const HypothesisAudit audit = audit_hypotheses(*file.problem, audit_opts);
    out << format_audit(audit) << (audit.pass() ? "audit PASS\n" : "audit FAIL\n");
    return static_cast<int>(audit.pass() ? kOk : kAuditFailure);
  });
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Catching-up solver and verifier for measure differential inclusions", "mdi"};
  app.require_subcommand(1);

  Options opts;
  double eps0 = 0.0;
  double tol = 0.0;
  std::size_t levels = 0;
  std::uint64_t seed = 0;
  std::string output;
  auto common = [&](CLI::App* sub, bool with_output) {
    sub->add_option("--eps0", eps0, "initial mesh eps_0");
    sub->add_option("--tol", tol, "tolerance (Cauchy gap for solve, slack for verify)");
    sub->add_option("--levels", levels, "number of refinement levels");
    sub->add_option("--seed", seed, "seed for audits and verification sampling");
    if (with_output) sub->add_option("--output", output, "output file");
  };

  std::string problem;
  std::string trajectory;
  double from = 0.0;
  double to = 0.0;
  std::size_t samples = 48;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a problem file and write the trajectory CSV");
  solve_cmd->add_option("problem", problem, "problem file")->required();
  common(solve_cmd, true);

  CLI::App* verify_cmd = app.add_subcommand("verify", "verify a trajectory CSV against a problem file");
  verify_cmd->add_option("trajectory", trajectory, "trajectory CSV")->required();
  verify_cmd->add_option("problem", problem, "problem file")->required();
  common(verify_cmd, false);

  CLI::App* table_cmd = app.add_subcommand("convergence-table", "per-level gaps and errors");
  table_cmd->add_option("problem", problem, "problem file")->required();
  common(table_cmd, false);

  CLI::App* dis_cmd = app.add_subcommand("dis-estimate", "sampled lower bound on dis(A(t), A(s))");
  dis_cmd->add_option("problem", problem, "problem file")->required();
  dis_cmd->add_option("--from", from, "s (default 0)");
  dis_cmd->add_option("--to", to, "t (default T)");
  dis_cmd->add_option("--samples", samples, "graph probe points per operator");
  common(dis_cmd, false);

  CLI::App* audit_cmd = app.add_subcommand("audit", "audit the operator, perturbation and initial state");
  audit_cmd->add_option("problem", problem, "problem file")->required();
  common(audit_cmd, false);

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const std::string& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    CLI::App* active = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << active->help();
    return kParseError;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--eps0")) opts.eps0 = eps0;
  if (sub->count("--tol")) opts.tol = tol;
  if (sub->count("--levels")) opts.levels = levels;
  if (sub->count("--seed")) opts.seed = seed;
  if (sub->get_option_no_throw("--output") && sub->count("--output")) opts.output = output;

  if (opts.tol && !(*opts.tol > 0.0)) {
    err << "--tol must be positive\n";
    return kParseError;
  }
  if (sub == solve_cmd) return cmd_solve(problem, opts, out, err);
  if (sub == verify_cmd) return cmd_verify(trajectory, problem, opts, out, err);
  if (sub == table_cmd) return cmd_convergence_table(problem, opts, out, err);
  if (sub == dis_cmd) {
    return cmd_dis_estimate(problem, dis_cmd->count("--from") ? std::optional(from) : std::nullopt,
                            dis_cmd->count("--to") ? std::optional(to) : std::nullopt, samples,
                            opts, out, err);
  }
  return cmd_audit(problem, opts, out, err);
}

}  // namespace mdi::cli
