#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mdi::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kNonConvergence = 3,
  kAuditFailure = 4,
  kVerifyFail = 5,
};

struct Options {
  std::optional<double> eps0;
  std::optional<double> tol;
  std::optional<std::size_t> levels;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
};

// Audit, solve, self-verify; the CSV goes to --output (report to `out`) or to
// `out` (report to `err`). A failed self-verification still writes both and
// returns kVerifyFail.
int cmd_solve(const std::string& problem_path, const Options& opts, std::ostream& out,
              std::ostream& err);
int cmd_verify(const std::string& trajectory_path, const std::string& problem_path,
               const Options& opts, std::ostream& out, std::ostream& err);
int cmd_convergence_table(const std::string& problem_path, const Options& opts, std::ostream& out,
                          std::ostream& err);
int cmd_dis_estimate(const std::string& problem_path, std::optional<double> from,
                     std::optional<double> to, std::size_t samples, const Options& opts,
                     std::ostream& out, std::ostream& err);
int cmd_audit(const std::string& problem_path, const Options& opts, std::ostream& out,
              std::ostream& err);

// Full command line, argv[0] included.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace mdi::cli
