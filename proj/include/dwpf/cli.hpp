#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dwpf {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a verification did not pass
inline constexpr int kExitUsage = 2;   // bad flags or violated preconditions
inline constexpr int kExitBudget = 3;  // enumeration node budget exceeded

/// Flags shared by the subcommands; unused ones are ignored.
struct CliConfig {
  std::string subcommand;
  std::optional<int> k;
  std::optional<int> L;
  std::optional<int> k_max;
  std::optional<int> L_max;
  std::string lambda = "1";
  bool lambda_given = false;
  std::string xs;
  std::string ys;
  std::optional<std::string> u;
  std::string method = "determinant";
  std::optional<std::string> format;
  std::uint64_t seed = 1;
  int draws = 5;
  std::optional<double> tolerance;
  std::optional<std::string> precision;  // falls back to DWPF_PRECISION, then f64
  std::uint64_t budget = 50'000'000;
  double genericity_tol = 1e-10;
  // enumerate
  bool count_only = false;
  bool asm_output = false;
  // verify
  std::string suite = "all";
  std::string lhs = "fused";
  std::string rhs = "brute_force";
  // weights
  std::string model = "fused";
  bool compare_table = false;
};

/// Parses argv and runs one subcommand, writing the payload to `out` and
/// diagnostics to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dwpf
