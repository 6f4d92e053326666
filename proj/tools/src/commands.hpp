#ifndef DSHOCK_TOOLS_COMMANDS_HPP_
#define DSHOCK_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dshock/flux.hpp"
#include "dshock/singular_solution.hpp"
#include "dshock/state.hpp"
#include "toml.hpp"

namespace dshock::cli {

// Exit statuses of the dshock executable.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a verification or invariant failed
inline constexpr int kExitUsage = 2;   // command line or config error
inline constexpr int kExitError = 3;   // any other library error

// Command-line overrides shared by every subcommand. Unset optionals fall back
// to the [run] table, then to the command default.
struct Options {
  std::string config;
  std::filesystem::path out = ".";
  std::optional<int> eps_min_exp;  // eps_min = 2^-k
  std::optional<int> eps_max_exp;
  std::optional<double> tol;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> radii;
  std::optional<std::string> r2;
};

// "2^-12", "2^(-12)" or a decimal power of two in (0, 1]; returns k with the
// value 2^-k. Anything else throws kParse.
int parse_dyadic(const std::string& text);

// [flux]: name = "brio", or polynomial tables f = [[coef, pu, pv], ...] and g.
FluxPair flux_from_config(const toml::Value& cfg);
bool is_brio(const toml::Value& cfg);
// [data]: left = [u, v], right = [u, v], x0 = 0.
RiemannData data_from_config(const toml::Value& cfg);

// TOML text of a solution with constant background regions and straight
// arcs, readable by solution_from_config.
std::string solution_to_toml(const FluxPair& flux, const SingularSolution& sol);
SingularSolution solution_from_config(const toml::Value& cfg);

// Each command writes its files below opt.out, prints a summary to `log`
// and returns false when a verification or invariant check failed.
bool cmd_delta(const toml::Value& cfg, const Options& opt, std::ostream& log);
bool cmd_riemann(const toml::Value& cfg, const Options& opt, std::ostream& log);
bool cmd_asymptotic(const toml::Value& cfg, const Options& opt, std::ostream& log);
bool cmd_viscous(const toml::Value& cfg, const Options& opt, std::ostream& log);
bool cmd_curves(const toml::Value& cfg, const Options& opt, std::ostream& log);
bool cmd_verify(const toml::Value& cfg, const Options& opt, std::ostream& log);

// Full command-line entry point; returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dshock::cli

#endif  // DSHOCK_TOOLS_COMMANDS_HPP_
