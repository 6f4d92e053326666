#include <exception>
#include <functional>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dshock/error.hpp"

namespace dshock::cli {

namespace {

using Command = std::function<bool(const toml::Value&, const Options&, std::ostream&)>;

struct RawFlags {
  std::string config;
  std::string out = ".";
  std::string eps_min, eps_max;
  double tol = 0.0;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::vector<double> radii;
  std::string r2;
};

void add_common(CLI::App* sub, RawFlags& f) {
  sub->add_option("--config", f.config, "TOML scenario file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", f.out, "output directory (created if missing)");
  sub->add_option("--eps-min", f.eps_min, "smallest eps, dyadic: 2^-12 or 0.000244140625");
  sub->add_option("--eps-max", f.eps_max, "largest eps, dyadic");
  sub->add_option("--tol", f.tol, "verification tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1, 256));
  sub->add_option("--seed", f.seed, "seed for randomized runs");
  sub->add_option("--radii", f.radii, "asymptotic test-function radii")->expected(1, -1);
  sub->add_option("--r2", f.r2, "variant-B correction profile: centered or odd_pair");
}

Options resolve(const CLI::App* sub, const RawFlags& f) {
  Options o;
  o.config = f.config;
  o.out = f.out;
  o.jobs = f.jobs;
  if (sub->count("--eps-min")) o.eps_min_exp = parse_dyadic(f.eps_min);
  if (sub->count("--eps-max")) o.eps_max_exp = parse_dyadic(f.eps_max);
  if (sub->count("--tol")) o.tol = f.tol;
  if (sub->count("--seed")) o.seed = f.seed;
  if (sub->count("--radii")) o.radii = f.radii;
  if (sub->count("--r2")) o.r2 = f.r2;
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct and verify delta-shock solutions of 2x2 conservation laws", "dshock"};
  app.require_subcommand(1);
  RawFlags flags;
  const std::map<std::string, std::pair<const char*, Command>> commands{
      {"delta", {"generic delta shock from [data], with weak-form verification", cmd_delta}},
      {"riemann", {"Riemann solver for the Brio system", cmd_riemann}},
      {"asymptotic", {"eps-decay of the weak asymptotic families", cmd_asymptotic}},
      {"viscous", {"vanishing-viscosity run and concentration diagnostic", cmd_viscous}},
      {"curves", {"phase-plane wave curves through an anchor state", cmd_curves}},
      {"verify", {"weak-form verification of a solution file", cmd_verify}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    subs[name] = app.add_subcommand(name, entry.first);
    add_common(subs[name], flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      const Options opt = resolve(sub, flags);
      const toml::Value cfg = toml::parse_file(opt.config);
      const bool ok = commands.at(name).second(cfg, opt, out);
      if (!ok) err << "dshock " << name << ": a verification or invariant check failed\n";
      return ok ? kExitOk : kExitFailed;
    } catch (const Error& e) {
      err << "dshock " << name << ": " << e.what() << "\n";
      return e.code() == Errc::kParse ? kExitUsage : kExitError;
    } catch (const std::exception& e) {
      err << "dshock " << name << ": " << e.what() << "\n";
      return kExitError;
    }
  }
  return kExitUsage;
}

}  // namespace dshock::cli
