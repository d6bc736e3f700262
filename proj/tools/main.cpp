// Command-line front end: solve one operating point, run a sweep config,
// or verify the fast solvers against the exhaustive reference maximizers.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "swiptrc/baselines.hpp"
#include "swiptrc/channel.hpp"
#include "swiptrc/optimizers.hpp"
#include "swiptrc/oracle.hpp"
#include "swiptrc/protocols.hpp"
#include "swiptrc/sweeps.hpp"

using namespace swiptrc;
using nlohmann::json;

namespace {

struct PointOptions {
  double ps_db = 10.0;
  double zeta = 4.0 / 3.0;
  double theta = 3.141592653589793;
  double kappa = 4.0;
  double h_sd = 1.0;
  std::optional<double> x;
  std::optional<double> y;
  double eta = 1.0;
  double sigma_a2 = 1.0;
  double sigma_b2 = 1.0;
  double sigma_d2 = 2.0;
  double epsilon = 1e-3;
};

void add_point_options(CLI::App* cmd, PointOptions& opt) {
  cmd->add_option("--ps-db", opt.ps_db, "source power in dB (linear power 10^(dB/10))");
  cmd->add_option("--zeta", opt.zeta, "relay distance ratio d_rd / d_sr");
  cmd->add_option("--theta", opt.theta, "angle at the relay between its two links, radians");
  cmd->add_option("--kappa", opt.kappa, "pathloss exponent");
  cmd->add_option("--h-sd", opt.h_sd, "direct-link power gain (0 disables the direct link)");
  cmd->add_option("--x", opt.x, "relay x coordinate; overrides the geometry flags");
  cmd->add_option("--y", opt.y, "relay y coordinate (source at 0,0, destination at 1,0)");
  cmd->add_option("--eta", opt.eta, "energy conversion efficiency");
  cmd->add_option("--sigma-a2", opt.sigma_a2, "relay antenna noise power");
  cmd->add_option("--sigma-b2", opt.sigma_b2, "relay conversion noise power");
  cmd->add_option("--sigma-d2", opt.sigma_d2, "destination noise power");
  cmd->add_option("--epsilon", opt.epsilon, "linear search step");
}

ChannelState channel_of(const PointOptions& opt) {
  GainPair g;
  if (opt.x || opt.y) {
    g = gains_from_coordinates(opt.x.value_or(0.5), opt.y.value_or(0.0),
                               opt.kappa);
  } else {
    g = gains_from_geometry({opt.zeta, opt.theta, opt.kappa});
  }
  return {opt.h_sd, g.g_sr, g.g_rd, opt.sigma_a2, opt.sigma_b2, opt.sigma_d2};
}

SystemParams system_of(const PointOptions& opt) {
  return {std::pow(10.0, opt.ps_db / 10.0), opt.eta, opt.epsilon};
}

ReceivingMethod method_of(const std::string& name) {
  if (name == "ia") return ReceivingMethod::InfoAccumulation;
  if (name == "ea") return ReceivingMethod::EnergyAccumulation;
  throw CLI::ValidationError("--method", "must be ia or ea");
}

const char* kind_label(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Ideal: return "ideal";
    case ProtocolKind::PowerSplitting: return "ps";
    case ProtocolKind::TimeSwitching: return "ts";
    case ProtocolKind::DirectLink: return "direct";
  }
  return "?";
}

json solution_to_json(const ProtocolSolution& sol) {
  json j;
  j["kind"] = kind_label(sol.kind);
  j["method"] = to_label(sol.method);
  j["rate_nats"] = sol.rate;
  j["lambda"] = sol.lambda ? json(*sol.lambda) : json(nullptr);
  j["rho"] = sol.rho ? json(*sol.rho) : json(nullptr);
  if (sol.alpha) {
    j["alpha"] = {(*sol.alpha)[0], (*sol.alpha)[1], (*sol.alpha)[2]};
  } else {
    j["alpha"] = nullptr;
  }
  j["relay_power"] = sol.relay_pow ? json(*sol.relay_pow) : json(nullptr);
  j["scan_evaluations"] = sol.diag.scan_evaluations;
  j["refine_evaluations"] = sol.diag.refine_evaluations;
  return j;
}

void print_solution_text(const ProtocolSolution& sol) {
  std::printf("kind          %s\n", kind_label(sol.kind));
  std::printf("method        %s\n", to_label(sol.method));
  std::printf("rate          %.12g nats\n", sol.rate);
  if (sol.lambda) std::printf("lambda        %.12g\n", *sol.lambda);
  if (sol.rho) std::printf("rho           %.12g\n", *sol.rho);
  if (sol.alpha) {
    std::printf("alpha         %.12g %.12g %.12g\n", (*sol.alpha)[0],
                (*sol.alpha)[1], (*sol.alpha)[2]);
  }
  if (sol.relay_pow) std::printf("relay power   %.12g\n", *sol.relay_pow);
}

json allocation_to_json(const BaselineAllocation& alloc,
                        const std::string& kind, const char* method) {
  json j;
  j["kind"] = kind;
  j["method"] = method;
  j["rate_nats"] = alloc.rate;
  j["lambda"] = alloc.lambda;
  j["source_power"] = alloc.p_s;
  j["relay_power"] = alloc.p_r;
  return j;
}

int run_solve(const PointOptions& opt, const std::string& protocol,
              const std::string& method_name, bool as_json, double fixed_rho,
              double fixed_alpha2) {
  const ChannelState ch = channel_of(opt);
  const SystemParams sys = system_of(opt);
  const ReceivingMethod method = method_of(method_name);

  if (protocol == "nonswipt_rc" || protocol == "nonswipt_norc") {
    const BaselineAllocation alloc =
        protocol == "nonswipt_rc"
            ? optimize_nonswipt_rc(ch, sys, method)
            : rate_nonswipt_norc(ch, sys);
    const char* mlabel =
        protocol == "nonswipt_norc" ? "ea" : to_label(method);
    if (as_json) {
      std::printf("%s\n", allocation_to_json(alloc, protocol, mlabel)
                              .dump(2)
                              .c_str());
    } else {
      std::printf("kind          %s\n", protocol.c_str());
      std::printf("method        %s\n", mlabel);
      std::printf("rate          %.12g nats\n", alloc.rate);
      std::printf("lambda        %.12g\n", alloc.lambda);
      std::printf("source power  %.12g\n", alloc.p_s);
      std::printf("relay power   %.12g\n", alloc.p_r);
    }
    return 0;
  }

  ProtocolSolution sol;
  if (protocol == "ideal") {
    sol = optimize_ideal(ch, sys, method);
  } else if (protocol == "ps") {
    sol = std::isnan(fixed_rho)
              ? optimize_ps(ch, sys, method)
              : optimize_ps_fixed_rho(fixed_rho, ch, sys, method);
  } else if (protocol == "ts") {
    sol = std::isnan(fixed_alpha2)
              ? optimize_ts(ch, sys, method)
              : optimize_ts_fixed_alpha2(fixed_alpha2, ch, sys, method);
  } else if (protocol == "direct") {
    sol.kind = ProtocolKind::DirectLink;
    sol.method = method;
    sol.rate = rate_direct(ch, sys);
  } else {
    throw CLI::ValidationError("--protocol",
                               "must be ideal, ps, ts, direct, nonswipt_rc "
                               "or nonswipt_norc");
  }
  if (as_json) {
    std::printf("%s\n", solution_to_json(sol).dump(2).c_str());
  } else {
    print_solution_text(sol);
  }
  return 0;
}

int run_verify(const PointOptions& opt, const std::string& protocol,
               const std::string& method_name, double resolution,
               double tolerance, bool as_json) {
  const ChannelState ch = channel_of(opt);
  const SystemParams sys = system_of(opt);
  const ReceivingMethod method = method_of(method_name);

  ProtocolSolution fast;
  ProtocolKind kind;
  if (protocol == "ideal") {
    kind = ProtocolKind::Ideal;
    fast = optimize_ideal(ch, sys, method);
  } else if (protocol == "ps") {
    kind = ProtocolKind::PowerSplitting;
    fast = optimize_ps(ch, sys, method);
  } else if (protocol == "ts") {
    kind = ProtocolKind::TimeSwitching;
    fast = optimize_ts(ch, sys, method);
  } else {
    throw CLI::ValidationError("--protocol", "must be ideal, ps or ts");
  }
  const ProtocolSolution ref =
      oracle::grid_max(kind, ch, sys, method, {resolution, true});
  const double err = std::fabs(fast.rate - ref.rate) /
                     std::max(1e-300, std::fabs(ref.rate));
  const bool ok = err <= tolerance;
  if (as_json) {
    json j;
    j["protocol"] = protocol;
    j["method"] = method_name;
    j["solver_rate"] = fast.rate;
    j["reference_rate"] = ref.rate;
    j["relative_error"] = err;
    j["tolerance"] = tolerance;
    j["match"] = ok;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("solver     %.12g nats\n", fast.rate);
    std::printf("reference  %.12g nats\n", ref.rate);
    std::printf("rel error  %.3e (tolerance %.1e)\n", err, tolerance);
    std::printf("%s\n", ok ? "MATCH" : "MISMATCH");
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate optimizer for wireless-powered rateless relaying"};
  app.require_subcommand(1);

  PointOptions solve_opt;
  std::string solve_protocol = "ideal";
  std::string solve_method = "ia";
  bool solve_json = false;
  double solve_rho = std::nan("");
  double solve_alpha2 = std::nan("");
  CLI::App* solve = app.add_subcommand(
      "solve", "optimize one operating point and print the solution");
  add_point_options(solve, solve_opt);
  solve->add_option("--protocol", solve_protocol,
                    "ideal, ps, ts, direct, nonswipt_rc or nonswipt_norc");
  solve->add_option("--method", solve_method, "receiving method, ia or ea");
  solve->add_option("--rho", solve_rho, "pin the power-splitting ratio");
  solve->add_option("--alpha2", solve_alpha2, "pin the harvest fraction");
  solve->add_flag("--json", solve_json, "print the solution as JSON");

  std::string sweep_config;
  std::vector<std::string> sweep_sets;
  std::string sweep_format = "csv";
  std::string sweep_out;
  int sweep_jobs = 1;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run an experiment config and write a data table");
  sweep->add_option("--config", sweep_config, "sweep config file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--set", sweep_sets,
                    "override a config key, e.g. --set ps_db_stop=20");
  sweep->add_option("--format", sweep_format, "csv or json");
  sweep->add_option("--out", sweep_out,
                    "output path; - or empty prints to stdout");
  sweep->add_option("--jobs", sweep_jobs, "worker threads");

  PointOptions verify_opt;
  std::string verify_protocol = "ideal";
  std::string verify_method = "ia";
  double verify_resolution = 1e-3;
  double verify_tolerance = 1e-3;
  bool verify_json = false;
  CLI::App* verify = app.add_subcommand(
      "verify",
      "cross-check a fast solver against the exhaustive grid reference");
  add_point_options(verify, verify_opt);
  verify->add_option("--protocol", verify_protocol, "ideal, ps or ts");
  verify->add_option("--method", verify_method, "receiving method, ia or ea");
  verify->add_option("--resolution", verify_resolution,
                     "reference grid resolution");
  verify->add_option("--tolerance", verify_tolerance,
                     "largest acceptable relative rate error");
  verify->add_flag("--json", verify_json, "print the comparison as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      return run_solve(solve_opt, solve_protocol, solve_method, solve_json,
                       solve_rho, solve_alpha2);
    }
    if (sweep->parsed()) {
      SweepConfig cfg = load_sweep_config(sweep_config);
      for (const std::string& assignment : sweep_sets) {
        apply_override(cfg, assignment);
      }
      const SweepResult result = run_sweep(cfg, sweep_jobs);
      std::string out = sweep_out.empty() ? cfg.out : sweep_out;
      if (out.empty() || out == "-") {
        const std::string payload =
            sweep_format == "json" ? to_json(result) : to_csv(result);
        if (sweep_format != "json" && sweep_format != "csv") {
          throw std::runtime_error("unknown output format: " + sweep_format);
        }
        std::fputs(payload.c_str(), stdout);
      } else {
        emit(result, sweep_format, out);
        std::fprintf(stderr, "wrote %zu rows to %s\n", result.rows.size(),
                     out.c_str());
      }
      return 0;
    }
    if (verify->parsed()) {
      return run_verify(verify_opt, verify_protocol, verify_method,
                        verify_resolution, verify_tolerance, verify_json);
    }
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 2;
  }
  return 0;
}
