#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "swiptrc/channel.hpp"
#include "swiptrc/protocols.hpp"

namespace swiptrc {

// What varies along the x axis. The first three walk the source power
// grid (they differ only in which column the reader plots); the line
// sweeps move the relay along the source-destination segment at fixed
// power; the heatmap scans relay coordinates over a square.
enum class Experiment {
  RateVsPower,
  GainVsPower,
  OptParamVsPower,
  RelayLineSweep,
  PositionHeatmap,
  BaselineComparison,
};

// One output curve. The Fixed variants pin one protocol parameter to the
// config value and optimize the rest; the NonSwipt rows are the budgeted
// baselines without power transfer.
enum class RowProtocol {
  Ideal,
  PS,
  TS,
  PSFixedRho,
  TSFixedAlpha2,
  Direct,
  NonSwiptRC,
  NonSwiptNoRC,
};

struct SweepConfig {
  Experiment experiment = Experiment::RateVsPower;
  std::vector<RowProtocol> protocols;
  std::vector<ReceivingMethod> methods;

  // Source power grid in dB (power sweeps) or the fixed power (others).
  double ps_db_start = 0.0;
  double ps_db_stop = 40.0;
  double ps_db_step = 2.0;
  double ps_db = 10.0;

  // Relay geometry for power sweeps, relative to a unit direct link.
  double zeta = 4.0 / 3.0;
  double theta = 3.141592653589793;
  double kappa = 4.0;
  double h_sd = 1.0;

  // Line sweeps: relay on the segment at distance ratio d from the source;
  // direct_link selects which direct-link variants to emit (on/off/both).
  double d_start = 0.1;
  double d_stop = 0.9;
  double d_step = 0.1;
  std::string direct_link = "on";

  // Heatmap: relay coordinates on an n-by-n grid over the given square,
  // source at (0,0), destination at (1,0).
  int grid_n = 41;
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;

  double eta = 1.0;
  double sigma_a2 = 1.0;
  double sigma_b2 = 1.0;
  double sigma_d2 = 2.0;
  double epsilon = 1e-3;

  double fixed_rho = 0.8;
  double fixed_alpha2 = 1.0 / 3.0;

  std::string out;  // default output path, overridable on the command line
};

// One table row. x1 (and x2 where two variables vary) hold the
// independent variables; every absent field stays empty in the output.
// Degenerate geometry (the relay on top of a node) keeps the row but
// leaves all dependent fields empty.
struct SweepRow {
  double x1 = 0.0;
  std::optional<double> x2;
  RowProtocol protocol = RowProtocol::Direct;
  std::optional<ReceivingMethod> method;
  std::optional<double> rate;
  std::optional<double> gain;
  std::optional<double> lambda;
  std::optional<double> rho;
  std::optional<std::array<double, 3>> alpha;
  std::optional<double> relay_pow;
  bool degenerate = false;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;
};

// Runs every protocol/method combination of the config at every grid
// point. Row order is deterministic and independent of the job count:
// points in grid order, protocols and methods in config order. Each row's
// rate is re-checked against its evaluator before being accepted.
SweepResult run_sweep(const SweepConfig& config, int jobs = 1);

// Fixed-schema CSV: header
// x1,x2,protocol,method,rate_nats,gain,lambda,rho,alpha1,alpha2,alpha3,relay_power
// with numbers rendered to 12 significant digits and absent fields empty.
std::string to_csv(const SweepResult& result);

// The same rows as an array of records, plus an echo of the config.
std::string to_json(const SweepResult& result);

// Writes CSV or JSON ("csv" / "json") to the path, creating parent
// directories is the caller's business. Throws std::runtime_error naming
// the path on I/O failure.
void emit(const SweepResult& result, const std::string& format,
          const std::string& path);

// Minimal flat config dialect: one `key = value` per line, values are
// numbers, booleans, double-quoted strings, or arrays of those; `#`
// starts a comment. Unknown keys are errors.
SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

// Applies a single `key=value` override on top of a parsed config.
void apply_override(SweepConfig& config, const std::string& assignment);

const char* to_label(RowProtocol p);
const char* to_label(ReceivingMethod m);

}  // namespace swiptrc
