#include "swiptrc/sweeps.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "swiptrc/baselines.hpp"
#include "swiptrc/optimizers.hpp"

namespace swiptrc {
namespace {

struct Point {
  double x1 = 0.0;
  std::optional<double> x2;
  bool degenerate = false;
  ChannelState ch;
  SystemParams sys;
};

using Combo = std::pair<RowProtocol, std::optional<ReceivingMethod>>;

void validate_config(const SweepConfig& cfg) {
  if (cfg.protocols.empty()) {
    throw std::runtime_error("sweep config selects no protocols");
  }
  if (cfg.methods.empty()) {
    throw std::runtime_error("sweep config selects no receiving methods");
  }
  if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 0.5)) {
    throw std::runtime_error("sweep config epsilon outside (0, 0.5]");
  }
  const bool power_sweep = cfg.experiment == Experiment::RateVsPower ||
                           cfg.experiment == Experiment::GainVsPower ||
                           cfg.experiment == Experiment::OptParamVsPower;
  if (power_sweep && !(cfg.ps_db_step > 0.0 && cfg.ps_db_stop >= cfg.ps_db_start)) {
    throw std::runtime_error("sweep config power grid is empty or reversed");
  }
  const bool line_sweep = cfg.experiment == Experiment::RelayLineSweep ||
                          cfg.experiment == Experiment::BaselineComparison;
  if (line_sweep) {
    if (!(cfg.d_step > 0.0 && cfg.d_stop >= cfg.d_start) ||
        !(cfg.d_start > 0.0 && cfg.d_stop < 1.0)) {
      throw std::runtime_error(
          "sweep config line grid must stay strictly between the nodes");
    }
    if (cfg.direct_link != "on" && cfg.direct_link != "off" &&
        cfg.direct_link != "both") {
      throw std::runtime_error("sweep config direct_link must be on, off or both");
    }
  }
  if (cfg.experiment == Experiment::PositionHeatmap && cfg.grid_n < 2) {
    throw std::runtime_error("sweep config heatmap grid needs at least 2 points");
  }
}

SystemParams system_at(const SweepConfig& cfg, double p_s) {
  SystemParams sys;
  sys.p_s = p_s;
  sys.eta = cfg.eta;
  sys.epsilon = cfg.epsilon;
  return sys;
}

ChannelState channel_from(const SweepConfig& cfg, const GainPair& g,
                          double h_sd) {
  ChannelState ch;
  ch.h_sd = h_sd;
  ch.h_sr = g.g_sr;
  ch.h_rd = g.g_rd;
  ch.sigma_a2 = cfg.sigma_a2;
  ch.sigma_b2 = cfg.sigma_b2;
  ch.sigma_d2 = cfg.sigma_d2;
  return ch;
}

std::vector<Point> build_points(const SweepConfig& cfg) {
  std::vector<Point> points;
  switch (cfg.experiment) {
    case Experiment::RateVsPower:
    case Experiment::GainVsPower:
    case Experiment::OptParamVsPower: {
      const GainPair g =
          gains_from_geometry({cfg.zeta, cfg.theta, cfg.kappa});
      const long n = static_cast<long>(
          std::floor((cfg.ps_db_stop - cfg.ps_db_start) / cfg.ps_db_step +
                     1e-9)) + 1;
      points.reserve(n);
      for (long i = 0; i < n; ++i) {
        Point pt;
        pt.x1 = cfg.ps_db_start + static_cast<double>(i) * cfg.ps_db_step;
        pt.ch = channel_from(cfg, g, cfg.h_sd);
        pt.sys = system_at(cfg, std::pow(10.0, pt.x1 / 10.0));
        points.push_back(pt);
      }
      break;
    }
    case Experiment::RelayLineSweep:
    case Experiment::BaselineComparison: {
      std::vector<double> h_sd_variants;
      if (cfg.direct_link == "on") h_sd_variants = {cfg.h_sd};
      if (cfg.direct_link == "off") h_sd_variants = {0.0};
      if (cfg.direct_link == "both") h_sd_variants = {cfg.h_sd, 0.0};
      const long n = static_cast<long>(
          std::floor((cfg.d_stop - cfg.d_start) / cfg.d_step + 1e-9)) + 1;
      const double p_s = std::pow(10.0, cfg.ps_db / 10.0);
      for (long i = 0; i < n; ++i) {
        const double d = cfg.d_start + static_cast<double>(i) * cfg.d_step;
        const GainPair g = gains_from_coordinates(d, 0.0, cfg.kappa);
        for (double h : h_sd_variants) {
          Point pt;
          pt.x1 = d;
          if (cfg.direct_link == "both") pt.x2 = h;
          pt.ch = channel_from(cfg, g, h);
          pt.sys = system_at(cfg, p_s);
          points.push_back(pt);
        }
      }
      break;
    }
    case Experiment::PositionHeatmap: {
      const double p_s = std::pow(10.0, cfg.ps_db / 10.0);
      const double dx = (cfg.x_max - cfg.x_min) / (cfg.grid_n - 1);
      const double dy = (cfg.y_max - cfg.y_min) / (cfg.grid_n - 1);
      points.reserve(static_cast<size_t>(cfg.grid_n) * cfg.grid_n);
      for (int i = 0; i < cfg.grid_n; ++i) {
        const double x = cfg.x_min + i * dx;
        for (int j = 0; j < cfg.grid_n; ++j) {
          const double y = cfg.y_min + j * dy;
          Point pt;
          pt.x1 = x;
          pt.x2 = y;
          pt.sys = system_at(cfg, p_s);
          try {
            pt.ch = channel_from(cfg, gains_from_coordinates(x, y, cfg.kappa),
                                 cfg.h_sd);
          } catch (const std::domain_error&) {
            pt.degenerate = true;
          }
          points.push_back(pt);
        }
      }
      break;
    }
  }
  return points;
}

// Direct and the no-rateless baseline do not depend on the receiving
// method, so they contribute one row per point instead of one per method.
std::vector<Combo> build_combos(const SweepConfig& cfg) {
  std::vector<Combo> combos;
  for (RowProtocol p : cfg.protocols) {
    if (p == RowProtocol::Direct) {
      combos.emplace_back(p, std::nullopt);
    } else if (p == RowProtocol::NonSwiptNoRC) {
      combos.emplace_back(p, ReceivingMethod::EnergyAccumulation);
    } else {
      for (ReceivingMethod m : cfg.methods) combos.emplace_back(p, m);
    }
  }
  return combos;
}

void verify_rate(const ProtocolSolution& sol, const ChannelState& ch,
                 const SystemParams& sys) {
  double expect;
  switch (sol.kind) {
    case ProtocolKind::Ideal:
      expect = rate_ideal(*sol.lambda, sol.method, coefficients(ch, sys));
      break;
    case ProtocolKind::PowerSplitting:
      expect = rate_ps(*sol.lambda, *sol.rho, sol.method, ch, sys);
      break;
    case ProtocolKind::TimeSwitching:
      expect = rate_ts(*sol.alpha, sol.method, ch, sys);
      break;
    case ProtocolKind::DirectLink:
    default:
      expect = rate_direct(ch, sys);
      break;
  }
  if (std::fabs(expect - sol.rate) > 1e-9 * std::max(1.0, std::fabs(sol.rate))) {
    throw std::logic_error("sweep row failed its rate re-verification");
  }
}

SweepRow make_row(const Point& pt, const Combo& combo,
                  const SweepConfig& cfg) {
  SweepRow row;
  row.x1 = pt.x1;
  row.x2 = pt.x2;
  row.protocol = combo.first;
  row.method = combo.second;
  if (pt.degenerate) {
    row.degenerate = true;
    return row;
  }

  const double c_sd = std::log1p(pt.sys.p_s * pt.ch.h_sd / pt.ch.sigma_d2);
  auto set_gain = [&](double rate) {
    if (c_sd > 0.0) row.gain = rate / c_sd;
  };

  switch (combo.first) {
    case RowProtocol::Direct: {
      row.rate = rate_direct(pt.ch, pt.sys);
      set_gain(*row.rate);
      return row;
    }
    case RowProtocol::NonSwiptRC: {
      const BaselineAllocation alloc =
          optimize_nonswipt_rc(pt.ch, pt.sys, *combo.second);
      if (std::fabs(rate_budgeted(alloc.lambda, alloc.p_s, alloc.p_r,
                                  *combo.second, pt.ch) - alloc.rate) >
          1e-9 * std::max(1.0, alloc.rate)) {
        throw std::logic_error("sweep row failed its rate re-verification");
      }
      row.rate = alloc.rate;
      row.lambda = alloc.lambda;
      row.relay_pow = alloc.p_r;
      set_gain(alloc.rate);
      return row;
    }
    case RowProtocol::NonSwiptNoRC: {
      const BaselineAllocation alloc = rate_nonswipt_norc(pt.ch, pt.sys);
      row.rate = alloc.rate;
      row.lambda = alloc.lambda;
      row.relay_pow = alloc.p_r;
      set_gain(alloc.rate);
      return row;
    }
    default:
      break;
  }

  ProtocolSolution sol;
  switch (combo.first) {
    case RowProtocol::Ideal:
      sol = optimize_ideal(pt.ch, pt.sys, *combo.second);
      break;
    case RowProtocol::PS:
      sol = optimize_ps(pt.ch, pt.sys, *combo.second);
      break;
    case RowProtocol::TS:
      sol = optimize_ts(pt.ch, pt.sys, *combo.second);
      break;
    case RowProtocol::PSFixedRho:
      sol = optimize_ps_fixed_rho(cfg.fixed_rho, pt.ch, pt.sys, *combo.second);
      break;
    case RowProtocol::TSFixedAlpha2:
      sol = optimize_ts_fixed_alpha2(cfg.fixed_alpha2, pt.ch, pt.sys,
                                     *combo.second);
      break;
    default:
      throw std::logic_error("unhandled protocol row");
  }
  verify_rate(sol, pt.ch, pt.sys);
  row.rate = sol.rate;
  row.lambda = sol.lambda;
  row.rho = sol.rho;
  row.alpha = sol.alpha;
  row.relay_pow = sol.relay_pow;
  set_gain(sol.rate);
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config, int jobs) {
  validate_config(config);
  const std::vector<Point> points = build_points(config);
  const std::vector<Combo> combos = build_combos(config);

  SweepResult result;
  result.config = config;
  result.rows.resize(points.size() * combos.size());

  auto work_point = [&](size_t p) {
    for (size_t c = 0; c < combos.size(); ++c) {
      result.rows[p * combos.size() + c] = make_row(points[p], combos[c], config);
    }
  };

  if (jobs <= 1 || points.size() <= 1) {
    for (size_t p = 0; p < points.size(); ++p) work_point(p);
    return result;
  }

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const size_t n_workers =
      std::min<size_t>(static_cast<size_t>(jobs), points.size());
  std::vector<std::thread> workers;
  workers.reserve(n_workers);
  for (size_t w = 0; w < n_workers; ++w) {
    workers.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const size_t p = next.fetch_add(1);
        if (p >= points.size()) break;
        try {
          work_point(p);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

}  // namespace swiptrc
