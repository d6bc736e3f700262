#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "swiptrc/sweeps.hpp"

namespace swiptrc {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Cuts a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_quote = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quote = !in_quote;
    if (line[i] == '#' && !in_quote) return line.substr(0, i);
  }
  return line;
}

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("sweep config: " + what);
}

double parse_number(const std::string& v, const std::string& key) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') {
    fail("value of '" + key + "' is not a number: " + v);
  }
  return x;
}

// Accepts "quoted" or bare-word strings (bare words keep --set terse).
std::string parse_string(const std::string& v, const std::string& key) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return v.substr(1, v.size() - 2);
  }
  if (!v.empty() && v.find('"') == std::string::npos) return v;
  fail("value of '" + key + "' is not a string: " + v);
}

std::vector<std::string> parse_string_array(const std::string& v,
                                            const std::string& key) {
  std::string body = v;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') fail("unterminated array for '" + key + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<std::string> items;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    items.push_back(parse_string(item, key));
  }
  return items;
}

Experiment parse_experiment(const std::string& v) {
  if (v == "rate_vs_power") return Experiment::RateVsPower;
  if (v == "gain_vs_power") return Experiment::GainVsPower;
  if (v == "opt_param_vs_power") return Experiment::OptParamVsPower;
  if (v == "relay_line_sweep") return Experiment::RelayLineSweep;
  if (v == "position_heatmap") return Experiment::PositionHeatmap;
  if (v == "baseline_comparison") return Experiment::BaselineComparison;
  fail("unknown experiment: " + v);
}

RowProtocol parse_protocol(const std::string& v) {
  if (v == "ideal") return RowProtocol::Ideal;
  if (v == "ps") return RowProtocol::PS;
  if (v == "ts") return RowProtocol::TS;
  if (v == "ps_fixed_rho") return RowProtocol::PSFixedRho;
  if (v == "ts_fixed_alpha2") return RowProtocol::TSFixedAlpha2;
  if (v == "direct") return RowProtocol::Direct;
  if (v == "nonswipt_rc") return RowProtocol::NonSwiptRC;
  if (v == "nonswipt_norc") return RowProtocol::NonSwiptNoRC;
  fail("unknown protocol: " + v);
}

ReceivingMethod parse_method(const std::string& v) {
  if (v == "ia") return ReceivingMethod::InfoAccumulation;
  if (v == "ea") return ReceivingMethod::EnergyAccumulation;
  fail("unknown receiving method: " + v);
}

void apply_key(SweepConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "experiment") {
    cfg.experiment = parse_experiment(parse_string(value, key));
  } else if (key == "protocols") {
    cfg.protocols.clear();
    for (const auto& p : parse_string_array(value, key)) {
      cfg.protocols.push_back(parse_protocol(p));
    }
  } else if (key == "methods") {
    cfg.methods.clear();
    for (const auto& m : parse_string_array(value, key)) {
      cfg.methods.push_back(parse_method(m));
    }
  } else if (key == "ps_db_start") {
    cfg.ps_db_start = parse_number(value, key);
  } else if (key == "ps_db_stop") {
    cfg.ps_db_stop = parse_number(value, key);
  } else if (key == "ps_db_step") {
    cfg.ps_db_step = parse_number(value, key);
  } else if (key == "ps_db") {
    cfg.ps_db = parse_number(value, key);
  } else if (key == "zeta") {
    cfg.zeta = parse_number(value, key);
  } else if (key == "theta") {
    cfg.theta = parse_number(value, key);
  } else if (key == "kappa") {
    cfg.kappa = parse_number(value, key);
  } else if (key == "h_sd") {
    cfg.h_sd = parse_number(value, key);
  } else if (key == "d_start") {
    cfg.d_start = parse_number(value, key);
  } else if (key == "d_stop") {
    cfg.d_stop = parse_number(value, key);
  } else if (key == "d_step") {
    cfg.d_step = parse_number(value, key);
  } else if (key == "direct_link") {
    cfg.direct_link = parse_string(value, key);
  } else if (key == "grid_n") {
    cfg.grid_n = static_cast<int>(parse_number(value, key));
  } else if (key == "x_min") {
    cfg.x_min = parse_number(value, key);
  } else if (key == "x_max") {
    cfg.x_max = parse_number(value, key);
  } else if (key == "y_min") {
    cfg.y_min = parse_number(value, key);
  } else if (key == "y_max") {
    cfg.y_max = parse_number(value, key);
  } else if (key == "eta") {
    cfg.eta = parse_number(value, key);
  } else if (key == "sigma_a2") {
    cfg.sigma_a2 = parse_number(value, key);
  } else if (key == "sigma_b2") {
    cfg.sigma_b2 = parse_number(value, key);
  } else if (key == "sigma_d2") {
    cfg.sigma_d2 = parse_number(value, key);
  } else if (key == "epsilon") {
    cfg.epsilon = parse_number(value, key);
  } else if (key == "fixed_rho") {
    cfg.fixed_rho = parse_number(value, key);
  } else if (key == "fixed_alpha2") {
    cfg.fixed_alpha2 = parse_number(value, key);
  } else if (key == "out") {
    cfg.out = parse_string(value, key);
  } else {
    fail("unknown key: " + key);
  }
}

std::string render(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string render(const std::optional<double>& v) {
  return v ? render(*v) : std::string();
}

nlohmann::json json_opt(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

const char* to_label(RowProtocol p) {
  switch (p) {
    case RowProtocol::Ideal: return "ideal";
    case RowProtocol::PS: return "ps";
    case RowProtocol::TS: return "ts";
    case RowProtocol::PSFixedRho: return "ps_fixed_rho";
    case RowProtocol::TSFixedAlpha2: return "ts_fixed_alpha2";
    case RowProtocol::Direct: return "direct";
    case RowProtocol::NonSwiptRC: return "nonswipt_rc";
    case RowProtocol::NonSwiptNoRC: return "nonswipt_norc";
  }
  return "?";
}

const char* to_label(ReceivingMethod m) {
  return m == ReceivingMethod::InfoAccumulation ? "ia" : "ea";
}

namespace {

const char* to_label(Experiment e) {
  switch (e) {
    case Experiment::RateVsPower: return "rate_vs_power";
    case Experiment::GainVsPower: return "gain_vs_power";
    case Experiment::OptParamVsPower: return "opt_param_vs_power";
    case Experiment::RelayLineSweep: return "relay_line_sweep";
    case Experiment::PositionHeatmap: return "position_heatmap";
    case Experiment::BaselineComparison: return "baseline_comparison";
  }
  return "?";
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig cfg;
  cfg.protocols = {RowProtocol::Ideal};
  cfg.methods = {ReceivingMethod::InfoAccumulation};
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail("line " + std::to_string(lineno) + " is not 'key = value'");
    }
    apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read sweep config: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

void apply_override(SweepConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    fail("override is not 'key=value': " + assignment);
  }
  apply_key(config, trim(assignment.substr(0, eq)),
            trim(assignment.substr(eq + 1)));
}

std::string to_csv(const SweepResult& result) {
  std::string out =
      "x1,x2,protocol,method,rate_nats,gain,lambda,rho,alpha1,alpha2,alpha3,"
      "relay_power\n";
  for (const SweepRow& row : result.rows) {
    out += render(row.x1);
    out += ',';
    out += render(row.x2);
    out += ',';
    out += to_label(row.protocol);
    out += ',';
    if (row.method) out += to_label(*row.method);
    out += ',';
    out += render(row.rate);
    out += ',';
    out += render(row.gain);
    out += ',';
    out += render(row.lambda);
    out += ',';
    out += render(row.rho);
    out += ',';
    if (row.alpha) {
      out += render((*row.alpha)[0]);
      out += ',';
      out += render((*row.alpha)[1]);
      out += ',';
      out += render((*row.alpha)[2]);
    } else {
      out += ",,";
    }
    out += ',';
    out += render(row.relay_pow);
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  nlohmann::json j;
  const SweepConfig& cfg = result.config;
  nlohmann::json jc;
  jc["experiment"] = to_label(cfg.experiment);
  {
    nlohmann::json arr = nlohmann::json::array();
    for (RowProtocol p : cfg.protocols) arr.push_back(to_label(p));
    jc["protocols"] = arr;
  }
  {
    nlohmann::json arr = nlohmann::json::array();
    for (ReceivingMethod m : cfg.methods) arr.push_back(to_label(m));
    jc["methods"] = arr;
  }
  jc["ps_db_start"] = cfg.ps_db_start;
  jc["ps_db_stop"] = cfg.ps_db_stop;
  jc["ps_db_step"] = cfg.ps_db_step;
  jc["ps_db"] = cfg.ps_db;
  jc["zeta"] = cfg.zeta;
  jc["theta"] = cfg.theta;
  jc["kappa"] = cfg.kappa;
  jc["h_sd"] = cfg.h_sd;
  jc["d_start"] = cfg.d_start;
  jc["d_stop"] = cfg.d_stop;
  jc["d_step"] = cfg.d_step;
  jc["direct_link"] = cfg.direct_link;
  jc["grid_n"] = cfg.grid_n;
  jc["x_min"] = cfg.x_min;
  jc["x_max"] = cfg.x_max;
  jc["y_min"] = cfg.y_min;
  jc["y_max"] = cfg.y_max;
  jc["eta"] = cfg.eta;
  jc["sigma_a2"] = cfg.sigma_a2;
  jc["sigma_b2"] = cfg.sigma_b2;
  jc["sigma_d2"] = cfg.sigma_d2;
  jc["epsilon"] = cfg.epsilon;
  jc["fixed_rho"] = cfg.fixed_rho;
  jc["fixed_alpha2"] = cfg.fixed_alpha2;
  jc["out"] = cfg.out;
  j["config"] = jc;

  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : result.rows) {
    nlohmann::json r;
    r["x1"] = row.x1;
    r["x2"] = json_opt(row.x2);
    r["protocol"] = to_label(row.protocol);
    r["method"] = row.method ? nlohmann::json(to_label(*row.method))
                             : nlohmann::json(nullptr);
    r["rate_nats"] = json_opt(row.rate);
    r["gain"] = json_opt(row.gain);
    r["lambda"] = json_opt(row.lambda);
    r["rho"] = json_opt(row.rho);
    if (row.alpha) {
      r["alpha1"] = (*row.alpha)[0];
      r["alpha2"] = (*row.alpha)[1];
      r["alpha3"] = (*row.alpha)[2];
    } else {
      r["alpha1"] = nullptr;
      r["alpha2"] = nullptr;
      r["alpha3"] = nullptr;
    }
    r["relay_power"] = json_opt(row.relay_pow);
    r["degenerate"] = row.degenerate;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void emit(const SweepResult& result, const std::string& format,
          const std::string& path) {
  std::string payload;
  if (format == "csv") {
    payload = to_csv(result);
  } else if (format == "json") {
    payload = to_json(result);
  } else {
    throw std::runtime_error("unknown output format: " + format);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << payload;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace swiptrc
