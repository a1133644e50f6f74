#include "dipp/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "dipp/errors.hpp"

namespace dipp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits on whitespace and on any of `seps`.
std::vector<std::string> split(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == '\t' || seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_real(const std::string& text, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + text + "' is not a number");
  }
  if (pos != text.size() || !std::isfinite(v)) throw ConfigError(key + ": '" + text + "' is not a number");
  return v;
}

std::uint64_t to_count(const std::string& text, const std::string& key) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  if (text.empty() || text.front() == '-') throw ConfigError(key + ": '" + text + "' is not a count");
  try {
    v = std::stoull(text, &pos, 0);
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + text + "' is not a count");
  }
  if (pos != text.size()) throw ConfigError(key + ": '" + text + "' is not a count");
  return v;
}

bool to_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(key + ": '" + text + "' is not a boolean");
}

template <typename F>
auto rethrow_as_config(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

std::string TopologySpec::name() const {
  switch (kind) {
    case TopologyKind::ring: return "ring";
    case TopologyKind::complete: return "complete";
    case TopologyKind::watts_strogatz: return "watts_strogatz";
  }
  return "unknown";
}

std::string TopologySpec::text() const {
  switch (kind) {
    case TopologyKind::ring: return "ring:" + std::to_string(degree_or_q);
    case TopologyKind::complete: return "complete";
    case TopologyKind::watts_strogatz: {
      std::ostringstream s;
      s << "watts_strogatz:" << degree_or_q << ',' << p_rewire;
      return s.str();
    }
  }
  return "unknown";
}

NetworkTopology TopologySpec::build(std::size_t node_count, Rng& rng) const {
  switch (kind) {
    case TopologyKind::ring: return build_ring(node_count, degree_or_q);
    case TopologyKind::complete: return build_complete(node_count);
    case TopologyKind::watts_strogatz:
      return build_watts_strogatz(node_count, degree_or_q, p_rewire, rng);
  }
  throw InvalidArgument("unknown topology kind");
}

TopologySpec parse_topology_spec(const std::string& text) {
  const std::string t = trim(text);
  TopologySpec s;
  const auto colon = t.find(':');
  const std::string head = t.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : t.substr(colon + 1);
  const std::string key = "topology '" + t + "'";
  if (head == "complete" && args.empty()) {
    s.kind = TopologyKind::complete;
    s.degree_or_q = 0;
    return s;
  }
  if (head == "ring" && !args.empty()) {
    s.kind = TopologyKind::ring;
    s.degree_or_q = to_count(args, key);
    if (s.degree_or_q < 1) throw ConfigError(key + ": degree must be at least 1");
    return s;
  }
  if (head == "watts_strogatz" || head == "ws") {
    const auto parts = split(args, ",");
    if (parts.size() != 2) throw ConfigError(key + ": expected watts_strogatz:q,p");
    s.kind = TopologyKind::watts_strogatz;
    s.degree_or_q = to_count(parts[0], key);
    s.p_rewire = to_real(parts[1], key);
    if (s.degree_or_q < 1 || s.p_rewire < 0.0 || s.p_rewire > 1.0) {
      throw ConfigError(key + ": need q >= 1 and 0 <= p <= 1");
    }
    return s;
  }
  throw ConfigError("unknown " + key + " (expected ring:d, complete or watts_strogatz:q,p)");
}

std::string to_string(Algorithm a) { return a == Algorithm::sp ? "sp" : "dipp"; }

Algorithm parse_algorithm(const std::string& text) {
  if (text == "sp") return Algorithm::sp;
  if (text == "dipp") return Algorithm::dipp;
  throw ConfigError("unknown algorithm '" + text + "' (expected sp or dipp)");
}

std::size_t ExperimentConfig::measurements(std::size_t alpha_index) const {
  const double alpha = alphas.at(alpha_index);
  const double m = alpha * static_cast<double>(N);
  const double rounded = std::round(m);
  if (std::abs(m - rounded) > 1e-9 * std::max(1.0, m)) {
    std::ostringstream s;
    s << "alpha = " << alpha << " gives non-integer M = alpha*N = " << m;
    throw ConfigError(s.str());
  }
  return static_cast<std::size_t>(rounded);
}

void ExperimentConfig::validate() const {
  if (alphas.empty()) throw ConfigError("sweep.alpha: no values");
  if (smnr_db.empty()) throw ConfigError("sweep.smnr_db: no values");
  if (algorithms.empty()) throw ConfigError("sweep.algorithms: no values");
  if (trials() < 1) throw ConfigError("trials: need at least one matrix and one data realization");
  if (workers < 1) throw ConfigError("run.workers must be at least 1");
  if (experiment_id.empty() || experiment_id.find_first_of(",\n\r\"") != std::string::npos) {
    throw ConfigError("run.experiment_id must be non-empty without commas, quotes or newlines");
  }
  bool needs_topology = false;
  for (Algorithm a : algorithms) needs_topology = needs_topology || a == Algorithm::dipp;
  if (needs_topology && topologies.empty()) throw ConfigError("sweep.topology: no values");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] < 1.0)) throw ConfigError("sweep.alpha values must lie in (0, 1)");
    ScenarioConfig sc;
    sc.N = N;
    sc.M = measurements(i);
    sc.J = J;
    sc.I = I;
    sc.L = L;
    rethrow_as_config("scenario", [&] { sc.validate(); return 0; });
  }
  if (needs_topology) {
    Rng probe(0);
    for (const auto& t : topologies) {
      // Parameter checks only; a p = 0 draw is deterministic and cheap.
      TopologySpec check = t;
      if (check.random()) check.p_rewire = 0.0;
      rethrow_as_config("topology '" + t.text() + "'", [&] { return check.build(L, probe).node_count(); });
    }
  }
  if (dipp.max_outer < 1 && needs_topology) throw ConfigError("dipp.max_outer must be at least 1");
  if (dipp.sipp.max_inner < 1) throw ConfigError("dipp.max_inner must be at least 1");
}

ConfigEntries parse_config_text(std::istream& in, const std::string& source) {
  ConfigEntries out;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": missing key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (out.count(full)) throw ConfigError(where + ": duplicate key '" + full + "'");
    out[full] = trim(line.substr(eq + 1));
  }
  return out;
}

ConfigEntries parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config_text(in, path);
}

std::vector<double> parse_real_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (const auto& tok : split(text, ",;")) out.push_back(to_real(tok, key));
  return out;
}

std::vector<std::optional<double>> parse_smnr_list(const std::string& text) {
  std::vector<std::optional<double>> out;
  for (const auto& tok : split(text, ",;")) {
    if (tok == "clean" || tok == "inf") {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(to_real(tok, "sweep.smnr_db"));
    }
  }
  return out;
}

std::vector<double> alpha_grid(double from, double to, double step) {
  if (!(step > 0.0) || to < from) throw ConfigError("alpha grid needs step > 0 and from <= to");
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    // rounding to 1e-9 keeps 0.1 + 3*0.02 from printing as 0.16000000000000003
    const double v = std::round((from + static_cast<double>(k) * step) * 1e9) / 1e9;
    if (v > to + 1e-12) break;
    out.push_back(v);
  }
  return out;
}

void apply_config(ExperimentConfig& cfg, const ConfigEntries& entries) {
  for (const auto& [key, value] : entries) {
    if (key == "scenario.N") cfg.N = to_count(value, key);
    else if (key == "scenario.J") cfg.J = to_count(value, key);
    else if (key == "scenario.I") cfg.I = to_count(value, key);
    else if (key == "scenario.L") cfg.L = to_count(value, key);
    else if (key == "scenario.signal_kind")
      cfg.kind = rethrow_as_config(key, [&] { return parse_signal_kind(value); });
    else if (key == "sweep.alpha") cfg.alphas = parse_real_list(value, key);
    else if (key == "sweep.alpha_range") {
      const auto r = parse_real_list(value, key);
      if (r.size() != 3) throw ConfigError(key + ": expected 'from to step'");
      cfg.alphas = alpha_grid(r[0], r[1], r[2]);
    } else if (key == "sweep.smnr_db") cfg.smnr_db = parse_smnr_list(value);
    else if (key == "sweep.topology") {
      cfg.topologies.clear();
      for (const auto& tok : split(value, ";")) cfg.topologies.push_back(parse_topology_spec(tok));
    } else if (key == "sweep.algorithms") {
      cfg.algorithms.clear();
      for (const auto& tok : split(value, ",;")) cfg.algorithms.push_back(parse_algorithm(tok));
    } else if (key == "trials.matrix_realizations") cfg.matrix_realizations = to_count(value, key);
    else if (key == "trials.data_realizations") cfg.data_realizations = to_count(value, key);
    else if (key == "run.master_seed") cfg.master_seed = to_count(value, key);
    else if (key == "run.output") cfg.output = value;
    else if (key == "run.workers") cfg.workers = to_count(value, key);
    else if (key == "run.experiment_id") cfg.experiment_id = value;
    else if (key == "run.timing") cfg.timing = to_bool(value, key);
    else if (key == "dipp.max_outer") cfg.dipp.max_outer = to_count(value, key);
    else if (key == "dipp.max_inner") cfg.dipp.sipp.max_inner = to_count(value, key);
    else if (key == "dipp.exchange")
      cfg.dipp.exchange = rethrow_as_config(key, [&] { return parse_exchange_mode(value); });
    else if (key == "dipp.truncation")
      cfg.dipp.truncation = rethrow_as_config(key, [&] { return parse_truncation_rule(value); });
    else if (key == "dipp.fixed_point_stop") cfg.dipp.fixed_point_stop = to_bool(value, key);
    else throw ConfigError("unknown configuration key '" + key + "'");
  }
}

std::vector<std::string> preset_names() {
  return {"desk", "binary-rings", "gaussian-rings", "clean-rings", "smnr-rings", "small-world"};
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig c;
  c.experiment_id = name;
  const std::vector<TopologySpec> rings{
      {TopologyKind::ring, 1, 0.0}, {TopologyKind::ring, 2, 0.0},
      {TopologyKind::ring, 4, 0.0}, {TopologyKind::ring, 9, 0.0}};
  const auto grid = alpha_grid(0.10, 0.30, 0.02);
  if (name == "desk") {
    c.alphas = {0.16};
    c.topologies = {{TopologyKind::ring, 4, 0.0}};
  } else if (name == "binary-rings") {
    c.kind = SignalKind::binary;
    c.alphas = grid;
    c.topologies = rings;
  } else if (name == "gaussian-rings") {
    c.alphas = grid;
    c.topologies = rings;
  } else if (name == "clean-rings") {
    c.alphas = grid;
    c.smnr_db = {std::nullopt};
    c.topologies = rings;
  } else if (name == "smnr-rings") {
    c.alphas = {0.18};
    c.smnr_db = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    c.topologies = rings;
  } else if (name == "small-world") {
    c.L = 100;
    c.alphas = grid;
    c.topologies = {{TopologyKind::watts_strogatz, 3, 0.3}};
    c.matrix_realizations = 2;
    c.data_realizations = 5;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return c;
}

}  // namespace dipp
