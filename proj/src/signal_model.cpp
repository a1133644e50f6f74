#include "dipp/signal_model.hpp"

#include <cmath>
#include <numeric>

#include "dipp/errors.hpp"

namespace dipp {

std::string to_string(SignalKind kind) {
  return kind == SignalKind::gaussian ? "gaussian" : "binary";
}

SignalKind parse_signal_kind(const std::string& text) {
  if (text == "gaussian") return SignalKind::gaussian;
  if (text == "binary") return SignalKind::binary;
  throw InvalidArgument("unknown signal kind '" + text + "' (expected gaussian or binary)");
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidArgument("scenario config: " + what); };
  if (N < 1) fail("N must be positive");
  if (M < 1) fail("M must be positive");
  if (M >= N) fail("M must be smaller than N");
  if (J + I > N) fail("J + I exceeds N");
  if (J + I > M) fail("J + I exceeds M");
  if (J + I < 1) fail("sparsity J + I must be positive");
  if (L < 1) fail("L must be at least 1");
  if (smnr_db && !std::isfinite(*smnr_db)) fail("SMNR must be finite or clean");
}

SupportSet draw_subset(std::size_t n, std::size_t k, const SupportSet& excluded, Rng& rng) {
  std::vector<std::size_t> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!excluded.contains(i)) pool.push_back(i);
  }
  return SupportSet(rng.sample_without_replacement(std::move(pool), k));
}

SupportDraw gen_supports(const ScenarioConfig& cfg, Rng& rng) {
  if (cfg.J + cfg.I > cfg.N) throw InvalidArgument("gen_supports: J + I exceeds N");
  SupportDraw draw;
  draw.common = draw_subset(cfg.N, cfg.J, {}, rng);
  draw.individual.reserve(cfg.L);
  for (std::size_t p = 0; p < cfg.L; ++p) {
    draw.individual.push_back(draw_subset(cfg.N, cfg.I, draw.common, rng));
  }
  return draw;
}

SparseSignal gen_signal(std::size_t n, const SupportSet& common, const SupportSet& individual,
                        SignalKind kind, Rng& rng) {
  common.check_bound(n, "gen_signal");
  individual.check_bound(n, "gen_signal");
  if (intersection_size(common, individual) != 0) {
    throw InvalidArgument("gen_signal: common and individual parts overlap");
  }
  SparseSignal s;
  s.common_part = common;
  s.individual_part = individual;
  s.support = set_union(common, individual);
  s.values = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i : s.support) {
    s.values[static_cast<Eigen::Index>(i)] = kind == SignalKind::gaussian ? rng.normal() : 1.0;
  }
  return s;
}

Matrix gen_matrix(std::size_t m, std::size_t n, Rng& rng) {
  if (m < 1 || n < 1) throw InvalidArgument("gen_matrix: dimensions must be positive");
  const double sd = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    double norm = 0.0;
    do {
      for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = sd * rng.normal();
      norm = a.col(j).norm();
    } while (norm == 0.0);
    a.col(j) /= norm;
  }
  return a;
}

double noise_variance(std::size_t sparsity, std::size_t m, double smnr_db) {
  return static_cast<double>(sparsity) / (std::pow(10.0, smnr_db / 10.0) * static_cast<double>(m));
}

Vector gen_noise(std::size_t sparsity, std::size_t m, std::optional<double> smnr_db, Rng& rng) {
  Vector e = Vector::Zero(static_cast<Eigen::Index>(m));
  if (!smnr_db) return e;
  const double sd = std::sqrt(noise_variance(sparsity, m, *smnr_db));
  for (Eigen::Index i = 0; i < e.size(); ++i) e[i] = sd * rng.normal();
  return e;
}

SupportSet gen_common_support(const ScenarioConfig& cfg) {
  Rng rng(derive_seed({cfg.master_seed, tag_hash("common"), cfg.matrix_realization,
                       cfg.data_realization}));
  return draw_subset(cfg.N, cfg.J, {}, rng);
}

NodeData gen_node(const ScenarioConfig& cfg, const SupportSet& common, std::size_t p) {
  NodeData node;
  Rng matrix_rng(derive_seed({cfg.master_seed, tag_hash("matrix"), p, cfg.matrix_realization}));
  node.A = gen_matrix(cfg.M, cfg.N, matrix_rng);

  Rng data_rng(derive_seed({cfg.master_seed, tag_hash("data"), p, cfg.matrix_realization,
                            cfg.data_realization}));
  const SupportSet individual = draw_subset(cfg.N, cfg.I, common, data_rng);
  node.x = gen_signal(cfg.N, common, individual, cfg.kind, data_rng);
  node.noise = gen_noise(cfg.sparsity(), cfg.M, cfg.smnr_db, data_rng);
  node.y = node.A * node.x.values + node.noise;
  return node;
}

Scenario gen_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Scenario s;
  s.config = cfg;
  s.common_support = gen_common_support(cfg);
  s.nodes.reserve(cfg.L);
  for (std::size_t p = 0; p < cfg.L; ++p) s.nodes.push_back(gen_node(cfg, s.common_support, p));
  return s;
}

}  // namespace dipp
