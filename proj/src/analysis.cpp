#include "dipp/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "dipp/errors.hpp"

namespace dipp {

std::string to_string(CVariant v) { return v == CVariant::squared ? "squared" : "linear"; }

CVariant parse_c_variant(const std::string& text) {
  if (text == "squared") return CVariant::squared;
  if (text == "linear") return CVariant::linear;
  throw InvalidArgument("unknown c variant '" + text + "' (expected squared or linear)");
}

BoundConstants bound_constants(double delta, CVariant variant) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidArgument("bound constants need 0 <= delta_3T < 1, got " + std::to_string(delta));
  }
  const double d = delta;
  const double om = 1.0 - d;
  BoundConstants k;
  k.delta = d;
  k.variant = variant;
  k.a = d * (1.0 + d) * (1.0 + d) / (om * om * om * om);
  k.b = (1.0 + d) / (2.0 * om);
  k.c = variant == CVariant::squared ? 4.0 * (1.0 + d * d) / (om * om * om)
                                     : 4.0 * (1.0 + d) / (om * om * om);
  return k;
}

double a_sipp(double delta) { return bound_constants(delta, CVariant::squared).a; }

double convergence_polynomial(double r) {
  return 1.0 - 5.0 * r + 4.0 * r * r - 5.0 * r * r * r + r * r * r * r;
}

double convergence_root() {
  double lo = 0.0;  // p(0) = 1 > 0
  double hi = 1.0;  // p(1) = -4 < 0
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (convergence_polynomial(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<std::size_t> iteration_count(double noise_to_signal, double rate) {
  if (!(noise_to_signal > 0.0 && noise_to_signal < rate && rate < 1.0)) return std::nullopt;
  const double l = std::ceil(std::log(noise_to_signal) / std::log(rate));
  return static_cast<std::size_t>(std::max(1.0, l));
}

BoundReport sipp_bound(const BoundConstants& k, IterationMode mode,
                       std::optional<double> noise_to_signal) {
  BoundReport r;
  r.kind = "sipp";
  r.constants = k;
  r.mode = mode;
  r.rate = k.a;
  r.feasible = k.a < 1.0;
  if (!r.feasible) return r;
  const double om_a = 1.0 - k.a;
  const double om_d = 1.0 - k.delta;
  r.support_side = k.b / om_a;
  r.support_noise = (mode == IterationMode::finite ? om_a + k.c : k.c) / om_a;
  r.signal_side = r.support_side / om_d;
  r.signal_noise = r.support_noise / om_d + 1.0 / std::sqrt(om_d);
  if (noise_to_signal && mode == IterationMode::finite) {
    r.iterations = iteration_count(*noise_to_signal, r.rate);
  }
  return r;
}

BoundReport dipp_bound(const BoundConstants& k, double a_co, std::optional<double> noise_to_signal) {
  if (!(a_co >= 0.0 && a_co <= 1.0)) throw InvalidArgument("a_co must lie in [0, 1]");
  BoundReport r;
  r.kind = "dipp";
  r.constants = k;
  r.a_co = a_co;
  r.mode = IterationMode::finite;
  const double om_a = 1.0 - k.a;
  r.rate = om_a > 0.0 ? a_co * k.b / om_a : std::numeric_limits<double>::infinity();
  r.feasible = k.a < 1.0 && r.rate < 1.0;
  if (!r.feasible) return r;
  const double om_d = 1.0 - k.delta;
  const double denom = om_a - a_co * k.b;
  r.support_noise = 1.0 + (om_a + k.c) / denom;
  r.signal_noise = (om_a + k.c) / (om_d * denom) + 2.0 / om_d;
  if (noise_to_signal) r.iterations = iteration_count(*noise_to_signal, r.rate);
  return r;
}

std::vector<BoundReport> worked_example_bounds() {
  std::vector<BoundReport> rows;
  rows.push_back(sipp_bound(bound_constants(0.17, CVariant::squared), IterationMode::finite));
  rows.back().label = "example1";
  rows.push_back(sipp_bound(bound_constants(0.23, CVariant::squared), IterationMode::finite));
  rows.back().label = "example2";
  rows.push_back(dipp_bound(bound_constants(0.17, CVariant::linear), 0.27));
  rows.back().label = "example3";
  rows.push_back(dipp_bound(bound_constants(0.23, CVariant::linear), 1.61e-4));
  rows.back().label = "example4";
  return rows;
}

std::string bound_csv_header() {
  return "label,kind,delta_3T,c_variant,a_sipp,b_sipp,c_sipp,a_co,mode,rate,feasible,"
         "support_side,support_noise,signal_side,signal_noise,iterations";
}

std::string bound_csv_row(const BoundReport& r) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  std::string s = r.label + "," + r.kind + "," + num(r.constants.delta) + "," +
                  to_string(r.constants.variant) + "," + num(r.constants.a) + "," +
                  num(r.constants.b) + "," + num(r.constants.c) + "," +
                  (r.a_co ? num(*r.a_co) : std::string()) + "," +
                  (r.mode == IterationMode::finite ? "finite" : "infinite") + "," + num(r.rate) +
                  "," + (r.feasible ? "1" : "0") + ",";
  if (r.feasible) {
    s += num(r.support_side) + "," + num(r.support_noise) + "," + num(r.signal_side) + "," +
         num(r.signal_noise);
  } else {
    s += ",,,";
  }
  s += ",";
  if (r.iterations) s += std::to_string(*r.iterations);
  return s;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double v = 1.0;
  for (std::size_t i = 1; i <= k; ++i) v = v * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(v);
}

namespace {

double deviation_of(const Matrix& gram) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(ev.maxCoeff() - 1.0, 1.0 - ev.minCoeff());
}

Matrix sub_gram(const Matrix& gram, const std::vector<std::size_t>& idx) {
  const auto s = static_cast<Eigen::Index>(idx.size());
  Matrix g(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index j = 0; j < s; ++j) {
      g(i, j) = gram(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                     static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
    }
  }
  return g;
}

/// Advances a lexicographic k-combination of {0..n-1}; false after the last one.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double ric_from_gram(const Matrix& gram, std::size_t s) {
  const auto n = static_cast<std::size_t>(gram.rows());
  if (s == 0) return 0.0;
  std::vector<std::size_t> c(s);
  std::iota(c.begin(), c.end(), std::size_t{0});
  double best = 0.0;
  do {
    best = std::max(best, deviation_of(sub_gram(gram, c)));
  } while (next_combination(c, n));
  return best;
}

void check_budget(std::size_t n, std::size_t s) {
  if (s > n) throw InvalidArgument("ric: order exceeds the number of columns");
  if (binomial(n, s) > kRicSubsetBudget) {
    throw TooLargeError("exact RIC of order " + std::to_string(s) + " needs C(" +
                        std::to_string(n) + "," + std::to_string(s) +
                        ") subsets; use the sampled lower bound instead");
  }
}

}  // namespace

double spectral_deviation(const Matrix& a, const SupportSet& cols) {
  if (cols.empty()) return 0.0;
  const Matrix a_s = restrict_columns(a, cols);
  return deviation_of(a_s.transpose() * a_s);
}

double ric_exact(const Matrix& a, std::size_t s) {
  const auto n = static_cast<std::size_t>(a.cols());
  check_budget(n, s);
  return ric_from_gram(a.transpose() * a, s);
}

std::vector<double> ric_profile(const Matrix& a, std::size_t s_max) {
  const auto n = static_cast<std::size_t>(a.cols());
  for (std::size_t s = 1; s <= s_max; ++s) check_budget(n, s);
  const Matrix gram = a.transpose() * a;
  std::vector<double> profile(s_max + 1, 0.0);
  for (std::size_t s = 1; s <= s_max; ++s) {
    // A subset of size s contains subsets of size s-1, so the profile is
    // monotone by construction; the max keeps rounding from breaking that.
    profile[s] = std::max(profile[s - 1], ric_from_gram(gram, s));
  }
  return profile;
}

double ric_sampled_lower_bound(const Matrix& a, std::size_t s, std::size_t samples, Rng& rng) {
  const auto n = static_cast<std::size_t>(a.cols());
  if (s > n) throw InvalidArgument("ric: order exceeds the number of columns");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    best = std::max(best, spectral_deviation(a, SupportSet(rng.sample_without_replacement(pool, s))));
  }
  return best;
}

Matrix certifiable_matrix(std::size_t m, std::size_t n, Rng& rng) {
  if (m < 1 || m > n) throw InvalidArgument("certifiable_matrix: need 1 <= M <= N");
  Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix a = q.topRows(static_cast<Eigen::Index>(m));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double norm = a.col(j).norm();
    if (norm == 0.0) throw InvalidArgument("certifiable_matrix: degenerate draw");
    a.col(j) /= norm;
  }
  return a;
}

bool within_bound(double lhs, double rhs) { return lhs <= rhs * (1.0 + 1e-9) + 1e-12; }

namespace {

InequalityCheck leq(std::string name, double lhs, double rhs) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.holds = within_bound(lhs, rhs);
  return c;
}

InequalityCheck eq(std::string name, double lhs, double rhs, double scale) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.equality = true;
  c.holds = std::abs(lhs - rhs) <= 1e-9 * scale + 1e-12;
  return c;
}

double delta_at(const std::vector<double>& profile, std::size_t k) {
  if (profile.empty()) throw InvalidArgument("lemma suite: empty RIC profile");
  return profile[std::min(k, profile.size() - 1)];
}

}  // namespace

LemmaInstance instrument_sipp(const Matrix& a, const Vector& x, const Vector& e,
                              const SupportSet& true_support, std::size_t sparsity,
                              const SupportSet& side_info, std::size_t max_inner) {
  LemmaInstance inst;
  inst.A = a;
  inst.x = x;
  inst.e = e;
  inst.y = a * x + e;
  inst.sparsity = sparsity;
  inst.true_support = true_support;
  inst.side_info = side_info;
  SippOptions opts;
  opts.max_inner = max_inner;
  opts.observer = [&inst](const SippIterationState& st) { inst.iterations.push_back(st); };
  sipp_run(inst.y, a, sparsity, side_info, opts);
  return inst;
}

std::vector<InequalityCheck> lemma_suite(const LemmaInstance& inst, const std::vector<double>& profile) {
  const std::size_t t = inst.sparsity;
  const double d = delta_at(profile, 3 * t);
  if (!(d < 1.0)) throw InvalidArgument("lemma suite: delta_3T must be below 1");
  const BoundConstants k = bound_constants(d, CVariant::squared);
  const double en = inst.e.norm();
  const double gain = (1.0 + d) / (1.0 - d);
  const double noise2 = 2.0 / std::sqrt(1.0 - d);
  const double si_off = norm_off(inst.x, inst.side_info);

  std::vector<InequalityCheck> out;
  for (const auto& st : inst.iterations) {
    const std::string tag = "[l=" + std::to_string(st.l) + "] ";
    const double err = (inst.x - st.estimate).norm();
    const double off_l = norm_off(inst.x, st.support);
    const double off_prev = norm_off(inst.x, st.support_prev);

    out.push_back(leq(tag + "least-squares error vs missed energy", err,
                      off_l / (1.0 - d) + en / std::sqrt(1.0 - d)));
    out.push_back(leq(tag + "missed energy vs estimation error", off_l, err));
    out.push_back(leq(tag + "final pruning", off_l,
                      gain * norm_off(inst.x, st.side_merged) + noise2 * en));
    out.push_back(leq(tag + "first pruning", norm_off(inst.x, st.pruned),
                      gain * norm_off(inst.x, st.merged) + noise2 * en));
    out.push_back(leq(tag + "matched-filter merge", norm_off(inst.x, st.merged),
                      2.0 * d / ((1.0 - d) * (1.0 - d)) * off_prev +
                          2.0 * std::sqrt(1.0 + d) / (1.0 - d) * en));
    out.push_back(leq(tag + "one-step recurrence", off_l, k.a * off_prev + k.b * si_off + k.c * en));

    // Restricted operator bounds on the side-merged set.
    const SupportSet& s = st.side_merged;
    const double ds = delta_at(profile, s.size());
    const Matrix a_s = restrict_columns(inst.A, s);
    const double yn = inst.y.norm();
    out.push_back(leq(tag + "restricted adjoint", (a_s.transpose() * inst.y).norm(),
                      std::sqrt(1.0 + ds) * yn));
    out.push_back(leq(tag + "restricted pseudo-inverse", solve_on_support(inst.A, inst.y, s).norm(),
                      yn / std::sqrt(1.0 - ds)));
    const Matrix gram = a_s.transpose() * a_s;
    Eigen::LDLT<Matrix> gram_inv(gram);
    for (const Vector& v : {gather(inst.x, s), gather(st.x_check, s)}) {
      const double vn = v.norm();
      if (vn == 0.0) continue;
      const double gv = (gram * v).norm();
      const double iv = gram_inv.solve(v).norm();
      out.push_back(leq(tag + "Gram lower", (1.0 - ds) * vn, gv));
      out.push_back(leq(tag + "Gram upper", gv, (1.0 + ds) * vn));
      out.push_back(leq(tag + "inverse Gram lower", vn / (1.0 + ds), iv));
      out.push_back(leq(tag + "inverse Gram upper", iv, vn / (1.0 - ds)));
    }

    // Cross terms between the estimate and the missed part of the true support.
    const SupportSet missed = set_difference(inst.true_support, st.support);
    if (!missed.empty()) {
      const Matrix a_t = restrict_columns(inst.A, st.support);
      const Matrix a_r = restrict_columns(inst.A, missed);
      const double dr = delta_at(profile, st.support.size() + missed.size());
      const Eigen::JacobiSVD<Matrix> svd(a_t.transpose() * a_r);
      out.push_back(leq(tag + "disjoint cross Gram", svd.singularValues()(0), dr));
      const Vector x_off = inst.x - restrict_to(inst.x, st.support);
      out.push_back(leq(tag + "cross projection", (a_t.transpose() * (inst.A * x_off)).norm(),
                        dr * x_off.norm()));
    }
  }
  return out;
}

std::vector<InequalityCheck> fusion_checks(const Vector& x_true,
                                           const SupportSet& T_hat, const SupportSet& I_hat,
                                           const SupportSet& J_hat, const SupportSet& T_si) {
  std::vector<InequalityCheck> out;
  const double si_off = norm_off(x_true, T_si);
  const double t_off = norm_off(x_true, T_hat);
  const double dropped = norm_on(x_true, set_difference(T_hat, I_hat));
  const double common = norm_on(x_true, J_hat);
  out.push_back(eq("side-information energy identity", si_off * si_off,
                   t_off * t_off + dropped * dropped - common * common, x_true.squaredNorm()));
  if (common * common >= dropped * dropped) {
    out.push_back(leq("expansion does not lose energy", si_off, t_off));
  }
  return out;
}

ACoMeasure a_co_measure(const Vector& x_true, const SupportSet& T_hat, const SupportSet& T_si) {
  const double denom = norm_off(x_true, T_hat);
  if (denom == 0.0) return {0.0, true};
  return {norm_off(x_true, T_si) / denom, false};
}

}  // namespace dipp
