#include "mixv/ising.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mixv/errors.hpp"

namespace mixv {

namespace {

constexpr std::size_t kPartitionSpinGuard = 24;
constexpr std::size_t kTvSpinGuard = 20;
constexpr double kTvFormAgreement = 1e-10;
constexpr double kMaxGadgetMagnitude = 1e8;

std::size_t enum_spin_guard(std::size_t default_guard) {
  if (const char* env = std::getenv("MIXV_MAX_ENUM")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && parsed > 0 && parsed < 64) {
      return static_cast<std::size_t>(parsed);
    }
  }
  return default_guard;
}

void require_enumerable(const IsingModel& model, std::size_t default_guard, const char* op) {
  const std::size_t guard = enum_spin_guard(default_guard);
  if (model.n > guard) {
    std::ostringstream msg;
    msg << op << ": n = " << model.n << " exceeds the enumeration guard of " << guard
        << " spins (MIXV_MAX_ENUM overrides)";
    throw guard_error(msg.str());
  }
}

int spin_at(std::size_t config, std::size_t i) {
  return (config >> i) & 1u ? +1 : -1;
}

double config_weight_at(const IsingModel& model, std::size_t config) {
  double e = 0.0;
  for (const auto& p : model.pairs) {
    e += p.w * spin_at(config, p.i) * spin_at(config, p.j);
  }
  for (std::size_t i = 0; i < model.n; ++i) {
    e += model.fields[i] * spin_at(config, i);
  }
  return e;
}

}  // namespace

void LogSumExp::add(double log_term) {
  if (empty_ || log_term > max_) {
    if (!empty_) {
      const double scale = std::exp(max_ - log_term);
      sum_ *= scale;
      comp_ *= scale;
    }
    max_ = log_term;
    empty_ = false;
    log_term = max_;  // falls through to adding exp(0) = 1
  }
  // Kahan-compensated accumulation of exp(log_term - max_).
  const double term = std::exp(log_term - max_);
  const double y = term - comp_;
  const double t = sum_ + y;
  comp_ = (t - sum_) - y;
  sum_ = t;
}

double LogSumExp::value() const {
  if (empty_) return -std::numeric_limits<double>::infinity();
  return max_ + std::log(sum_);
}

double logaddexp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (std::isinf(b) && b < 0) return a;
  return a + std::log1p(std::exp(b - a));
}

double log_config_weight(const IsingModel& model, const SpinConfig& x) {
  require_valid(model);
  if (x.size() != model.n) {
    throw std::invalid_argument("spin vector length does not match n");
  }
  double e = 0.0;
  for (const auto& p : model.pairs) e += p.w * x[p.i] * x[p.j];
  for (std::size_t i = 0; i < model.n; ++i) {
    if (x[i] != 1 && x[i] != -1) {
      throw std::invalid_argument("spin values must be +1 or -1");
    }
    e += model.fields[i] * x[i];
  }
  return e;
}

double partition_brute(const IsingModel& model) {
  require_valid(model);
  require_enumerable(model, kPartitionSpinGuard, "partition_brute");
  LogSumExp acc;
  const std::size_t total = std::size_t{1} << model.n;
  for (std::size_t config = 0; config < total; ++config) {
    acc.add(config_weight_at(model, config));
  }
  return acc.value();
}

double marginal_brute(const IsingModel& model, std::size_t k, int s) {
  require_valid(model);
  require_enumerable(model, kPartitionSpinGuard, "marginal_brute");
  if (k >= model.n) throw std::invalid_argument("marginal_brute: spin index out of range");
  if (s != 1 && s != -1) throw std::invalid_argument("marginal_brute: s must be +1 or -1");
  LogSumExp matching;
  LogSumExp rest;
  const std::size_t total = std::size_t{1} << model.n;
  for (std::size_t config = 0; config < total; ++config) {
    const double w = config_weight_at(model, config);
    if (spin_at(config, k) == s) {
      matching.add(w);
    } else {
      rest.add(w);
    }
  }
  const double log_z = logaddexp(matching.value(), rest.value());
  return std::exp(matching.value() - log_z);
}

double tv_brute(const IsingModel& a, const IsingModel& b) {
  require_valid(a);
  require_valid(b);
  if (a.n != b.n) throw std::invalid_argument("tv_brute: models have different spin counts");
  require_enumerable(a, kTvSpinGuard, "tv_brute");

  const std::size_t total = std::size_t{1} << a.n;
  LogSumExp za;
  LogSumExp zb;
  for (std::size_t config = 0; config < total; ++config) {
    za.add(config_weight_at(a, config));
    zb.add(config_weight_at(b, config));
  }
  const double log_za = za.value();
  const double log_zb = zb.value();

  double half_l1 = 0.0, half_c = 0.0;
  double pos_part = 0.0, pos_c = 0.0;
  for (std::size_t config = 0; config < total; ++config) {
    const double pa = std::exp(config_weight_at(a, config) - log_za);
    const double pb = std::exp(config_weight_at(b, config) - log_zb);
    const double diff = pa - pb;
    {
      const double y = 0.5 * std::abs(diff) - half_c;
      const double t = half_l1 + y;
      half_c = (t - half_l1) - y;
      half_l1 = t;
    }
    {
      const double y = std::max(0.0, diff) - pos_c;
      const double t = pos_part + y;
      pos_c = (t - pos_part) - y;
      pos_part = t;
    }
  }
  if (std::abs(half_l1 - pos_part) > kTvFormAgreement) {
    std::ostringstream msg;
    msg << "tv_brute: half-L1 and positive-part forms disagree by "
        << std::abs(half_l1 - pos_part);
    throw guard_error(msg.str());
  }
  return half_l1;
}

IsingModel eliminate_first_variable(const IsingModel& model) {
  require_valid(model);
  if (model.n < 2) throw std::invalid_argument("eliminate_first_variable requires n >= 2");
  IsingModel out;
  out.n = model.n - 1;
  out.fields.assign(model.fields.begin() + 1, model.fields.end());
  for (const auto& p : model.pairs) {
    if (p.i == 0) {
      out.fields[p.j - 1] += p.w;  // absorbed: h_i' = w_{0,i} + h_i
    } else {
      out.pairs.push_back({p.i - 1, p.j - 1, p.w});
    }
  }
  return out;
}

MarginalOracle exact_marginal_oracle() {
  return [](const IsingModel& model, std::size_t k, int s, double, double) {
    return marginal_brute(model, k, s);
  };
}

double partition_via_marginals(const IsingModel& model, const MarginalOracle& oracle, double eps,
                               double conf) {
  require_valid(model);
  if (model.n == 0) throw std::invalid_argument("partition_via_marginals requires n >= 1");
  const double eps0 = eps / static_cast<double>(model.n);
  const double conf0 = conf / static_cast<double>(model.n);
  double log_z = 0.0;
  IsingModel current = model;
  while (current.n >= 2) {
    const double m = oracle(current, 0, +1, eps0, conf0);
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::runtime_error("partition_via_marginals: oracle returned a non-positive marginal");
    }
    log_z += current.fields[0] - std::log(m);
    current = eliminate_first_variable(current);
  }
  log_z += logaddexp(current.fields[0], -current.fields[0]);
  return log_z;
}

std::pair<IsingModel, IsingModel> build_marginal_gadget(const IsingModel& model,
                                                        const GadgetParams& params) {
  require_valid(model);
  if (params.k >= model.n) {
    throw std::invalid_argument("gadget: target spin index out of range");
  }
  if (!(params.delta > 1.0)) {
    throw std::invalid_argument("gadget: delta must exceed 1");
  }
  if (!std::isfinite(params.h0) || !std::isfinite(params.delta)) {
    throw std::invalid_argument("gadget: parameters must be finite");
  }

  IsingModel p0;
  p0.n = model.n + 1;
  p0.fields.reserve(p0.n);
  p0.fields.push_back(params.h0);
  p0.fields.insert(p0.fields.end(), model.fields.begin(), model.fields.end());
  p0.pairs.reserve(model.pairs.size());
  for (const auto& p : model.pairs) p0.pairs.push_back({p.i + 1, p.j + 1, p.w});

  IsingModel q0 = p0;
  q0.pairs.insert(q0.pairs.begin(), {0, params.k + 1, params.delta});
  return {std::move(p0), std::move(q0)};
}

double gadget_error_bound(const IsingModel& model, const GadgetParams& params) {
  const auto [p0, q0] = build_marginal_gadget(model, params);
  const double log_ratio = partition_brute(p0) - partition_brute(q0);
  return 2.0 * std::exp(-2.0 * std::abs(params.h0)) + std::exp(log_ratio - params.delta);
}

double log_marginal_lower_bound(const IsingModel& model) {
  const double w = model.max_abs_pair_weight();
  const double h = model.max_abs_field();
  const double n1 = static_cast<double>(model.n) + 1.0;
  return -2.0 * (w * n1 * n1 + n1 * h) - std::log(4.0);
}

GadgetParams size_gadget_params(const IsingModel& model, std::size_t k, int s, double eps) {
  require_valid(model);
  if (k >= model.n) throw std::invalid_argument("size_gadget_params: spin index out of range");
  if (s != 1 && s != -1) throw std::invalid_argument("size_gadget_params: s must be +1 or -1");
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("size_gadget_params: eps must lie in (0, 1]");
  }
  const double log_lb = log_marginal_lower_bound(model);
  // Cap each error-bound term at (eps/4) * lower bound. The ratio term uses
  // Z_{Q0}/Z_{P0} >= exp(delta) * Pr[x_0 x_k = +1] >= exp(delta) * LB / 2,
  // which holds for every h0 <= 0.
  const double h0 = 0.5 * (std::log(eps / 8.0) + log_lb);
  const double delta = 0.5 * (std::log(8.0 / eps) - 2.0 * log_lb);
  if (!std::isfinite(h0) || !std::isfinite(delta) || std::abs(h0) > kMaxGadgetMagnitude ||
      delta > kMaxGadgetMagnitude) {
    std::ostringstream msg;
    msg << "size_gadget_params: infeasible gadget, requires |h0| = " << std::abs(h0)
        << " and delta = " << delta << " beyond the supported magnitude "
        << kMaxGadgetMagnitude;
    throw guard_error(msg.str());
  }
  return {k, s == +1 ? h0 : -h0, delta};
}

TvOracle exact_tv_oracle() {
  return [](const IsingModel& a, const IsingModel& b, double, double) { return tv_brute(a, b); };
}

double marginal_via_tv(const IsingModel& model, std::size_t k, int s, double eps,
                       const TvOracle& oracle, double conf) {
  const GadgetParams params = size_gadget_params(model, k, s, eps);
  const auto [p0, q0] = build_marginal_gadget(model, params);
  const double estimate = oracle(p0, q0, eps / 2.0, conf);
  if (!std::isfinite(estimate) || estimate < 0.0) {
    throw std::runtime_error("marginal_via_tv: oracle returned an invalid TV estimate");
  }
  return estimate;
}

}  // namespace mixv
