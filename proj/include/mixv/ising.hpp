#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "mixv/models.hpp"

namespace mixv {

/// Spin configuration, entries +1 or -1.
using SpinConfig = std::vector<int>;

/// Numerically stable log(sum exp(a_t)) over a stream of values: max-shifted,
/// compensated summation, value independent of magnitudes' spread.
class LogSumExp {
 public:
  void add(double log_term);
  double value() const;

 private:
  double max_ = 0.0;
  double sum_ = 0.0;
  double comp_ = 0.0;
  bool empty_ = true;
};

double logaddexp(double a, double b);

/// log of the unnormalized configuration weight:
/// sum_{i<j} w_{ij} x_i x_j + sum_i h_i x_i.
double log_config_weight(const IsingModel& model, const SpinConfig& x);

/// log Z by full enumeration of the 2^n configurations. Guarded to n <= 24
/// (override with MIXV_MAX_ENUM).
double partition_brute(const IsingModel& model);

/// Pr[x_k = s] by full enumeration; s is +1 or -1.
double marginal_brute(const IsingModel& model, std::size_t k, int s);

/// Total variation distance by enumeration over the shared configuration
/// space, guarded to n <= 20 (override with MIXV_MAX_ENUM). Computes both the
/// half-L1 and the positive-part forms, checks they agree within 1e-10, and
/// returns the half-L1 value.
double tv_brute(const IsingModel& a, const IsingModel& b);

/// Marginalization-free elimination of spin 0: the returned model over the
/// remaining n-1 spins keeps the surviving pair weights and absorbs spin 0's
/// couplings into the fields, h_i' = w_{0,i} + h_i.
IsingModel eliminate_first_variable(const IsingModel& model);

/// Estimates Pr[x_k = s] under `model` to multiplicative (1+eps) with
/// confidence 1-conf.
using MarginalOracle =
    std::function<double(const IsingModel& model, std::size_t k, int s, double eps, double conf)>;

/// Exact deterministic MarginalOracle backed by marginal_brute (eps and conf
/// are accepted for interface compatibility and ignored).
MarginalOracle exact_marginal_oracle();

/// log Z via the telescoping marginal recursion: repeatedly queries the
/// oracle for Pr[x_first = +1] of the current model (per-call accuracy
/// eps/n, confidence conf/n), accounts log Z_t = h_first - log m_t +
/// log Z_{t+1}, eliminates the first spin, and closes with the single-spin
/// partition log(exp(h) + exp(-h)).
double partition_via_marginals(const IsingModel& model, const MarginalOracle& oracle, double eps,
                               double conf);

/// Dummy-spin construction parameters. h0 is the dummy field: negative
/// targets Pr[x_k = +1], positive targets Pr[x_k = -1]. delta is the
/// coupling boost between the dummy spin and spin k; must exceed 1.
struct GadgetParams {
  std::size_t k = 0;
  double h0 = 0.0;
  double delta = 0.0;
};

/// Builds the pair (P0, Q0) over n+1 spins: spin 0 is a new dummy spin with
/// field h0 and no couplings under P0; Q0 is identical except for the one
/// extra pair weight delta between spin 0 and spin k+1 (the input model's
/// spin k; all original spins shift up by one).
std::pair<IsingModel, IsingModel> build_marginal_gadget(const IsingModel& model,
                                                        const GadgetParams& params);

/// Upper bound on |dtv(P0, Q0) - Pr[x_k = s]|:
/// 2 exp(-2|h0|) + exp(-delta) * Z_{P0}/Z_{Q0}, the partition ratio computed
/// exactly by enumeration.
double gadget_error_bound(const IsingModel& model, const GadgetParams& params);

/// log of the a-priori lower bound on every atomic marginal of `model`:
/// exp(-W(n+1)^2 - (n+1)H) / (4 exp(W(n+1)^2 + (n+1)H)).
double log_marginal_lower_bound(const IsingModel& model);

/// Picks (h0, delta) so that the gadget error bound is at most eps/2 times
/// the marginal lower bound: each of the two bound terms is capped at
/// (eps/4) * bound. Requires eps in (0, 1]. Throws guard_error naming the
/// required magnitudes when they exceed the supported numeric range.
GadgetParams size_gadget_params(const IsingModel& model, std::size_t k, int s, double eps);

/// Estimates dtv(a, b) to multiplicative (1+eps) with confidence 1-conf.
using TvOracle = std::function<double(const IsingModel& a, const IsingModel& b, double eps,
                                      double conf)>;

/// Exact deterministic TvOracle backed by tv_brute.
TvOracle exact_tv_oracle();

/// Estimates Pr[x_k = s] by auto-sizing the dummy-spin gadget for accuracy
/// eps, building (P0, Q0) and querying the TV oracle once at eps/2.
double marginal_via_tv(const IsingModel& model, std::size_t k, int s, double eps,
                       const TvOracle& oracle, double conf = 0.05);

}  // namespace mixv
