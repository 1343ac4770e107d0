#pragma once

#include "issprobe/dynamics.hpp"
#include "issprobe/errors.hpp"
#include "issprobe/kernels.hpp"
#include "issprobe/rewards.hpp"
#include "issprobe/schedules.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace issprobe {

/// β(x, t) <= c1 κ(t) x and γ(x) <= c1 x^ρ.
struct GainEnvelope {
  double c1 = 0.0;
  double rho = 1.0;
  std::vector<double> kappa;  // κ(0..T), κ(0) = 1, nonincreasing

  /// κ(t); holds the last tabulated value past the table.
  double kappa_at(std::size_t t) const;
  /// Σ_t κ(t)^α over the table.
  double kappa_alpha_l1(double alpha) const;
  /// c1 κ(t) ‖δx‖ + c1 (max_{k<t} ‖δu_k‖)^ρ
  double bound(std::size_t t, double dx_norm, double du_max) const;
};

/// One sampled experiment: an initial state and the perturbation applied to it.
struct SampleItem {
  Vec x0;
  PerturbationPlan plan;
};

struct GainSamplerSpec {
  std::uint64_t seed = 1;
  std::size_t n_state = 64;
  std::size_t n_input = 64;
  std::size_t n_mixed = 32;
  /// Perturbation magnitudes are drawn log-uniformly from [min, max].
  double state_min = 1e-3;
  double state_max = 0.5;
  double input_min = 1e-2;
  double input_max = 4.0;
  /// Initial states come from the domain shrunk by this factor.
  double shrink = 0.5;
};

/// Pure-state, pure-input and mixed items. Input plans hold one offset
/// direction for `horizon` steps.
std::vector<SampleItem> sample_gain_items(const System& system, const GainSamplerSpec& spec, std::size_t horizon);

struct GainOptions {
  std::vector<double> rho_grid{0.25, 0.5, 1.0, 2.0};
  double c1_cap = 1e6;
  Exec exec = Exec::parallel;
};

struct GainWitness {
  std::size_t item = 0;
  std::size_t t = 0;
  double dx_norm = 0.0;
  double du_max = 0.0;
  double deviation = 0.0;
  double max_deviation = 0.0;
  double ratio = 0.0;
};

/// No envelope with c1 <= c1_cap and ρ in the grid covers the witnesses.
class EnvelopeInfeasible : public Error {
 public:
  EnvelopeInfeasible(const std::string& what, GainWitness witness, Vec x0, Vec dx)
      : Error(what), witness_(witness), x0_(std::move(x0)), dx_(std::move(dx)) {}
  const GainWitness& witness() const { return witness_; }
  const Vec& x0() const { return x0_; }
  const Vec& dx() const { return dx_; }

 private:
  GainWitness witness_;
  Vec x0_;
  Vec dx_;
};

struct GainFit {
  GainEnvelope envelope;
  /// Largest deviation/‖δx‖ among pure-state items (pre-normalization κ(0)).
  double c1_state = 0.0;
  /// Smallest feasible c1 per grid entry (+inf when infeasible).
  std::vector<double> c1_by_rho;
  GainWitness state_witness;
  GainWitness input_witness;
  std::vector<TrajectoryPair> trajectories;
};

/// Fits (c1, ρ, κ) to rollouts of every item up to `horizon`.
GainFit estimate_gains(const System& system, const Policy& policy, const std::vector<SampleItem>& items,
                       std::size_t horizon, const GainOptions& options = {});

/// Worst ratio deviation / envelope bound over the recorded pairs (<= 1 means valid).
double envelope_violation_ratio(const GainEnvelope& envelope, const std::vector<SampleItem>& items,
                                const std::vector<TrajectoryPair>& trajectories);

/// s ↦ a s^p
struct PowerGain {
  double a = 1.0;
  double p = 1.0;
  double operator()(double s) const { return a * gain_pow(s, p); }
};

struct LyapunovCandidate {
  std::function<double(const Vec& xp, const Vec& x)> V;
  PowerGain alpha1;
  PowerGain alpha2;
  PowerGain alpha3;
  PowerGain rho_gain;
};

struct LyapunovTriple {
  Vec xp;
  Vec x;
  Vec du;
};

struct LyapunovViolation {
  enum class Kind { lower_bound, upper_bound, decrease };
  Kind kind = Kind::decrease;
  std::size_t index = 0;
  LyapunovTriple triple;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct LyapunovReport {
  bool pass = true;
  std::size_t n_checked = 0;
  std::vector<LyapunovViolation> violations;
};

std::string to_string(LyapunovViolation::Kind kind);

/// Random triples: x from the shrunk domain, x' within `radius` of x, ‖δu‖ <= du_max.
std::vector<LyapunovTriple> sample_lyapunov_triples(const System& system, std::size_t n, std::uint64_t seed,
                                                    double radius = 0.5, double du_max = 0.1,
                                                    double shrink = 0.5);

/// Checks both sandwich bounds and the decrease condition at every triple.
LyapunovReport check_lyapunov(const LyapunovCandidate& candidate, const System& system, const Policy& policy,
                              const std::vector<LyapunovTriple>& triples, double tol = 1e-9,
                              Exec exec = Exec::parallel);

/// Lifted state: y = λ̄_s^{1/α} x with integer clock s.
struct LiftedState {
  Vec y;
  std::size_t s = 0;
};

struct LiftedStep {
  LiftedState state;
  Vec input;
};

/// Time-augmented system that folds the schedule into the state.
class LiftedSystem {
 public:
  LiftedSystem(System base, Policy policy, DiscountSchedule schedule, double alpha);

  LiftedState lift(const Vec& x, std::size_t s) const;
  /// λ̄_s^{−1/α} y. Throws ZeroScale when λ̄_s = 0.
  Vec lower(const LiftedState& state) const;
  /// [λ̄_{s+1}^{1/α} f(x, λ̄_s^{−1/α} u); s + 1], with the clock held at the cap.
  LiftedState step(const LiftedState& state, const Vec& u) const;
  /// λ̄_s^{1/α} π(x)
  Vec act(const LiftedState& state) const;
  /// λ̄_s r(λ̄_s^{−1/α} y, λ̄_s^{−1/α} u)
  double reward(const Reward& r, const LiftedState& state, const Vec& u) const;
  std::vector<LiftedStep> rollout(const Vec& x0, std::size_t horizon) const;

  /// The lifted system as an ordinary System whose last coordinate is the clock.
  System as_system() const;
  Policy as_policy() const;
  Vec pack(const LiftedState& state) const;
  LiftedState unpack(const Vec& v) const;

  double scale(std::size_t s) const;
  std::optional<std::size_t> clock_cap() const { return cap_; }
  const System& base() const { return base_; }
  const DiscountSchedule& schedule() const { return schedule_; }
  double alpha() const { return alpha_; }

 private:
  std::size_t clamp_clock(std::size_t s) const { return cap_ && s > *cap_ ? *cap_ : s; }

  System base_;
  Policy policy_;
  DiscountSchedule schedule_;
  double alpha_;
  std::optional<std::size_t> cap_;
};

/// Maps a κ̂ fitted on the lifted system back to the base system:
/// κ_base(t) = κ̂(t) λ̄_t^{−1/α}.
std::vector<double> kappa_to_base(const std::vector<double>& lifted_kappa, const DiscountSchedule& schedule,
                                  double alpha);

/// Items of the lifted system matching base items: clock 0, no clock offset.
std::vector<SampleItem> lift_items(const LiftedSystem& lifted, const std::vector<SampleItem>& items);

}  // namespace issprobe
