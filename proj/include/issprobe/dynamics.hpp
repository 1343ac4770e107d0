#pragma once

#include "issprobe/types.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace issprobe {

using StepFn = std::function<Vec(const Vec& x, const Vec& u)>;
using ActFn = std::function<Vec(const Vec& x)>;

/// Deterministic discrete-time system x_{t+1} = f(x_t, u_t) with a compact
/// evaluation domain. Immutable after construction.
class System {
 public:
  System(std::string label, int state_dim, int input_dim, StepFn step, Box domain);

  Vec step(const Vec& x, const Vec& u) const { return step_(x, u); }
  int state_dim() const { return state_dim_; }
  int input_dim() const { return input_dim_; }
  const Box& domain() const { return domain_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  int state_dim_;
  int input_dim_;
  StepFn step_;
  Box domain_;
};

/// Static feedback law with an optional per-timestep override sequence.
/// act_at(t, x) uses the override for t < overrides.size() and the
/// stationary law afterwards.
class Policy {
 public:
  Policy(ActFn act, double lipschitz_bound, std::string label = "policy");

  static Policy zero(int input_dim);
  static Policy constant(Vec u);
  /// u = K x
  static Policy linear(Mat gain);
  /// u = gain * (target - x); the projection example steers with this.
  static Policy toward(Vec target, double gain);

  /// π'_t(x) = π(x) + offsets[t] for t < offsets.size(), π afterwards.
  static Policy offset_by(const Policy& base, const std::vector<Vec>& offsets);
  /// Same as `base` at every step except t = step, where `override_act` is used.
  static Policy override_at(const Policy& base, std::size_t step, ActFn override_act);

  Vec act(const Vec& x) const { return act_(x); }
  Vec act_at(std::size_t t, const Vec& x) const;
  bool time_varying() const { return !overrides_.empty(); }
  double lipschitz_bound() const { return lipschitz_; }
  const std::string& label() const { return label_; }

  /// Largest ratio ‖π(x) − π(y)‖ / ‖x − y‖ over the given point pairs,
  /// used to check the declared bound.
  double sampled_lipschitz(const std::vector<std::pair<Vec, Vec>>& pairs) const;

 private:
  ActFn act_;
  double lipschitz_;
  std::string label_;
  std::vector<ActFn> overrides_;
};

/// Initial offset δx plus a finite sequence of input offsets δu_t; offsets
/// past the end of the sequence are zero.
struct PerturbationPlan {
  Vec initial_offset;
  std::vector<Vec> input_offsets;

  static PerturbationPlan none(int state_dim);
  static PerturbationPlan state(Vec dx);
  static PerturbationPlan input(int state_dim, std::vector<Vec> du);

  Vec input_offset_at(std::size_t t, int input_dim) const;
  /// max_{0 <= k < t} ‖δu_k‖
  double max_input_offset_before(std::size_t t) const;
  /// max_{0 <= k <= t} ‖δu_k‖
  double max_input_offset_through(std::size_t t) const;
  double state_offset_norm() const { return norm(initial_offset); }
  bool has_input_offsets() const;
  bool is_zero() const { return state_offset_norm() == 0.0 && !has_input_offsets(); }
};

struct StepRecord {
  Vec state;
  Vec input;
};

struct TrajectoryPair {
  std::vector<StepRecord> nominal;
  std::vector<StepRecord> perturbed;
  std::vector<double> deviations;

  std::size_t horizon() const { return deviations.empty() ? 0 : deviations.size() - 1; }
  double max_deviation() const;
};

/// Closed-loop states x_0..x_horizon with inputs u_t = π_{t0+t}(x_t) + extra(t).
/// Throws DomainEscape(t) when x_t leaves the domain.
std::vector<StepRecord> closed_loop(const System& system, const Policy& policy, const Vec& x0,
                                    std::size_t horizon, std::size_t start_time = 0);

/// Nominal and perturbed closed-loop trajectories up to t = horizon.
TrajectoryPair rollout(const System& system, const Policy& policy, const Vec& x0,
                       const PerturbationPlan& plan, std::size_t horizon);

struct ClosedLoop {
  System system;
  Policy policy;
};

/// f(x,u) = A1 x + u if x_1 >= 0, A2 x + u otherwise, A1 = c R(θ), A2 = c R(−θ).
System make_piecewise_rotation(double c, double theta);
/// Initial-state pair straddling the switching line: x0 = (ε, 1), x0' = (−ε, 1).
std::pair<Vec, Vec> rotation_split_pair(double eps);

/// f(x,u) = clamp(x + u, lo, hi). The domain is the box itself.
System make_projection_system(const Vec& box_lo, const Vec& box_hi);

/// Scalar f(x,u) = −x + u packaged with π ≡ 0.
ClosedLoop make_negation_system();

/// f(x,u) = A x + u on `domain`.
System make_linear_system(const Mat& A, const Box& domain, std::string label = "linear");
/// f(x,u) = a x + u in dimension `dim` on [−10, 10]^dim.
System make_scalar_linear(double a, int dim = 1);
/// f ≡ 0.
System make_zero_system(int dim);

}  // namespace issprobe
