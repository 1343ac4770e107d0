#pragma once

#include "issprobe/kernels.hpp"
#include "issprobe/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace issprobe {

using RewardFn = std::function<double(const Vec& x, const Vec& u)>;

/// Reward r(x, u) with a declared (C, α)-Hölder bound.
class Reward {
 public:
  Reward(RewardFn fn, double holder_C, double holder_alpha, std::string label);

  double operator()(const Vec& x, const Vec& u) const { return fn_(x, u); }
  double holder_C() const { return C_; }
  double holder_alpha() const { return alpha_; }
  const std::string& label() const { return label_; }

  Reward negated() const;
  /// Bound on |r| over the state box: |r(center, 0)| + C radius^α.
  double abs_bound(const Box& box, int input_dim) const;

 private:
  RewardFn fn_;
  double C_;
  double alpha_;
  std::string label_;
};

/// C sign(vᵀx)|vᵀx|^α
Reward make_signed_power_reward(const Vec& v, double C, double alpha);
/// C vᵀx
Reward make_linear_reward(const Vec& v, double C = 1.0);
/// ‖x‖
Reward make_norm_reward();
Reward make_zero_reward();
/// C‖x − anchor‖^α, the extremal (C, α)-Hölder function around `anchor`.
Reward make_distance_reward(const Vec& anchor, double C, double alpha);

/// Rewards r_t indexed by timestep: listed steps first, `tail` afterwards.
class RewardSequence {
 public:
  RewardSequence(Reward constant);  // NOLINT(google-explicit-constructor)
  RewardSequence(std::vector<Reward> steps, Reward tail);

  const Reward& at(std::size_t t) const { return t < steps_.size() ? steps_[t] : tail_; }
  /// Sequence starting at absolute time `t`.
  RewardSequence shifted(std::size_t t) const;
  double abs_bound(const Box& box, int input_dim) const;
  bool is_constant() const { return steps_.empty(); }
  std::string label() const;

 private:
  std::vector<Reward> steps_;
  Reward tail_;
};

struct SupResult {
  double value = 0.0;
  /// Member attaining `value` (for parametric classes, the maximizer).
  std::optional<Reward> witness;
  /// False when the value is an enumeration underestimate of the true sup.
  bool exact = false;
};

/// Family of Hölder rewards with a supremum oracle.
class RewardClass {
 public:
  using SupFn = std::function<SupResult(const Vec& x, const Vec& u, const Vec& y, const Vec& w)>;
  /// sup_r |Σ_k weights_k (r(xs_k, us_k) − r(ys_k, ws_k))|
  using WeightedSupFn = std::function<SupResult(const std::vector<double>& weights, const std::vector<Vec>& xs,
                                                const std::vector<Vec>& us, const std::vector<Vec>& ys,
                                                const std::vector<Vec>& ws)>;
  using ProbeFn = std::function<std::vector<Reward>(std::size_t n, std::uint64_t seed)>;

  struct Traits {
    std::string label;
    int state_dim = 1;
    double C = 1.0;
    double alpha = 1.0;
    double c = 0.0;  // declared sensitivity
    bool symmetric = false;
    bool exact_oracle = false;
  };

  /// Finite class; the sup oracle enumerates members and is exact.
  static RewardClass finite(Traits traits, std::vector<Reward> members);
  /// Parametric class described by its oracles.
  static RewardClass parametric(Traits traits, SupFn sup, WeightedSupFn weighted_sup, ProbeFn probes);

  SupResult sup(const Vec& x, const Vec& u, const Vec& y, const Vec& w) const { return sup_(x, u, y, w); }
  SupResult sup_weighted(const std::vector<double>& weights, const std::vector<Vec>& xs, const std::vector<Vec>& us,
                         const std::vector<Vec>& ys, const std::vector<Vec>& ws) const {
    return weighted_sup_(weights, xs, us, ys, ws);
  }
  /// Members of a finite class, or `n` deterministic samples of a parametric one.
  std::vector<Reward> probe_members(std::size_t n, std::uint64_t seed) const;

  bool is_finite() const { return finite_; }
  const std::vector<Reward>& members() const { return members_; }
  const Traits& traits() const { return traits_; }
  const std::string& label() const { return traits_.label; }
  double C() const { return traits_.C; }
  double alpha() const { return traits_.alpha; }
  double declared_c() const { return traits_.c; }
  bool symmetric() const { return traits_.symmetric; }
  bool exact_oracle() const { return traits_.exact_oracle; }

 private:
  RewardClass() = default;

  Traits traits_;
  bool finite_ = false;
  std::vector<Reward> members_;
  SupFn sup_;
  WeightedSupFn weighted_sup_;
  ProbeFn probes_;
};

/// {C sign(vᵀx)|vᵀx|^α : v ∈ basis} together with the negations. Declared
/// sensitivity d^{−α/2}.
RewardClass make_signed_power_class(const std::vector<Vec>& basis, double C, double alpha);
RewardClass make_signed_power_class(int dim, double C, double alpha);
/// {x ↦ C vᵀx : ‖v‖ = 1}, exact oracle sup = C‖x − y‖, (C, 1, 1)-sensitive.
RewardClass make_linear_class(int dim, double C = 1.0);
/// All (C, α)-Hölder state rewards; exact oracle C‖x − y‖^α, (C, α, 1)-sensitive.
RewardClass make_holder_class(int dim, double C, double alpha);
/// Single fixed reward as a (non-symmetric) class.
RewardClass make_singleton_class(const Reward& r, int dim);

/// (x, u) and (y, w) points for sensitivity and Hölder checks.
struct PointPair {
  Vec x, u, y, w;
};

std::vector<PointPair> sample_box_pairs(const Box& state_box, int input_dim, std::size_t n, std::uint64_t seed);

struct SensitivityOptions {
  double delta_min = 1e-8;
  double tol = 1e-9;
  std::size_t probe_members = 32;
  std::uint64_t probe_seed = 1;
  Exec exec = Exec::parallel;
};

struct SensitivityReport {
  double c_hat = 0.0;  // min_pairs sup / (C ‖x − y‖^α)
  double C_hat = 0.0;  // max Hölder ratio over probed members
  std::optional<double> alpha_fit;
  double declared_c = 0.0;
  bool violation = false;
  bool sup_exact = false;  // false: c_hat is computed from an underestimated sup
  std::size_t n_used = 0;
  std::size_t n_excluded = 0;
  std::size_t c_witness = 0;  // pair index attaining c_hat
  std::size_t C_witness = 0;  // pair index attaining C_hat
  std::string C_witness_member;
};

SensitivityReport certify_sensitivity(const RewardClass& cls, const std::vector<PointPair>& pairs,
                                      const SensitivityOptions& options = {});

/// Parses `signed_power:d=2,alpha=0.5,C=1`, `linear:d=2,C=1`, `holder:d=2,alpha=1,C=1`, `norm[:d=2]`.
RewardClass parse_reward_class(const std::string& spec);
/// Parses `linear:v=1;0,C=1`, `signed_power:v=1;0,alpha=0.5,C=1`, `norm`, `zero`.
Reward parse_reward(const std::string& spec);

}  // namespace issprobe
