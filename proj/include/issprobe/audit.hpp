#pragma once

#include "issprobe/dynamics.hpp"
#include "issprobe/kernels.hpp"
#include "issprobe/rewards.hpp"
#include "issprobe/schedules.hpp"
#include "issprobe/stability.hpp"
#include "issprobe/values.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace issprobe {

enum class HolderMode { value_in_x, q_in_du_local };
std::string to_string(HolderMode mode);

struct HolderOptions {
  HolderMode mode = HolderMode::value_in_x;
  double alpha = 1.0;
  /// Input exponent; the q mode measures with αρ.
  double rho = 1.0;
  double r_local = 0.1;
  double delta_min = 1e-8;
  Exec exec = Exec::parallel;
};

struct HolderEstimate {
  double C_hat = 0.0;
  double exponent = 1.0;
  HolderMode mode = HolderMode::value_in_x;
  std::size_t witness = 0;
  std::pair<Vec, Vec> witness_pair;
  std::size_t n_used = 0;
  std::size_t n_excluded = 0;
};

/// value_in_x: pairs are (x, y) and ratios |V(x) − V(y)| / ‖x − y‖^α.
/// q_in_du_local: pairs are (x, δu) and ratios
/// |Q(x, π(x) + δu) − Q(x, π(x))| / ‖δu‖^{αρ} for δ_min <= ‖δu‖ <= r_local.
HolderEstimate holder_of_value(const ValueQuery& query, const std::vector<std::pair<Vec, Vec>>& pairs,
                               const HolderOptions& options = {});

/// Uniform pairs in the shrunk domain.
std::vector<std::pair<Vec, Vec>> sample_state_pairs(const System& system, std::size_t n, std::uint64_t seed,
                                                    double shrink = 0.5);
/// States in the shrunk domain with input offsets of norm in [r_local/100, r_local].
std::vector<std::pair<Vec, Vec>> sample_input_offsets(const System& system, std::size_t n, std::uint64_t seed,
                                                      double r_local = 0.1, double shrink = 0.5);

enum class Direction { forward, reverse, pdl };
enum class Verdict { consistent, violated, inconclusive };
std::string to_string(Direction d);
std::string to_string(Verdict v);

struct EquivalenceReport {
  Direction direction = Direction::forward;
  double predicted = 0.0;
  double measured = 0.0;
  double margin = 0.0;  // measured / predicted
  std::string schedule;
  std::string reward_class;
  std::string member;
  std::string mode;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

/// max(1, L): the constants assume an L-Lipschitz policy with L >= 1.
double effective_lipschitz(double L);
/// 2(1 + L)(1 + c1²)
double c2_constant(double c1, double L);
/// c2 (‖κ^α‖₁ + 1)
double c3_constant(double c1, double L, double kappa_alpha_l1);

struct ForwardOptions {
  double tol = 1e-6;
  double eps = kDefaultValueEps;
  std::size_t probe_members = 8;
  std::uint64_t probe_seed = 1;
  bool check_q = true;
  Exec exec = Exec::parallel;
};

/// Predicted C c2 ‖λ̄‖₁ E_{P_λ̄}[κ^α] against measured Hölder constants of V and
/// of δu ↦ Q, one report per (schedule, member, mode).
std::vector<EquivalenceReport> forward_check(const System& system, const Policy& policy,
                                             const GainEnvelope& envelope, const RewardClass& cls,
                                             const std::vector<DiscountSchedule>& schedules,
                                             const std::vector<std::pair<Vec, Vec>>& value_pairs,
                                             const std::vector<std::pair<Vec, Vec>>& input_points,
                                             const ForwardOptions& options = {});

/// Predicted Hölder constant for one schedule: C c2 ‖λ̄‖₁ E_{P_λ̄}[κ^α].
double forward_prediction(const GainEnvelope& envelope, double C, double alpha, double L,
                          const DiscountSchedule& schedule);

struct ReverseStep {
  double tau = 0.0;
  double value_gap = 0.0;  // sup_r |V^{π,r}(x0) − V^{π',r}(x0')| under λ^{(t)}
  double rhs = 0.0;        // C c3 ‖λ̄‖₁ (E_{κ^α⋆λ̄}[‖δu‖^{αρ}] + E_{λ̄}[κ^α] ‖δx‖^α)
  double deviation_bound = 0.0;
  bool gap_within_rhs = true;
};

struct ReverseReport {
  std::size_t t = 0;
  double deviation_bound = 0.0;    // at the smallest τ
  double closed_form_bound = 0.0;  // ½ (4 c3 / c)^{1/α} [max_{k<=t} ‖δu_k‖^ρ + κ(t) ‖δx‖]
  double measured_deviation = 0.0;
  std::vector<ReverseStep> per_tau;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

struct ReverseOptions {
  double tol = 1e-6;
  double L = 0.0;
};

/// Deviation bound at time t recovered from value gaps under the schedules
/// λ_k = τ^{−1} (k <= t), 0 afterwards.
ReverseReport reverse_extract(const System& system, const Policy& policy, const RewardClass& cls,
                              const GainEnvelope& envelope, const Vec& x0, const PerturbationPlan& plan,
                              std::size_t t, const std::vector<double>& tau_list, const ReverseOptions& options = {});

/// The λ^{(t)} probe schedule.
DiscountSchedule reverse_schedule(std::size_t t, double tau);

struct CancellationReport {
  std::size_t term_count = 0;
  double value_nominal = 0.0;
  double value_perturbed = 0.0;
  double max_deviation = 0.0;
  double min_deviation = 0.0;
  std::vector<double> terms;
};

/// Negation system, r(x) = x, schedule finite_horizon(2H − 1) (2H terms).
CancellationReport cancellation_demo(std::size_t H, double x0, double dx);

struct SupValueWitness {
  Vec x;
  double w = 0.0;
  Vec x_next;
  double w_next = 0.0;
};

struct SupValueReport {
  std::vector<SupValueWitness> witnesses;
  std::size_t grid_points = 0;
  Vec corner;
  /// Largest distance to the target corner after `settle_steps` closed-loop steps.
  double final_distance = 0.0;
  std::size_t settle_steps = 0;
};

/// W(x) = sup over the unit linear class of V^{π,r}_λ(x) on the projection
/// system steered toward the upper corner; reports grid points where W grows
/// along the closed loop.
SupValueReport sup_value_not_lyapunov_demo(const Vec& box_lo, const Vec& box_hi, const DiscountSchedule& schedule,
                                           std::size_t grid_per_axis = 11, double gain = 0.5,
                                           double eps = kDefaultValueEps);

/// sup_{‖v‖=1} vᵀ Σ λ̄_t x_t on the closed loop from x.
double sup_linear_value(const System& system, const Policy& policy, const DiscountSchedule& schedule,
                        const Vec& x, double eps = kDefaultValueEps);

}  // namespace issprobe
