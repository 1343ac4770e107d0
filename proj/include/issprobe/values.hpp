#pragma once

#include "issprobe/dynamics.hpp"
#include "issprobe/kernels.hpp"
#include "issprobe/rewards.hpp"
#include "issprobe/schedules.hpp"

#include <cstddef>
#include <vector>

namespace issprobe {

inline constexpr double kDefaultValueEps = 1e-9;

/// Everything needed to evaluate V^{π,r}_{t,λ} and Q^{π,r}_{t,λ}.
struct ValueQuery {
  System system;
  Policy policy;
  RewardSequence reward;
  DiscountSchedule schedule;
  std::size_t start_time = 0;
  double eps = kDefaultValueEps;
  bool keep_terms = false;
};

struct ValueResult {
  double value = 0.0;
  std::size_t truncation_T = 0;
  double tail_bound = 0.0;
  /// Number of summed timesteps (truncation_T + 1).
  std::size_t term_count = 0;
  /// λ̄_t r_t(x_t, u_t), filled when the query asks for it.
  std::vector<double> terms;
};

/// V^{π,r}_{t,λ}(x) on the schedule shifted by the query's start time.
/// Throws ImproperSchedule when the tail cannot be certified.
ValueResult value(const ValueQuery& q, const Vec& x);

/// Q^{π,r}_{t,λ}(x, u) = r_t(x, u) + λ_{t+1} V_{t+1}(f(x, u)). Uses the same
/// truncation index as value(), so q_value(q, x, π_t(x)) == value(q, x).
ValueResult q_value(const ValueQuery& q, const Vec& x, const Vec& u);

/// value() at every state in `xs`.
std::vector<double> value_batch(const ValueQuery& q, const std::vector<Vec>& xs, Exec exec = Exec::parallel);

/// Truncation index and tail bound value() would use for this query.
struct Truncation {
  std::size_t T = 0;
  double tail_bound = 0.0;
  double reward_bound = 0.0;
};
Truncation certify_truncation(const ValueQuery& q);

struct PerformanceDifference {
  double lhs = 0.0;     // V^{π'}(x'_0) − V^{π}(x'_0)
  double v_prime = 0.0;
  double v_base = 0.0;
  std::vector<double> terms;  // λ̄_t [Q_t(x'_t, π'_t(x'_t)) − Q_t(x'_t, π(x'_t))]
  double decomposition_sum = 0.0;
  double residual = 0.0;
  std::size_t truncation_T = 0;
};

/// Performance-difference decomposition along the π' trajectory from x0_prime.
/// The decomposition is computed on the schedule truncated at the certified
/// index, where the telescoping identity is exact; lhs uses the full schedule.
PerformanceDifference performance_difference(const System& system, const Policy& pi, const Policy& pi_prime,
                                             const RewardSequence& reward, const DiscountSchedule& schedule,
                                             const Vec& x0_prime, double eps = kDefaultValueEps);

}  // namespace issprobe
