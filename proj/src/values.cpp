#include "issprobe/values.hpp"

#include "issprobe/errors.hpp"

#include <cmath>
#include <limits>

namespace issprobe {

namespace {

// Horner evaluation of Σ_t λ̄'_t r_t along a trajectory whose first input is
// given. λ̄' is the schedule already shifted to the start time.
double horner(const ValueQuery& q, const DiscountSchedule& shifted, const RewardSequence& rewards,
              const std::vector<StepRecord>& traj, std::vector<double>* terms) {
  const std::size_t T = traj.size() - 1;
  double acc = 0.0;
  for (std::size_t k = T + 1; k-- > 0;) {
    const double r = rewards.at(k)(traj[k].state, traj[k].input);
    acc = k == T ? r : r + shifted.lambda_at(k + 1) * acc;
  }
  if (terms) {
    terms->resize(T + 1);
    for (std::size_t k = 0; k <= T; ++k) {
      (*terms)[k] = shifted.cumulative(k) * rewards.at(k)(traj[k].state, traj[k].input);
    }
  }
  (void)q;
  return acc;
}

// Closed loop from x with the first input overridden by u0 (when given).
std::vector<StepRecord> first_input_loop(const ValueQuery& q, const Vec& x, const Vec* u0, std::size_t T) {
  if (!u0) return closed_loop(q.system, q.policy, x, T, q.start_time);
  if (!q.system.domain().contains(x)) throw DomainEscape(0);
  std::vector<StepRecord> traj;
  traj.reserve(T + 1);
  traj.push_back({x, *u0});
  if (T == 0) return traj;
  auto rest = closed_loop(q.system, q.policy, q.system.step(x, *u0), T - 1, q.start_time + 1);
  for (auto& rec : rest) traj.push_back(std::move(rec));
  return traj;
}

ValueResult evaluate(const ValueQuery& q, const Vec& x, const Vec* u0) {
  const Truncation tr = certify_truncation(q);
  const DiscountSchedule shifted = shift(q.schedule, q.start_time);
  const RewardSequence rewards = q.reward.shifted(q.start_time);
  ValueResult res;
  res.truncation_T = tr.T;
  res.tail_bound = tr.tail_bound;
  res.term_count = tr.T + 1;
  if (tr.reward_bound == 0.0 && !q.keep_terms) {
    // Every reward vanishes on the domain; only the domain check remains meaningful.
    if (!q.system.domain().contains(x)) throw DomainEscape(0);
    return res;
  }
  const auto traj = first_input_loop(q, x, u0, tr.T);
  res.value = horner(q, shifted, rewards, traj, q.keep_terms ? &res.terms : nullptr);
  return res;
}

}  // namespace

Truncation certify_truncation(const ValueQuery& q) {
  if (!(q.eps > 0.0)) throw InvalidParameter("value eps must be positive");
  const DiscountSchedule shifted = shift(q.schedule, q.start_time);
  Truncation tr;
  tr.reward_bound = q.reward.shifted(q.start_time).abs_bound(q.system.domain(), q.system.input_dim());
  const double eps_tail = tr.reward_bound > 0.0 ? q.eps / tr.reward_bound : std::numeric_limits<double>::infinity();
  const ScheduleMass m = mass(shifted, eps_tail);
  if (!m.proper) throw ImproperSchedule("schedule " + q.schedule.label() + " has no tail certificate");
  tr.T = m.truncation_T;
  tr.tail_bound = tr.reward_bound * m.tail_mass;
  return tr;
}

ValueResult value(const ValueQuery& q, const Vec& x) { return evaluate(q, x, nullptr); }

ValueResult q_value(const ValueQuery& q, const Vec& x, const Vec& u) { return evaluate(q, x, &u); }

std::vector<double> value_batch(const ValueQuery& q, const std::vector<Vec>& xs, Exec exec) {
  return map_indexed(xs.size(), exec, [&](std::size_t i) { return value(q, xs[i]).value; });
}

PerformanceDifference performance_difference(const System& system, const Policy& pi, const Policy& pi_prime,
                                             const RewardSequence& reward, const DiscountSchedule& schedule,
                                             const Vec& x0_prime, double eps) {
  ValueQuery base{system, pi, reward, schedule, 0, eps, false};
  ValueQuery prime{system, pi_prime, reward, schedule, 0, eps, false};
  PerformanceDifference pd;
  pd.v_prime = value(prime, x0_prime).value;
  pd.v_base = value(base, x0_prime).value;
  pd.lhs = pd.v_prime - pd.v_base;

  const std::size_t N = certify_truncation(base).T;
  pd.truncation_T = N;
  const DiscountSchedule finite = truncate(schedule, N);
  const auto traj = closed_loop(system, pi_prime, x0_prime, N);

  pd.terms.assign(N + 1, 0.0);
  for (std::size_t t = 0; t <= N; ++t) {
    const double weight = finite.cumulative(t);
    if (weight == 0.0) continue;
    ValueQuery qt{system, pi, reward, finite, t, eps, false};
    const Vec& xt = traj[t].state;
    const Vec u_prime = pi_prime.act_at(t, xt);
    const Vec u_base = pi.act_at(t, xt);
    if (u_prime == u_base) continue;
    pd.terms[t] = weight * (q_value(qt, xt, u_prime).value - q_value(qt, xt, u_base).value);
  }
  for (double term : pd.terms) pd.decomposition_sum += term;
  pd.residual = std::abs(pd.lhs - pd.decomposition_sum);
  return pd;
}

}  // namespace issprobe
