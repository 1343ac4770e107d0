#include "issprobe/audit.hpp"

#include "issprobe/errors.hpp"
#include "issprobe/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace issprobe {

std::string to_string(HolderMode mode) {
  return mode == HolderMode::value_in_x ? "value_in_x" : "q_in_du_local";
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::forward:
      return "forward";
    case Direction::reverse:
      return "reverse";
    case Direction::pdl:
      return "pdl";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent:
      return "consistent";
    case Verdict::violated:
      return "violated";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

HolderEstimate holder_of_value(const ValueQuery& query, const std::vector<std::pair<Vec, Vec>>& pairs,
                               const HolderOptions& options) {
  if (pairs.empty()) throw DegeneratePairs("no sample pairs supplied");
  const bool q_mode = options.mode == HolderMode::q_in_du_local;
  const double exponent = q_mode ? options.alpha * options.rho : options.alpha;
  const auto ratios = map_indexed(pairs.size(), options.exec, [&](std::size_t i) {
    const auto& [a, b] = pairs[i];
    if (q_mode) {
      const double r = norm(b);
      if (r < options.delta_min || r > options.r_local) return std::numeric_limits<double>::quiet_NaN();
      const Vec u = query.policy.act_at(query.start_time, a);
      const double diff = q_value(query, a, u + b).value - q_value(query, a, u).value;
      return std::abs(diff) / std::pow(r, exponent);
    }
    const double d = distance(a, b);
    if (d < options.delta_min) return std::numeric_limits<double>::quiet_NaN();
    return std::abs(value(query, a).value - value(query, b).value) / std::pow(d, exponent);
  });
  HolderEstimate est;
  est.mode = options.mode;
  est.exponent = exponent;
  for (double r : ratios) (std::isnan(r) ? est.n_excluded : est.n_used)++;
  const ArgExtreme best = argmax(ratios);
  if (!best.found()) throw DegeneratePairs("every sampled pair was excluded");
  est.C_hat = best.value;
  est.witness = best.index;
  est.witness_pair = pairs[best.index];
  return est;
}

std::vector<std::pair<Vec, Vec>> sample_state_pairs(const System& system, std::size_t n, std::uint64_t seed,
                                                    double shrink) {
  const Box box = system.domain().shrunk(shrink);
  std::vector<std::pair<Vec, Vec>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, 11, i));
    out[i].first = rng.uniform_in(box);
    out[i].second = rng.uniform_in(box);
  }
  return out;
}

std::vector<std::pair<Vec, Vec>> sample_input_offsets(const System& system, std::size_t n, std::uint64_t seed,
                                                      double r_local, double shrink) {
  const Box box = system.domain().shrunk(shrink);
  std::vector<std::pair<Vec, Vec>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, 12, i));
    out[i].first = rng.uniform_in(box);
    const double r = r_local * std::pow(10.0, -2.0 * rng.uniform());
    out[i].second = r * rng.unit_vector(system.input_dim());
  }
  return out;
}

double effective_lipschitz(double L) { return std::max(1.0, L); }

double c2_constant(double c1, double L) { return 2.0 * (1.0 + effective_lipschitz(L)) * (1.0 + c1 * c1); }

double c3_constant(double c1, double L, double kappa_alpha_l1) { return c2_constant(c1, L) * (kappa_alpha_l1 + 1.0); }

double forward_prediction(const GainEnvelope& envelope, double C, double alpha, double L,
                          const DiscountSchedule& schedule) {
  const ScheduleMass m = mass(schedule, kDefaultTailEps);
  if (!m.proper) throw ImproperSchedule("forward check needs a proper schedule, got " + schedule.label());
  const TimestepDistribution p = timestep_distribution(schedule);
  const double e = p.expectation([&](std::size_t t) { return gain_pow(envelope.kappa_at(t), alpha); });
  return C * c2_constant(envelope.c1, L) * m.l1 * e;
}

namespace {

EquivalenceReport forward_report(double predicted, double measured, double tol) {
  EquivalenceReport rep;
  rep.direction = Direction::forward;
  rep.predicted = predicted;
  rep.measured = measured;
  rep.margin = predicted > 0.0 ? measured / predicted : (measured > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  rep.verdict = measured <= predicted * (1.0 + tol) ? Verdict::consistent : Verdict::violated;
  return rep;
}

}  // namespace

std::vector<EquivalenceReport> forward_check(const System& system, const Policy& policy,
                                             const GainEnvelope& envelope, const RewardClass& cls,
                                             const std::vector<DiscountSchedule>& schedules,
                                             const std::vector<std::pair<Vec, Vec>>& value_pairs,
                                             const std::vector<std::pair<Vec, Vec>>& input_points,
                                             const ForwardOptions& options) {
  const auto members = cls.probe_members(options.probe_members, options.probe_seed);
  const double L = policy.lipschitz_bound();
  std::vector<EquivalenceReport> out;
  for (const auto& schedule : schedules) {
    const double predicted = forward_prediction(envelope, cls.C(), cls.alpha(), L, schedule);
    for (const auto& member : members) {
      ValueQuery q{system, policy, RewardSequence(member), schedule, 0, options.eps, false};
      HolderOptions ho;
      ho.alpha = cls.alpha();
      ho.rho = envelope.rho;
      ho.exec = options.exec;
      const HolderEstimate hv = holder_of_value(q, value_pairs, ho);
      EquivalenceReport rv = forward_report(predicted, hv.C_hat, options.tol);
      rv.schedule = schedule.label();
      rv.reward_class = cls.label();
      rv.member = member.label();
      rv.mode = to_string(HolderMode::value_in_x);
      out.push_back(std::move(rv));
      if (!options.check_q || input_points.empty()) continue;
      ho.mode = HolderMode::q_in_du_local;
      const HolderEstimate hq = holder_of_value(q, input_points, ho);
      EquivalenceReport rq = forward_report(predicted, hq.C_hat, options.tol);
      rq.schedule = schedule.label();
      rq.reward_class = cls.label();
      rq.member = member.label();
      rq.mode = to_string(HolderMode::q_in_du_local);
      out.push_back(std::move(rq));
    }
  }
  return out;
}

DiscountSchedule reverse_schedule(std::size_t t, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw ImproperParameters("tau must lie in (0, 1)");
  return DiscountSchedule::explicit_list(std::vector<double>(t, 1.0 / tau));
}

ReverseReport reverse_extract(const System& system, const Policy& policy, const RewardClass& cls,
                              const GainEnvelope& envelope, const Vec& x0, const PerturbationPlan& plan,
                              std::size_t t, const std::vector<double>& tau_list, const ReverseOptions& options) {
  if (tau_list.empty()) throw InvalidParameter("tau list is empty");
  for (double tau : tau_list) {
    if (!(tau > 0.0 && tau < 1.0)) throw ImproperParameters("tau must lie in (0, 1)");
  }
  if (t < 1) throw InvalidParameter("reverse extraction needs t >= 1");

  const double C = cls.C();
  const double alpha = cls.alpha();
  const double c = cls.declared_c();
  const double rho = envelope.rho;
  const double dx = plan.state_offset_norm();
  const double c3 = c3_constant(envelope.c1, options.L, envelope.kappa_alpha_l1(alpha));

  const TrajectoryPair pair = rollout(system, policy, x0, plan, t);
  std::vector<Vec> xs, us, ys, ws;
  std::vector<double> S(t + 1);
  for (std::size_t k = 0; k <= t; ++k) {
    xs.push_back(pair.nominal[k].state);
    us.push_back(pair.nominal[k].input);
    ys.push_back(pair.perturbed[k].state);
    ws.push_back(pair.perturbed[k].input);
    S[k] = cls.sup(xs[k], us[k], ys[k], ws[k]).value;
  }

  ReverseReport rep;
  rep.t = t;
  rep.measured_deviation = pair.deviations[t];
  rep.closed_form_bound = c > 0.0 ? 0.5 * std::pow(4.0 * c3 / c, 1.0 / alpha) *
                                        (gain_pow(plan.max_input_offset_through(t), rho) + envelope.kappa_at(t) * dx)
                                  : std::numeric_limits<double>::infinity();

  std::vector<double> taus(tau_list);
  std::sort(taus.begin(), taus.end(), std::greater<>());
  for (double tau : taus) {
    const DiscountSchedule sched = reverse_schedule(t, tau);
    const double l1 = mass(sched, kDefaultTailEps).l1;
    const TimestepDistribution p = timestep_distribution(sched, t);
    const double e_kappa = p.expectation([&](std::size_t k) { return gain_pow(envelope.kappa_at(k), alpha); });
    const TimestepDistribution conv = convolve_kappa(
        sched, [&](std::size_t k) { return envelope.kappa_at(k); }, alpha, t);
    const double e_du = conv.expectation([&](std::size_t k) {
      return gain_pow(norm(plan.input_offset_at(k, system.input_dim())), alpha * rho);
    });

    ReverseStep step;
    step.tau = tau;
    step.rhs = C * c3 * l1 * (e_du + e_kappa * gain_pow(dx, alpha));
    std::vector<double> weights(t + 1);
    for (std::size_t k = 0; k <= t; ++k) weights[k] = sched.cumulative(k);
    step.value_gap = cls.sup_weighted(weights, xs, us, ys, ws).value;
    step.gap_within_rhs = step.value_gap <= step.rhs * (1.0 + options.tol);

    double s_bound = std::pow(tau, static_cast<double>(t)) * step.rhs;
    for (std::size_t k = 0; k < t; ++k) s_bound += std::pow(tau, static_cast<double>(t - k)) * S[k];
    step.deviation_bound =
        C * c > 0.0 ? std::pow(s_bound / (C * c), 1.0 / alpha) : std::numeric_limits<double>::infinity();
    rep.per_tau.push_back(step);
  }
  rep.deviation_bound = rep.per_tau.back().deviation_bound;

  if (!cls.symmetric() || !cls.exact_oracle()) {
    rep.verdict = Verdict::inconclusive;
    rep.note = "class is not symmetric with an exact sup oracle";
  } else {
    rep.verdict = rep.measured_deviation <= rep.deviation_bound * (1.0 + options.tol) ? Verdict::consistent
                                                                                     : Verdict::violated;
  }
  return rep;
}

CancellationReport cancellation_demo(std::size_t H, double x0, double dx) {
  if (H < 1) throw InvalidParameter("cancellation demo needs H >= 1");
  const ClosedLoop neg = make_negation_system();
  const DiscountSchedule sched = DiscountSchedule::finite_horizon(2 * H - 1);
  const Reward r = make_linear_reward(Vec::Ones(1));
  ValueQuery q{neg.system, neg.policy, RewardSequence(r), sched, 0, kDefaultValueEps, true};
  const Vec x = Vec::Constant(1, x0);
  const Vec xp = Vec::Constant(1, x0 + dx);
  const ValueResult vn = value(q, x);
  const ValueResult vp = value(q, xp);
  const TrajectoryPair pair = rollout(neg.system, neg.policy, x, PerturbationPlan::state(Vec::Constant(1, dx)), 2 * H - 1);
  CancellationReport rep;
  rep.term_count = vn.term_count;
  rep.value_nominal = vn.value;
  rep.value_perturbed = vp.value;
  rep.terms = vn.terms;
  rep.max_deviation = pair.max_deviation();
  rep.min_deviation = *std::min_element(pair.deviations.begin(), pair.deviations.end());
  return rep;
}

double sup_linear_value(const System& system, const Policy& policy, const DiscountSchedule& schedule, const Vec& x,
                        double eps) {
  // Every unit linear reward is bounded on the domain by the norm reward's bound.
  ValueQuery q{system, policy, RewardSequence(make_norm_reward()), schedule, 0, eps, false};
  const Truncation tr = certify_truncation(q);
  const auto traj = closed_loop(system, policy, x, tr.T);
  Vec acc = traj[tr.T].state;
  for (std::size_t k = tr.T; k-- > 0;) acc = traj[k].state + schedule.lambda_at(k + 1) * acc;
  return norm(acc);
}

SupValueReport sup_value_not_lyapunov_demo(const Vec& box_lo, const Vec& box_hi, const DiscountSchedule& schedule,
                                           std::size_t grid_per_axis, double gain, double eps) {
  if (grid_per_axis < 2) throw InvalidParameter("grid needs at least two points per axis");
  const System sys = make_projection_system(box_lo, box_hi);
  const Policy pol = Policy::toward(box_hi, gain);
  const int d = sys.state_dim();
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= grid_per_axis;

  std::vector<Vec> grid(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vec x(d);
    std::size_t rem = idx;
    for (int i = 0; i < d; ++i) {
      const double f = static_cast<double>(rem % grid_per_axis) / static_cast<double>(grid_per_axis - 1);
      x[i] = box_lo[i] + f * (box_hi[i] - box_lo[i]);
      rem /= grid_per_axis;
    }
    grid[idx] = std::move(x);
  }

  SupValueReport rep;
  rep.grid_points = total;
  rep.corner = box_hi;
  rep.settle_steps = 200;
  std::vector<SupValueWitness> cell(total);
  std::vector<double> settled(total);
  run_indexed(total, Exec::parallel, [&](std::size_t i) {
    const Vec& x = grid[i];
    const Vec next = sys.step(x, pol.act(x));
    cell[i] = {x, sup_linear_value(sys, pol, schedule, x, eps), next, sup_linear_value(sys, pol, schedule, next, eps)};
    const auto traj = closed_loop(sys, pol, x, rep.settle_steps);
    settled[i] = distance(traj.back().state, box_hi);
  });
  for (std::size_t i = 0; i < total; ++i) {
    if (cell[i].w_next > cell[i].w + 1e-12 * (1.0 + std::abs(cell[i].w))) rep.witnesses.push_back(cell[i]);
    rep.final_distance = std::max(rep.final_distance, settled[i]);
  }
  return rep;
}

}  // namespace issprobe
