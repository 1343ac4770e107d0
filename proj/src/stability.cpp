#include "issprobe/stability.hpp"

#include "issprobe/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace issprobe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Fitted constants are inflated by this factor so the envelope covers its own
// witnesses despite rounding in the products.
constexpr double kInflation = 1.0 + 1e-10;

double log_uniform(Rng& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

bool is_pure_state(const SampleItem& item) { return !item.plan.has_input_offsets() && item.plan.state_offset_norm() > 0.0; }
bool is_pure_input(const SampleItem& item) { return item.plan.state_offset_norm() == 0.0 && item.plan.has_input_offsets(); }

}  // namespace

double GainEnvelope::kappa_at(std::size_t t) const {
  if (kappa.empty()) return 1.0;
  return t < kappa.size() ? kappa[t] : kappa.back();
}

double GainEnvelope::kappa_alpha_l1(double alpha) const {
  double s = 0.0;
  for (double k : kappa) s += gain_pow(k, alpha);
  return s;
}

double GainEnvelope::bound(std::size_t t, double dx_norm, double du_max) const {
  return c1 * kappa_at(t) * dx_norm + c1 * gain_pow(du_max, rho);
}

std::vector<SampleItem> sample_gain_items(const System& system, const GainSamplerSpec& spec, std::size_t horizon) {
  const Box start = system.domain().shrunk(spec.shrink);
  const int n = system.state_dim();
  const int m = system.input_dim();
  std::vector<SampleItem> items;
  items.reserve(spec.n_state + spec.n_input + spec.n_mixed);
  auto input_plan = [&](Rng& rng) {
    const Vec du = log_uniform(rng, spec.input_min, spec.input_max) * rng.unit_vector(m);
    return std::vector<Vec>(horizon, du);
  };
  for (std::size_t i = 0; i < spec.n_state; ++i) {
    Rng rng(derive_seed(spec.seed, 1, i));
    Vec x0 = rng.uniform_in(start);
    Vec dx = log_uniform(rng, spec.state_min, spec.state_max) * rng.unit_vector(n);
    items.push_back({std::move(x0), PerturbationPlan::state(std::move(dx))});
  }
  for (std::size_t i = 0; i < spec.n_input; ++i) {
    Rng rng(derive_seed(spec.seed, 2, i));
    Vec x0 = rng.uniform_in(start);
    items.push_back({std::move(x0), PerturbationPlan::input(n, input_plan(rng))});
  }
  for (std::size_t i = 0; i < spec.n_mixed; ++i) {
    Rng rng(derive_seed(spec.seed, 3, i));
    Vec x0 = rng.uniform_in(start);
    Vec dx = log_uniform(rng, spec.state_min, spec.state_max) * rng.unit_vector(n);
    items.push_back({std::move(x0), PerturbationPlan{std::move(dx), input_plan(rng)}});
  }
  return items;
}

GainFit estimate_gains(const System& system, const Policy& policy, const std::vector<SampleItem>& items,
                       std::size_t horizon, const GainOptions& options) {
  if (horizon < 1) throw InvalidParameter("estimate_gains horizon must be at least 1");
  if (options.rho_grid.empty()) throw InvalidParameter("rho grid is empty");
  if (std::none_of(items.begin(), items.end(), is_pure_state)) {
    throw InvalidParameter("sampler must provide at least one pure state perturbation");
  }
  if (std::none_of(items.begin(), items.end(), is_pure_input)) {
    throw InvalidParameter("sampler must provide at least one pure input perturbation");
  }

  GainFit fit;
  fit.trajectories.resize(items.size());
  run_indexed(items.size(), options.exec, [&](std::size_t i) {
    fit.trajectories[i] = rollout(system, policy, items[i].x0, items[i].plan, horizon);
  });

  // κ from pure-state pairs, right running max, normalized at t = 0.
  std::vector<double> raw(horizon + 1, 0.0);
  std::vector<std::size_t> raw_item(horizon + 1, 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!is_pure_state(items[i])) continue;
    const double dx = items[i].plan.state_offset_norm();
    for (std::size_t t = 0; t <= horizon; ++t) {
      const double r = fit.trajectories[i].deviations[t] / dx;
      if (r > raw[t]) {
        raw[t] = r;
        raw_item[t] = i;
      }
    }
  }
  std::vector<double> mono(raw);
  std::vector<std::size_t> mono_item(raw_item);
  std::vector<std::size_t> mono_t(horizon + 1);
  for (std::size_t t = 0; t <= horizon; ++t) mono_t[t] = t;
  for (std::size_t t = horizon; t-- > 0;) {
    if (mono[t + 1] > mono[t]) {
      mono[t] = mono[t + 1];
      mono_item[t] = mono_item[t + 1];
      mono_t[t] = mono_t[t + 1];
    }
  }
  fit.c1_state = mono[0];
  {
    const std::size_t i = mono_item[0];
    const auto& tr = fit.trajectories[i];
    fit.state_witness = {i, mono_t[0], items[i].plan.state_offset_norm(), 0.0, tr.deviations[mono_t[0]],
                         tr.max_deviation(), fit.c1_state};
  }
  if (!(fit.c1_state <= options.c1_cap)) {
    const std::size_t i = fit.state_witness.item;
    throw EnvelopeInfeasible("state gain " + std::to_string(fit.c1_state) + " exceeds c1 cap", fit.state_witness,
                             items[i].x0, items[i].plan.initial_offset);
  }
  std::vector<double> kappa(horizon + 1);
  for (std::size_t t = 0; t <= horizon; ++t) kappa[t] = fit.c1_state > 0.0 ? mono[t] / fit.c1_state : 0.0;
  kappa[0] = 1.0;

  // Smallest c1 per ρ over input and mixed pairs.
  fit.c1_by_rho.assign(options.rho_grid.size(), 0.0);
  std::vector<GainWitness> worst(options.rho_grid.size());
  for (std::size_t g = 0; g < options.rho_grid.size(); ++g) {
    const double rho = options.rho_grid[g];
    double need = fit.c1_state;
    for (std::size_t i = 0; i < items.size() && std::isfinite(need); ++i) {
      if (is_pure_state(items[i])) continue;
      const auto& plan = items[i].plan;
      const double dx = plan.state_offset_norm();
      for (std::size_t t = 0; t <= horizon; ++t) {
        const double dev = fit.trajectories[i].deviations[t];
        if (dev == 0.0) continue;
        const double du = plan.max_input_offset_before(t);
        const double denom = kappa[t] * dx + gain_pow(du, rho);
        const double r = denom > 0.0 ? dev / denom : kInf;
        if (r > need) {
          need = r;
          worst[g] = {i, t, dx, du, dev, fit.trajectories[i].max_deviation(), r};
        }
      }
    }
    fit.c1_by_rho[g] = need;
  }

  std::optional<std::size_t> best;
  for (std::size_t g = 0; g < options.rho_grid.size(); ++g) {
    const double c = fit.c1_by_rho[g];
    if (!(c <= options.c1_cap)) continue;
    if (!best) {
      best = g;
      continue;
    }
    const double cb = fit.c1_by_rho[*best];
    const bool tie = std::abs(c - cb) <= 1e-12 * std::max(c, cb);
    if ((tie && options.rho_grid[g] > options.rho_grid[*best]) || (!tie && c < cb)) best = g;
  }
  if (!best) {
    std::size_t g = 0;
    for (std::size_t k = 1; k < worst.size(); ++k) {
      if (worst[k].ratio < worst[g].ratio) g = k;
    }
    const std::size_t i = worst[g].item;
    throw EnvelopeInfeasible("no exponent in the grid gives c1 within the cap", worst[g], items[i].x0,
                             items[i].plan.initial_offset);
  }
  fit.input_witness = worst[*best];
  fit.envelope.c1 = fit.c1_by_rho[*best] * kInflation;
  fit.envelope.rho = options.rho_grid[*best];
  fit.envelope.kappa = std::move(kappa);
  return fit;
}

double envelope_violation_ratio(const GainEnvelope& envelope, const std::vector<SampleItem>& items,
                                const std::vector<TrajectoryPair>& trajectories) {
  double worst = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& plan = items[i].plan;
    const auto& dev = trajectories[i].deviations;
    for (std::size_t t = 0; t < dev.size(); ++t) {
      if (dev[t] == 0.0) continue;
      const double b = envelope.bound(t, plan.state_offset_norm(), plan.max_input_offset_before(t));
      worst = std::max(worst, b > 0.0 ? dev[t] / b : kInf);
    }
  }
  return worst;
}

std::string to_string(LyapunovViolation::Kind kind) {
  switch (kind) {
    case LyapunovViolation::Kind::lower_bound:
      return "lower_bound";
    case LyapunovViolation::Kind::upper_bound:
      return "upper_bound";
    case LyapunovViolation::Kind::decrease:
      return "decrease";
  }
  return "unknown";
}

std::vector<LyapunovTriple> sample_lyapunov_triples(const System& system, std::size_t n, std::uint64_t seed,
                                                    double radius, double du_max, double shrink) {
  const Box start = system.domain().shrunk(shrink);
  std::vector<LyapunovTriple> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, 7, i));
    out[i].x = rng.uniform_in(start);
    out[i].xp = system.domain().clamp(out[i].x + radius * rng.uniform() * rng.unit_vector(system.state_dim()));
    out[i].du = du_max * rng.uniform() * rng.unit_vector(system.input_dim());
  }
  return out;
}

LyapunovReport check_lyapunov(const LyapunovCandidate& candidate, const System& system, const Policy& policy,
                              const std::vector<LyapunovTriple>& triples, double tol, Exec exec) {
  if (triples.empty()) throw InvalidParameter("Lyapunov check needs at least one triple");
  if (!candidate.V) throw InvalidParameter("Lyapunov candidate has no V");
  std::vector<std::vector<LyapunovViolation>> found(triples.size());
  run_indexed(triples.size(), exec, [&](std::size_t i) {
    const auto& tr = triples[i];
    const double d = distance(tr.xp, tr.x);
    const double v = candidate.V(tr.xp, tr.x);
    auto record = [&](LyapunovViolation::Kind kind, double lhs, double rhs) {
      if (lhs > rhs + tol) found[i].push_back({kind, i, tr, lhs, rhs});
    };
    record(LyapunovViolation::Kind::lower_bound, candidate.alpha1(d), v);
    record(LyapunovViolation::Kind::upper_bound, v, candidate.alpha2(d));
    const Vec next_p = system.step(tr.xp, policy.act(tr.xp) + tr.du);
    const Vec next = system.step(tr.x, policy.act(tr.x));
    const double lhs = candidate.V(next_p, next) - v;
    const double rhs = -candidate.alpha3(d) + candidate.rho_gain(norm(tr.du));
    record(LyapunovViolation::Kind::decrease, lhs, rhs);
  });
  LyapunovReport report;
  report.n_checked = triples.size();
  for (auto& v : found) {
    for (auto& item : v) report.violations.push_back(std::move(item));
  }
  report.pass = report.violations.empty();
  return report;
}

LiftedSystem::LiftedSystem(System base, Policy policy, DiscountSchedule schedule, double alpha)
    : base_(std::move(base)), policy_(std::move(policy)), schedule_(std::move(schedule)), alpha_(alpha) {
  if (!(alpha_ > 0.0 && alpha_ <= 1.0)) throw InvalidParameter("lifting exponent must lie in (0, 1]");
  cap_ = schedule_.support_end();
  const std::size_t check = cap_ ? *cap_ + 1 : std::max<std::size_t>(schedule_.listed().size() + 2, 64);
  if (!schedule_.nonincreasing(check)) throw InvalidParameter("lifting requires a nonincreasing schedule");
}

double LiftedSystem::scale(std::size_t s) const { return gain_pow(schedule_.cumulative(clamp_clock(s)), 1.0 / alpha_); }

LiftedState LiftedSystem::lift(const Vec& x, std::size_t s) const { return {scale(s) * x, clamp_clock(s)}; }

Vec LiftedSystem::lower(const LiftedState& state) const {
  // No clamping here: a clock past the cap has λ̄_s = 0.
  const double k = gain_pow(schedule_.cumulative(state.s), 1.0 / alpha_);
  if (k == 0.0) throw ZeroScale("cannot lower a lifted state at clock " + std::to_string(state.s));
  return state.y / k;
}

LiftedState LiftedSystem::step(const LiftedState& state, const Vec& u) const {
  const Vec x = lower(state);
  const Vec next = base_.step(x, u / scale(state.s));
  const std::size_t s1 = clamp_clock(state.s + 1);
  return {scale(s1) * next, s1};
}

Vec LiftedSystem::act(const LiftedState& state) const { return scale(state.s) * policy_.act(lower(state)); }

double LiftedSystem::reward(const Reward& r, const LiftedState& state, const Vec& u) const {
  const double k = scale(state.s);
  if (k == 0.0) throw ZeroScale("cannot evaluate a lifted reward at clock " + std::to_string(state.s));
  return schedule_.cumulative(state.s) * r(state.y / k, u / k);
}

std::vector<LiftedStep> LiftedSystem::rollout(const Vec& x0, std::size_t horizon) const {
  std::vector<LiftedStep> out;
  out.reserve(horizon + 1);
  LiftedState st = lift(x0, 0);
  for (std::size_t t = 0; t <= horizon; ++t) {
    Vec u = act(st);
    LiftedState next = t < horizon ? step(st, u) : LiftedState{};
    out.push_back({std::move(st), std::move(u)});
    st = std::move(next);
  }
  return out;
}

Vec LiftedSystem::pack(const LiftedState& state) const {
  Vec v(state.y.size() + 1);
  v.head(state.y.size()) = state.y;
  v[state.y.size()] = static_cast<double>(state.s);
  return v;
}

LiftedState LiftedSystem::unpack(const Vec& v) const {
  const long s = std::lround(v[v.size() - 1]);
  return {v.head(v.size() - 1), static_cast<std::size_t>(std::max(0L, s))};
}

System LiftedSystem::as_system() const {
  // y = λ̄_s^{1/α} x ranges over the hull of {0} and k_max times the base box.
  double k_max = 1.0;
  const std::size_t scan = cap_ ? *cap_ : 4096;
  for (std::size_t s = 0; s <= scan; ++s) k_max = std::max(k_max, scale(s));
  const Box& b = base_.domain();
  const int d = b.dim();
  Vec lo(d + 1), hi(d + 1);
  lo.head(d) = (k_max * b.lo).cwiseMin(0.0);
  hi.head(d) = (k_max * b.hi).cwiseMax(0.0);
  lo[d] = -0.5;
  hi[d] = static_cast<double>(cap_ ? *cap_ : std::numeric_limits<std::size_t>::max() / 2) + 0.5;
  LiftedSystem self = *this;
  auto step_fn = [self](const Vec& v, const Vec& u) { return self.pack(self.step(self.unpack(v), u)); };
  return System(base_.label() + "+lifted", d + 1, base_.input_dim(), step_fn, Box(lo, hi));
}

Policy LiftedSystem::as_policy() const {
  LiftedSystem self = *this;
  return Policy([self](const Vec& v) { return self.act(self.unpack(v)); }, policy_.lipschitz_bound(),
                policy_.label() + "+lifted");
}

std::vector<double> kappa_to_base(const std::vector<double>& lifted_kappa, const DiscountSchedule& schedule,
                                  double alpha) {
  std::vector<double> out(lifted_kappa.size());
  for (std::size_t t = 0; t < lifted_kappa.size(); ++t) {
    const double k = gain_pow(schedule.cumulative(t), 1.0 / alpha);
    out[t] = k > 0.0 ? lifted_kappa[t] / k : kInf;
  }
  return out;
}

std::vector<SampleItem> lift_items(const LiftedSystem& lifted, const std::vector<SampleItem>& items) {
  std::vector<SampleItem> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    Vec dx = Vec::Zero(item.plan.initial_offset.size() + 1);
    dx.head(item.plan.initial_offset.size()) = item.plan.initial_offset;
    out.push_back({lifted.pack(lifted.lift(item.x0, 0)), PerturbationPlan{dx, item.plan.input_offsets}});
  }
  return out;
}

}  // namespace issprobe
