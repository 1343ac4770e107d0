#include "issprobe/dynamics.hpp"

#include "issprobe/errors.hpp"

#include <algorithm>
#include <cmath>

namespace issprobe {

System::System(std::string label, int state_dim, int input_dim, StepFn step, Box domain)
    : label_(std::move(label)),
      state_dim_(state_dim),
      input_dim_(input_dim),
      step_(std::move(step)),
      domain_(std::move(domain)) {
  if (state_dim_ <= 0 || input_dim_ <= 0) throw InvalidParameter("system dimensions must be positive");
  if (domain_.dim() != state_dim_) throw InvalidParameter("domain dimension does not match state dimension");
  if (!step_) throw InvalidParameter("system step map is empty");
}

Policy::Policy(ActFn act, double lipschitz_bound, std::string label)
    : act_(std::move(act)), lipschitz_(lipschitz_bound), label_(std::move(label)) {
  if (!act_) throw InvalidParameter("policy map is empty");
  if (!(lipschitz_ >= 0.0)) throw InvalidParameter("Lipschitz bound must be nonnegative");
}

Policy Policy::zero(int input_dim) {
  return Policy([input_dim](const Vec&) { return Vec::Zero(input_dim); }, 0.0, "zero");
}

Policy Policy::constant(Vec u) {
  return Policy([u](const Vec&) { return u; }, 0.0, "constant:" + format_vec(u));
}

Policy Policy::linear(Mat gain) {
  const double lip = gain.size() ? gain.operatorNorm() : 0.0;
  return Policy([gain](const Vec& x) { return Vec(gain * x); }, lip, "linear");
}

Policy Policy::toward(Vec target, double gain) {
  return Policy([target, gain](const Vec& x) { return Vec(gain * (target - x)); }, std::abs(gain),
                "toward:" + format_vec(target));
}

Policy Policy::offset_by(const Policy& base, const std::vector<Vec>& offsets) {
  Policy p = base;
  p.overrides_.clear();
  p.overrides_.reserve(offsets.size());
  for (const auto& du : offsets) {
    p.overrides_.push_back([act = base.act_, du](const Vec& x) { return Vec(act(x) + du); });
  }
  p.label_ = base.label_ + "+offsets";
  return p;
}

Policy Policy::override_at(const Policy& base, std::size_t step, ActFn override_act) {
  Policy p = base;
  p.overrides_.assign(step + 1, base.act_);
  p.overrides_[step] = std::move(override_act);
  p.label_ = base.label_ + "@override" + std::to_string(step);
  return p;
}

Vec Policy::act_at(std::size_t t, const Vec& x) const {
  if (t < overrides_.size()) return overrides_[t](x);
  return act_(x);
}

double Policy::sampled_lipschitz(const std::vector<std::pair<Vec, Vec>>& pairs) const {
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    const double d = distance(x, y);
    if (d <= 0.0) continue;
    worst = std::max(worst, distance(act(x), act(y)) / d);
  }
  return worst;
}

PerturbationPlan PerturbationPlan::none(int state_dim) { return {Vec::Zero(state_dim), {}}; }

PerturbationPlan PerturbationPlan::state(Vec dx) { return {std::move(dx), {}}; }

PerturbationPlan PerturbationPlan::input(int state_dim, std::vector<Vec> du) {
  return {Vec::Zero(state_dim), std::move(du)};
}

Vec PerturbationPlan::input_offset_at(std::size_t t, int input_dim) const {
  if (t < input_offsets.size()) return input_offsets[t];
  return Vec::Zero(input_dim);
}

double PerturbationPlan::max_input_offset_before(std::size_t t) const {
  double m = 0.0;
  for (std::size_t k = 0; k < std::min(t, input_offsets.size()); ++k) m = std::max(m, norm(input_offsets[k]));
  return m;
}

double PerturbationPlan::max_input_offset_through(std::size_t t) const {
  return max_input_offset_before(t + 1);
}

bool PerturbationPlan::has_input_offsets() const {
  return std::any_of(input_offsets.begin(), input_offsets.end(), [](const Vec& v) { return norm(v) > 0.0; });
}

double TrajectoryPair::max_deviation() const {
  return deviations.empty() ? 0.0 : *std::max_element(deviations.begin(), deviations.end());
}

std::vector<StepRecord> closed_loop(const System& system, const Policy& policy, const Vec& x0,
                                    std::size_t horizon, std::size_t start_time) {
  std::vector<StepRecord> out;
  out.reserve(horizon + 1);
  Vec x = x0;
  for (std::size_t t = 0; t <= horizon; ++t) {
    if (!system.domain().contains(x)) throw DomainEscape(t);
    Vec u = policy.act_at(start_time + t, x);
    Vec next = t < horizon ? system.step(x, u) : Vec();
    out.push_back({std::move(x), std::move(u)});
    x = std::move(next);
  }
  return out;
}

TrajectoryPair rollout(const System& system, const Policy& policy, const Vec& x0,
                       const PerturbationPlan& plan, std::size_t horizon) {
  if (horizon < 1) throw InvalidParameter("rollout horizon must be at least 1");
  if (plan.initial_offset.size() != system.state_dim()) {
    throw InvalidParameter("perturbation offset has wrong dimension");
  }
  TrajectoryPair pair;
  pair.nominal = closed_loop(system, policy, x0, horizon);
  pair.perturbed.reserve(horizon + 1);
  pair.deviations.reserve(horizon + 1);

  Vec xp = x0 + plan.initial_offset;
  for (std::size_t t = 0; t <= horizon; ++t) {
    if (!system.domain().contains(xp)) throw DomainEscape(t);
    Vec up = policy.act_at(t, xp) + plan.input_offset_at(t, system.input_dim());
    pair.deviations.push_back(distance(xp, pair.nominal[t].state));
    Vec next = t < horizon ? system.step(xp, up) : Vec();
    pair.perturbed.push_back({std::move(xp), std::move(up)});
    xp = std::move(next);
  }
  return pair;
}

namespace {

Mat rotation(double theta) {
  Mat r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace

System make_piecewise_rotation(double c, double theta) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidParameter("piecewise_rotation: c must lie in (0, 1)");
  if (!(theta > 0.0 && theta <= 1.0)) throw InvalidParameter("piecewise_rotation: theta must lie in (0, 1]");
  const Mat a1 = c * rotation(theta);
  const Mat a2 = c * rotation(-theta);
  auto step = [a1, a2](const Vec& x, const Vec& u) -> Vec {
    // Ties on the switching line go to A1.
    if (x[0] >= 0.0) return a1 * x + u;
    return a2 * x + u;
  };
  return System("piecewise_rotation", 2, 2, step, Box::cube(2, -4.0, 4.0));
}

std::pair<Vec, Vec> rotation_split_pair(double eps) {
  Vec x0(2), x1(2);
  x0 << eps, 1.0;
  x1 << -eps, 1.0;
  return {x0, x1};
}

System make_projection_system(const Vec& box_lo, const Vec& box_hi) {
  Box k(box_lo, box_hi);
  const int d = k.dim();
  auto step = [k](const Vec& x, const Vec& u) -> Vec { return k.clamp(x + u); };
  return System("projection", d, d, step, k);
}

ClosedLoop make_negation_system() {
  auto step = [](const Vec& x, const Vec& u) -> Vec { return -x + u; };
  return {System("negation", 1, 1, step, Box::cube(1, -10.0, 10.0)), Policy::zero(1)};
}

System make_linear_system(const Mat& A, const Box& domain, std::string label) {
  if (A.rows() != A.cols()) throw InvalidParameter("linear system matrix must be square");
  const int d = static_cast<int>(A.rows());
  auto step = [A](const Vec& x, const Vec& u) -> Vec { return A * x + u; };
  return System(std::move(label), d, d, step, domain);
}

System make_scalar_linear(double a, int dim) {
  return make_linear_system(a * Mat::Identity(dim, dim), Box::cube(dim, -10.0, 10.0), "scalar_linear");
}

System make_zero_system(int dim) {
  auto step = [dim](const Vec&, const Vec&) -> Vec { return Vec::Zero(dim); };
  return System("zero", dim, dim, step, Box::cube(dim, -10.0, 10.0));
}

}  // namespace issprobe
