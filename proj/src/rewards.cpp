#include "issprobe/rewards.hpp"

#include "issprobe/errors.hpp"
#include "issprobe/rng.hpp"
#include "issprobe/spec_args.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace issprobe {

namespace {

double signed_power(double z, double alpha) {
  if (z == 0.0) return 0.0;
  return (z > 0.0 ? 1.0 : -1.0) * std::pow(std::abs(z), alpha);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParameter("Hölder exponent must lie in (0, 1]");
}

}  // namespace

Reward::Reward(RewardFn fn, double holder_C, double holder_alpha, std::string label)
    : fn_(std::move(fn)), C_(holder_C), alpha_(holder_alpha), label_(std::move(label)) {
  if (!fn_) throw InvalidParameter("reward map is empty");
  if (!(C_ >= 0.0)) throw InvalidParameter("Hölder constant must be nonnegative");
  check_alpha(alpha_);
}

Reward Reward::negated() const {
  auto fn = fn_;
  const std::string l = label_.rfind('-', 0) == 0 ? label_.substr(1) : "-" + label_;
  return Reward([fn](const Vec& x, const Vec& u) { return -fn(x, u); }, C_, alpha_, l);
}

double Reward::abs_bound(const Box& box, int input_dim) const {
  return std::abs(fn_(box.center(), Vec::Zero(input_dim))) + C_ * std::pow(box.radius(), alpha_);
}

Reward make_signed_power_reward(const Vec& v, double C, double alpha) {
  check_alpha(alpha);
  return Reward([v, C, alpha](const Vec& x, const Vec&) { return C * signed_power(v.dot(x), alpha); }, C, alpha,
                "signed_power[" + format_vec(v) + "]");
}

Reward make_linear_reward(const Vec& v, double C) {
  return Reward([v, C](const Vec& x, const Vec&) { return C * v.dot(x); }, C * v.norm(), 1.0,
                "linear[" + format_vec(v) + "]");
}

Reward make_norm_reward() {
  return Reward([](const Vec& x, const Vec&) { return x.norm(); }, 1.0, 1.0, "norm");
}

Reward make_zero_reward() {
  return Reward([](const Vec&, const Vec&) { return 0.0; }, 0.0, 1.0, "zero");
}

Reward make_distance_reward(const Vec& anchor, double C, double alpha) {
  check_alpha(alpha);
  return Reward([anchor, C, alpha](const Vec& x, const Vec&) { return C * gain_pow(distance(x, anchor), alpha); },
                C, alpha, "distance[" + format_vec(anchor) + "]");
}

RewardSequence::RewardSequence(Reward constant) : tail_(std::move(constant)) {}

RewardSequence::RewardSequence(std::vector<Reward> steps, Reward tail)
    : steps_(std::move(steps)), tail_(std::move(tail)) {}

RewardSequence RewardSequence::shifted(std::size_t t) const {
  if (t == 0 || steps_.empty()) return *this;
  if (t >= steps_.size()) return RewardSequence(tail_);
  return RewardSequence(std::vector<Reward>(steps_.begin() + static_cast<std::ptrdiff_t>(t), steps_.end()), tail_);
}

double RewardSequence::abs_bound(const Box& box, int input_dim) const {
  double b = tail_.abs_bound(box, input_dim);
  for (const auto& r : steps_) b = std::max(b, r.abs_bound(box, input_dim));
  return b;
}

std::string RewardSequence::label() const {
  if (steps_.empty()) return tail_.label();
  return "sequence[" + std::to_string(steps_.size()) + "]+" + tail_.label();
}

RewardClass RewardClass::finite(Traits traits, std::vector<Reward> members) {
  if (members.empty()) throw InvalidParameter("finite reward class needs at least one member");
  RewardClass cls;
  cls.traits_ = std::move(traits);
  cls.traits_.exact_oracle = true;
  cls.finite_ = true;
  cls.members_ = std::move(members);
  const auto shared = std::make_shared<std::vector<Reward>>(cls.members_);
  cls.sup_ = [shared](const Vec& x, const Vec& u, const Vec& y, const Vec& w) {
    SupResult best;
    best.exact = true;
    best.value = -1.0;
    for (const auto& r : *shared) {
      const double d = std::abs(r(x, u) - r(y, w));
      if (d > best.value) {
        best.value = d;
        best.witness = r;
      }
    }
    return best;
  };
  cls.weighted_sup_ = [shared](const std::vector<double>& weights, const std::vector<Vec>& xs,
                               const std::vector<Vec>& us, const std::vector<Vec>& ys, const std::vector<Vec>& ws) {
    SupResult best;
    best.exact = true;
    best.value = -1.0;
    for (const auto& r : *shared) {
      double s = 0.0;
      for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] != 0.0) s += weights[k] * (r(xs[k], us[k]) - r(ys[k], ws[k]));
      }
      if (std::abs(s) > best.value) {
        best.value = std::abs(s);
        best.witness = r;
      }
    }
    return best;
  };
  return cls;
}

RewardClass RewardClass::parametric(Traits traits, SupFn sup, WeightedSupFn weighted_sup, ProbeFn probes) {
  RewardClass cls;
  cls.traits_ = std::move(traits);
  cls.sup_ = std::move(sup);
  cls.weighted_sup_ = std::move(weighted_sup);
  cls.probes_ = std::move(probes);
  return cls;
}

std::vector<Reward> RewardClass::probe_members(std::size_t n, std::uint64_t seed) const {
  if (finite_) return members_;
  return probes_(n, seed);
}

RewardClass make_signed_power_class(const std::vector<Vec>& basis, double C, double alpha) {
  check_alpha(alpha);
  if (!(C >= 0.0)) throw InvalidParameter("C must be nonnegative");
  if (basis.empty()) throw InvalidParameter("signed-power class needs a nonempty basis");
  const int d = static_cast<int>(basis.front().size());
  if (static_cast<int>(basis.size()) != d) throw NotOrthonormal("basis must contain exactly d vectors");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != d) throw NotOrthonormal("basis vectors have inconsistent dimensions");
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double g = basis[i].dot(basis[j]);
      if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-10) throw NotOrthonormal("Gram matrix differs from identity");
    }
  }
  std::vector<Reward> members;
  for (const auto& v : basis) {
    Reward r = make_signed_power_reward(v, C, alpha);
    members.push_back(r);
    members.push_back(r.negated());
  }
  RewardClass::Traits t;
  std::ostringstream label;
  label << "signed_power:d=" << d << ",alpha=" << alpha << ",C=" << C;
  t.label = label.str();
  t.state_dim = d;
  t.C = C;
  t.alpha = alpha;
  t.c = std::pow(static_cast<double>(d), -alpha / 2.0);
  t.symmetric = true;
  return RewardClass::finite(t, std::move(members));
}

RewardClass make_signed_power_class(int dim, double C, double alpha) {
  if (dim < 1) throw InvalidParameter("dimension must be positive");
  std::vector<Vec> basis;
  for (int i = 0; i < dim; ++i) basis.push_back(Vec::Unit(dim, i));
  return make_signed_power_class(basis, C, alpha);
}

namespace {

std::vector<Reward> sphere_probes(int dim, std::size_t n, std::uint64_t seed,
                                  const std::function<Reward(const Vec&)>& make) {
  std::vector<Reward> out;
  for (int i = 0; i < dim && out.size() < n; ++i) {
    out.push_back(make(Vec::Unit(dim, i)));
    if (out.size() < n) out.push_back(make(-Vec::Unit(dim, i)));
  }
  for (std::size_t k = 0; out.size() < n; ++k) {
    Rng rng(derive_seed(seed, 0x5fe7e, k));
    out.push_back(make(rng.unit_vector(dim)));
  }
  return out;
}

}  // namespace

RewardClass make_linear_class(int dim, double C) {
  if (dim < 1) throw InvalidParameter("dimension must be positive");
  if (!(C >= 0.0)) throw InvalidParameter("C must be nonnegative");
  RewardClass::Traits t;
  std::ostringstream label;
  label << "linear:d=" << dim << ",C=" << C;
  t.label = label.str();
  t.state_dim = dim;
  t.C = C;
  t.alpha = 1.0;
  t.c = 1.0;
  t.symmetric = true;
  t.exact_oracle = true;
  auto maximizer = [dim](const Vec& diff) -> Vec {
    const double n = diff.norm();
    return n > 0.0 ? Vec(diff / n) : Vec(Vec::Unit(dim, 0));
  };
  auto sup = [C, maximizer](const Vec& x, const Vec&, const Vec& y, const Vec&) {
    const Vec diff = x - y;
    return SupResult{C * diff.norm(), make_linear_reward(maximizer(diff), C), true};
  };
  auto weighted = [C, dim, maximizer](const std::vector<double>& weights, const std::vector<Vec>& xs,
                                      const std::vector<Vec>&, const std::vector<Vec>& ys, const std::vector<Vec>&) {
    Vec acc = Vec::Zero(dim);
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (weights[k] != 0.0) acc += weights[k] * (xs[k] - ys[k]);
    }
    return SupResult{C * acc.norm(), make_linear_reward(maximizer(acc), C), true};
  };
  auto probes = [dim, C](std::size_t n, std::uint64_t seed) {
    return sphere_probes(dim, n, seed, [C](const Vec& v) { return make_linear_reward(v, C); });
  };
  return RewardClass::parametric(t, sup, weighted, probes);
}

RewardClass make_holder_class(int dim, double C, double alpha) {
  check_alpha(alpha);
  if (dim < 1) throw InvalidParameter("dimension must be positive");
  RewardClass::Traits t;
  std::ostringstream label;
  label << "holder:d=" << dim << ",alpha=" << alpha << ",C=" << C;
  t.label = label.str();
  t.state_dim = dim;
  t.C = C;
  t.alpha = alpha;
  t.c = 1.0;
  t.symmetric = true;
  t.exact_oracle = true;
  auto sup = [C, alpha](const Vec& x, const Vec&, const Vec& y, const Vec&) {
    return SupResult{C * gain_pow(distance(x, y), alpha), make_distance_reward(y, C, alpha), true};
  };
  // No closed form for weighted sums over the whole Hölder ball; report the
  // best anchored distance function, which underestimates.
  auto weighted = [C, alpha](const std::vector<double>& weights, const std::vector<Vec>& xs, const std::vector<Vec>& us,
                             const std::vector<Vec>& ys, const std::vector<Vec>& ws) {
    SupResult best;
    best.value = -1.0;
    for (std::size_t a = 0; a < xs.size(); ++a) {
      for (const Vec* anchor : {&xs[a], &ys[a]}) {
        const Reward r = make_distance_reward(*anchor, C, alpha);
        double s = 0.0;
        for (std::size_t k = 0; k < weights.size(); ++k) s += weights[k] * (r(xs[k], us[k]) - r(ys[k], ws[k]));
        if (std::abs(s) > best.value) {
          best.value = std::abs(s);
          best.witness = r;
        }
      }
    }
    best.value = std::max(best.value, 0.0);
    best.exact = false;
    return best;
  };
  auto probes = [dim, C, alpha](std::size_t n, std::uint64_t seed) {
    std::vector<Reward> out;
    for (std::size_t k = 0; k < n; ++k) {
      Rng rng(derive_seed(seed, 0x401de, k));
      Vec anchor(dim);
      for (int i = 0; i < dim; ++i) anchor[i] = rng.uniform(-1.0, 1.0);
      out.push_back(make_distance_reward(anchor, C, alpha));
    }
    return out;
  };
  return RewardClass::parametric(t, sup, weighted, probes);
}

RewardClass make_singleton_class(const Reward& r, int dim) {
  RewardClass::Traits t;
  t.label = "singleton:" + r.label();
  t.state_dim = dim;
  t.C = std::max(1.0, r.holder_C());
  t.alpha = r.holder_alpha();
  t.c = 1.0;
  t.symmetric = false;
  return RewardClass::finite(t, {r});
}

std::vector<PointPair> sample_box_pairs(const Box& state_box, int input_dim, std::size_t n, std::uint64_t seed) {
  std::vector<PointPair> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, 0xba5e, i));
    pairs[i].x = rng.uniform_in(state_box);
    pairs[i].y = rng.uniform_in(state_box);
    pairs[i].u = Vec::Zero(input_dim);
    pairs[i].w = Vec::Zero(input_dim);
  }
  return pairs;
}

SensitivityReport certify_sensitivity(const RewardClass& cls, const std::vector<PointPair>& pairs,
                                      const SensitivityOptions& options) {
  if (pairs.empty()) throw InvalidParameter("certify_sensitivity needs at least one pair");
  const double C = cls.C();
  const double alpha = cls.alpha();
  const auto members = cls.probe_members(options.probe_members, options.probe_seed);

  std::vector<double> sensitivity(pairs.size());
  std::vector<double> sup_values(pairs.size());
  std::vector<double> holder(pairs.size());
  std::vector<std::size_t> holder_member(pairs.size(), 0);
  std::vector<char> exact(pairs.size(), 1);

  run_indexed(pairs.size(), options.exec, [&](std::size_t i) {
    const auto& p = pairs[i];
    const double d = distance(p.x, p.y);
    if (d < options.delta_min) {
      sensitivity[i] = std::numeric_limits<double>::quiet_NaN();
      sup_values[i] = std::numeric_limits<double>::quiet_NaN();
    } else {
      const SupResult s = cls.sup(p.x, p.u, p.y, p.w);
      sup_values[i] = s.value;
      exact[i] = s.exact ? 1 : 0;
      sensitivity[i] = C > 0.0 ? s.value / (C * std::pow(d, alpha)) : 0.0;
    }
    const double jd = joint_distance(p.x, p.u, p.y, p.w);
    double worst = std::numeric_limits<double>::quiet_NaN();
    if (jd >= options.delta_min) {
      worst = 0.0;
      for (std::size_t m = 0; m < members.size(); ++m) {
        const double ratio = std::abs(members[m](p.x, p.u) - members[m](p.y, p.w)) / std::pow(jd, alpha);
        if (ratio > worst) {
          worst = ratio;
          holder_member[i] = m;
        }
      }
    }
    holder[i] = worst;
  });

  SensitivityReport report;
  report.declared_c = cls.declared_c();
  const ArgExtreme low = argmin(sensitivity);
  if (!low.found()) throw DegeneratePairs("every sampled pair is closer than delta_min");
  report.c_hat = low.value;
  report.c_witness = low.index;
  const ArgExtreme high = argmax(holder);
  if (high.found()) {
    report.C_hat = high.value;
    report.C_witness = high.index;
    report.C_witness_member = members[holder_member[high.index]].label();
  }
  report.sup_exact = true;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t fit_n = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (std::isnan(sensitivity[i])) {
      ++report.n_excluded;
      continue;
    }
    ++report.n_used;
    report.sup_exact = report.sup_exact && exact[i];
    if (sup_values[i] > 0.0) {
      const double lx = std::log(distance(pairs[i].x, pairs[i].y));
      const double ly = std::log(sup_values[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++fit_n;
    }
  }
  if (fit_n >= 2) {
    const double n = static_cast<double>(fit_n);
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) > 1e-12) report.alpha_fit = (n * sxy - sx * sy) / denom;
  }
  report.violation = report.c_hat < report.declared_c * (1.0 - options.tol);
  return report;
}

RewardClass parse_reward_class(const std::string& spec) {
  const SpecArgs args(spec, "reward_class");
  try {
    if (args.name() == "signed_power") {
      args.allow_only({"d", "alpha", "C"});
      return make_signed_power_class(args.get_int("d"), args.get_double("C", 1.0), args.get_double("alpha", 1.0));
    }
    if (args.name() == "linear") {
      args.allow_only({"d", "C"});
      return make_linear_class(args.get_int("d"), args.get_double("C", 1.0));
    }
    if (args.name() == "holder") {
      args.allow_only({"d", "alpha", "C"});
      return make_holder_class(args.get_int("d"), args.get_double("C", 1.0), args.get_double("alpha", 1.0));
    }
    if (args.name() == "norm") {
      args.allow_only({"d"});
      return make_singleton_class(make_norm_reward(), args.get_int("d", 1));
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError("reward_class", "'" + spec + "': " + e.what());
  }
  throw ConfigError("reward_class", "unknown reward class '" + args.name() + "'");
}

Reward parse_reward(const std::string& spec) {
  const SpecArgs args(spec, "reward");
  try {
    if (args.name() == "norm") {
      args.allow_only({});
      return make_norm_reward();
    }
    if (args.name() == "zero") {
      args.allow_only({});
      return make_zero_reward();
    }
    if (args.name() == "linear") {
      args.allow_only({"v", "C"});
      return make_linear_reward(args.get_vec("v"), args.get_double("C", 1.0));
    }
    if (args.name() == "signed_power") {
      args.allow_only({"v", "alpha", "C"});
      return make_signed_power_reward(args.get_vec("v"), args.get_double("C", 1.0), args.get_double("alpha", 1.0));
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError("reward", "'" + spec + "': " + e.what());
  }
  throw ConfigError("reward", "unknown reward '" + args.name() + "'");
}

}  // namespace issprobe
