#include "issprobe/schedules.hpp"

#include "issprobe/errors.hpp"
#include "issprobe/types.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace issprobe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) { return format_double(v); }

// Σ_{t > T} a q^{t - T} (t + 1) for 0 <= q < 1.
double geometric_weighted_tail(double a, double q, std::size_t T) {
  if (q == 0.0 || a == 0.0) return 0.0;
  // Σ_{j>=1} q^j (T + 1 + j) = (T + 1) q / (1 − q) + q / (1 − q)^2
  const double n = static_cast<double>(T) + 1.0;
  return a * (n * q / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
}

}  // namespace

DiscountSchedule DiscountSchedule::constant(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParameter("constant schedule needs finite lambda >= 0");
  DiscountSchedule s;
  s.kind_ = Kind::constant;
  s.lambda_ = lambda;
  return s;
}

DiscountSchedule DiscountSchedule::finite_horizon(std::size_t horizon) {
  DiscountSchedule s;
  s.kind_ = Kind::finite_horizon;
  s.horizon_ = horizon;
  return s;
}

DiscountSchedule DiscountSchedule::explicit_list(std::vector<double> lambdas, std::optional<double> tail_ratio) {
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw InvalidParameter("explicit schedule entries must be finite and >= 0");
  }
  if (tail_ratio && (!(*tail_ratio >= 0.0) || !std::isfinite(*tail_ratio))) {
    throw InvalidParameter("tail_ratio must be finite and >= 0");
  }
  DiscountSchedule s;
  s.kind_ = Kind::explicit_list;
  s.lambdas_ = std::move(lambdas);
  s.tail_ratio_ = tail_ratio;
  s.prefix_.resize(s.lambdas_.size() + 1);
  s.prefix_[0] = 1.0;
  for (std::size_t t = 1; t <= s.lambdas_.size(); ++t) s.prefix_[t] = s.prefix_[t - 1] * s.lambdas_[t - 1];
  return s;
}

double DiscountSchedule::lambda_at(std::size_t t) const {
  if (t == 0) return 1.0;
  switch (kind_) {
    case Kind::constant:
      return lambda_;
    case Kind::finite_horizon:
      return t <= horizon_ ? 1.0 : 0.0;
    case Kind::explicit_list:
      if (t <= lambdas_.size()) return lambdas_[t - 1];
      return tail_ratio_.value_or(0.0);
  }
  return 0.0;
}

double DiscountSchedule::cumulative(std::size_t t) const {
  if (t == 0) return 1.0;
  switch (kind_) {
    case Kind::constant:
      return std::pow(lambda_, static_cast<double>(t));
    case Kind::finite_horizon:
      return t <= horizon_ ? 1.0 : 0.0;
    case Kind::explicit_list: {
      const std::size_t n = lambdas_.size();
      if (t <= n) return prefix_[t];
      if (!tail_ratio_) return 0.0;
      return prefix_[n] * std::pow(*tail_ratio_, static_cast<double>(t - n));
    }
  }
  return 0.0;
}

std::optional<std::size_t> DiscountSchedule::support_end() const {
  switch (kind_) {
    case Kind::constant:
      if (lambda_ == 0.0) return 0;
      return std::nullopt;
    case Kind::finite_horizon:
      return horizon_;
    case Kind::explicit_list: {
      for (std::size_t t = 1; t < prefix_.size(); ++t) {
        if (prefix_[t] == 0.0) return t - 1;
      }
      if (!tail_ratio_ || *tail_ratio_ == 0.0) return lambdas_.size();
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool DiscountSchedule::nonincreasing(std::size_t upto) const {
  switch (kind_) {
    case Kind::constant:
    case Kind::finite_horizon:
      return true;
    case Kind::explicit_list:
      for (std::size_t t = 2; t <= upto; ++t) {
        if (lambda_at(t) > lambda_at(t - 1)) return false;
      }
      return true;
  }
  return false;
}

double DiscountSchedule::tail_after(std::size_t T) const {
  switch (kind_) {
    case Kind::constant:
      if (lambda_ == 0.0) return 0.0;
      if (lambda_ >= 1.0) return kInf;
      return std::pow(lambda_, static_cast<double>(T) + 1.0) / (1.0 - lambda_);
    case Kind::finite_horizon:
      return T >= horizon_ ? 0.0 : static_cast<double>(horizon_ - T);
    case Kind::explicit_list: {
      const std::size_t n = lambdas_.size();
      const double q = tail_ratio_.value_or(0.0);
      const double at_n = prefix_[n];
      double tail_beyond_n = 0.0;
      if (at_n > 0.0 && q > 0.0) {
        if (q >= 1.0) return kInf;
        tail_beyond_n = at_n * q / (1.0 - q);
      }
      if (T >= n) {
        if (at_n == 0.0 || q == 0.0) return 0.0;
        return cumulative(T) * q / (1.0 - q);
      }
      double s = tail_beyond_n;
      for (std::size_t t = T + 1; t <= n; ++t) s += prefix_[t];
      return s;
    }
  }
  return kInf;
}

double DiscountSchedule::weighted_tail_after(std::size_t T) const {
  switch (kind_) {
    case Kind::constant:
      if (lambda_ == 0.0) return 0.0;
      if (lambda_ >= 1.0) return kInf;
      return geometric_weighted_tail(cumulative(T), lambda_, T);
    case Kind::finite_horizon: {
      double s = 0.0;
      for (std::size_t t = T + 1; t <= horizon_; ++t) s += static_cast<double>(t + 1);
      return s;
    }
    case Kind::explicit_list: {
      const std::size_t n = lambdas_.size();
      const double q = tail_ratio_.value_or(0.0);
      if (q >= 1.0 && prefix_[n] > 0.0) return kInf;
      double s = 0.0;
      for (std::size_t t = T + 1; t <= n; ++t) s += static_cast<double>(t + 1) * prefix_[t];
      const std::size_t from = std::max(T, n);
      s += geometric_weighted_tail(cumulative(from), q, from);
      return s;
    }
  }
  return kInf;
}

std::string DiscountSchedule::label() const {
  switch (kind_) {
    case Kind::constant:
      return "constant:" + fmt(lambda_);
    case Kind::finite_horizon:
      return "horizon:" + std::to_string(horizon_);
    case Kind::explicit_list: {
      std::string s = "explicit[" + std::to_string(lambdas_.size());
      if (tail_ratio_) s += ",tail_ratio=" + fmt(*tail_ratio_);
      return s + "]";
    }
  }
  return "?";
}

ScheduleMass mass(const DiscountSchedule& schedule, double eps_tail, const MassOptions& options) {
  if (!(eps_tail > 0.0)) throw InvalidParameter("eps_tail must be positive");
  ScheduleMass m;
  switch (schedule.kind()) {
    case DiscountSchedule::Kind::constant: {
      const double lambda = schedule.constant_value();
      if (lambda == 0.0) return {1.0, 0, 0.0, true};
      if (lambda >= 1.0) {
        m.truncation_T = options.max_index;
        return m;
      }
      m.l1 = 1.0 / (1.0 - lambda);
      m.proper = true;
      // Smallest T with λ^{T+1} / (1 − λ) <= eps_tail.
      double guess = std::log(eps_tail * (1.0 - lambda)) / std::log(lambda) - 1.0;
      std::size_t T = guess <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(guess));
      while (T > 0 && schedule.tail_after(T - 1) <= eps_tail) --T;
      while (schedule.tail_after(T) > eps_tail) ++T;
      m.truncation_T = T;
      m.tail_mass = schedule.tail_after(T);
      return m;
    }
    case DiscountSchedule::Kind::finite_horizon:
      return {static_cast<double>(schedule.horizon()) + 1.0, schedule.horizon(), 0.0, true};
    case DiscountSchedule::Kind::explicit_list: {
      const auto& lambdas = schedule.listed();
      const std::size_t n = lambdas.size();
      double sum = 0.0;
      for (std::size_t t = 0; t <= n; ++t) {
        sum += schedule.cumulative(t);
        if (!(sum <= options.overflow_cap)) throw Divergent("schedule partial sums exceed the overflow cap");
      }
      if (auto end = schedule.support_end()) {
        double l1 = 0.0;
        for (std::size_t t = 0; t <= *end; ++t) l1 += schedule.cumulative(t);
        return {l1, *end, 0.0, true};
      }
      const double q = *schedule.tail_ratio();
      if (q >= 1.0) {
        // No geometric certificate; refuse to call it proper.
        m.truncation_T = options.max_index;
        return m;
      }
      const double tail = schedule.tail_after(n);
      m.l1 = sum + tail;
      if (!(m.l1 <= options.overflow_cap)) throw Divergent("schedule mass exceeds the overflow cap");
      m.proper = true;
      std::size_t T = n;
      while (schedule.tail_after(T) > eps_tail) {
        if (T >= options.max_index) {
          m.proper = false;
          m.l1 = kInf;
          break;
        }
        ++T;
      }
      m.truncation_T = T;
      m.tail_mass = schedule.tail_after(T);
      return m;
    }
  }
  return m;
}

double TimestepDistribution::expectation(const std::function<double(std::size_t)>& f) const {
  double s = 0.0;
  for (std::size_t t = 0; t < pmf.size(); ++t) {
    if (pmf[t] != 0.0) s += pmf[t] * f(t);
  }
  return s;
}

namespace {

TimestepDistribution normalize(std::vector<double> weights) {
  TimestepDistribution d;
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw ZeroMass("all timestep weights vanish on the truncation range");
  for (double& w : weights) w /= total;
  d.pmf = std::move(weights);
  d.support_bound = d.pmf.size() - 1;
  d.total_mass = total;
  return d;
}

}  // namespace

TimestepDistribution timestep_distribution(const DiscountSchedule& schedule, std::size_t T, double eps_tail) {
  std::vector<double> w(T + 1);
  for (std::size_t t = 0; t <= T; ++t) w[t] = schedule.cumulative(t);
  TimestepDistribution d = normalize(std::move(w));
  d.tail_bound = schedule.tail_after(T);
  d.truncated = !(d.tail_bound <= eps_tail);
  return d;
}

TimestepDistribution timestep_distribution(const DiscountSchedule& schedule, double eps_tail,
                                           const MassOptions& options) {
  const ScheduleMass m = mass(schedule, eps_tail, options);
  TimestepDistribution d = timestep_distribution(schedule, m.truncation_T, eps_tail);
  d.truncated = !m.proper;
  return d;
}

TimestepDistribution convolve_kappa(const DiscountSchedule& schedule, const DecayFn& kappa, double alpha,
                                    std::size_t T) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParameter("alpha must lie in (0, 1]");
  if (std::abs(kappa(0) - 1.0) > 1e-12) throw InvalidParameter("kappa(0) must equal 1");
  std::vector<double> ka(T + 1);
  for (std::size_t k = 0; k <= T; ++k) {
    const double v = kappa(k);
    if (v < 0.0 || v > 1.0 + 1e-12) throw InvalidParameter("kappa must map into [0, 1]");
    if (k > 0 && v > kappa(k - 1) + 1e-15) throw InvalidParameter("kappa must be nonincreasing");
    ka[k] = gain_pow(v, alpha);
  }
  std::vector<double> lam(2 * T + 1);
  for (std::size_t m = 0; m <= 2 * T; ++m) lam[m] = schedule.cumulative(m);
  std::vector<double> w(T + 1, 0.0);
  for (std::size_t t = 0; t <= T; ++t) {
    double s = 0.0;
    for (std::size_t k = 0; k <= T; ++k) s += lam[t + k] * ka[k];
    w[t] = s;
  }
  TimestepDistribution d = normalize(std::move(w));
  // Dropped pairs (t, k) all have t + k > T and κ <= 1; each index m = t + k
  // is hit at most m + 1 times.
  d.tail_bound = schedule.weighted_tail_after(T);
  d.truncated = !std::isfinite(d.tail_bound);
  return d;
}

DiscountSchedule shift(const DiscountSchedule& schedule, std::size_t t) {
  if (t == 0) return schedule;
  switch (schedule.kind()) {
    case DiscountSchedule::Kind::constant:
      return schedule;
    case DiscountSchedule::Kind::finite_horizon:
      return DiscountSchedule::finite_horizon(schedule.horizon() > t ? schedule.horizon() - t : 0);
    case DiscountSchedule::Kind::explicit_list: {
      const auto& l = schedule.listed();
      std::vector<double> rest;
      if (t < l.size()) rest.assign(l.begin() + static_cast<std::ptrdiff_t>(t), l.end());
      return DiscountSchedule::explicit_list(std::move(rest), schedule.tail_ratio());
    }
  }
  return schedule;
}

DiscountSchedule truncate(const DiscountSchedule& schedule, std::size_t N) {
  if (schedule.kind() == DiscountSchedule::Kind::finite_horizon) {
    return DiscountSchedule::finite_horizon(std::min(schedule.horizon(), N));
  }
  std::vector<double> l(N);
  for (std::size_t t = 1; t <= N; ++t) l[t - 1] = schedule.lambda_at(t);
  return DiscountSchedule::explicit_list(std::move(l));
}

DiscountSchedule read_explicit_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("schedule", "cannot open explicit schedule file '" + path + "'");
  std::vector<double> values;
  std::optional<double> tail;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    try {
      if (line.rfind("tail_ratio=", 0) == 0) {
        if (tail) throw ConfigError("", "duplicate tail_ratio directive");
        tail = std::stod(line.substr(11));
        continue;
      }
      if (tail) throw ConfigError("", "values after the tail_ratio directive");
      std::size_t used = 0;
      values.push_back(std::stod(line, &used));
      if (used != line.size()) throw ConfigError("", "trailing characters");
    } catch (const ConfigError& e) {
      throw ConfigError("schedule", path + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception&) {
      throw ConfigError("schedule", path + ":" + std::to_string(lineno) + ": not a number: '" + line + "'");
    }
  }
  try {
    return DiscountSchedule::explicit_list(std::move(values), tail);
  } catch (const InvalidParameter& e) {
    throw ConfigError("schedule", path + ": " + e.what());
  }
}

DiscountSchedule parse_schedule(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("schedule", "expected kind:value, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  try {
    if (kind == "constant") {
      std::size_t used = 0;
      const double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument("trailing");
      return DiscountSchedule::constant(v);
    }
    if (kind == "horizon") {
      std::size_t used = 0;
      const long long h = std::stoll(arg, &used);
      if (used != arg.size() || h < 0) throw std::invalid_argument("bad horizon");
      return DiscountSchedule::finite_horizon(static_cast<std::size_t>(h));
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError("schedule", "'" + spec + "': " + e.what());
  } catch (const std::exception&) {
    throw ConfigError("schedule", "cannot parse '" + spec + "'");
  }
  if (kind == "explicit") {
    if (arg.empty() || arg[0] != '@') throw ConfigError("schedule", "explicit schedules are given as explicit:@file.csv");
    return read_explicit_schedule(arg.substr(1));
  }
  throw ConfigError("schedule", "unknown schedule kind '" + kind + "'");
}

std::vector<std::string> split_schedule_list(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace issprobe
