#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace issprobe {

/// Discount schedule (λ_t)_{t>=1} with cumulative products λ̄_t = ∏_{k<=t} λ_k.
///
/// Three representations are kept:
///   constant(λ)        λ_t = λ for all t
///   finite_horizon(H)  λ_t = 1 for t <= H, 0 afterwards (rewards summed over t = 0..H)
///   explicit           listed λ_1..λ_n, then either zero (finitely supported) or a
///                      declared geometric tail λ_t = q for t > n
/// Shifting a schedule maps each representation onto itself, so shifted
/// schedules are ordinary schedules of the same kind.
class DiscountSchedule {
 public:
  enum class Kind { constant, finite_horizon, explicit_list };

  static DiscountSchedule constant(double lambda);
  static DiscountSchedule finite_horizon(std::size_t horizon);
  static DiscountSchedule explicit_list(std::vector<double> lambdas,
                                        std::optional<double> tail_ratio = std::nullopt);

  Kind kind() const { return kind_; }
  /// λ_t for t >= 1. λ_0 is not part of a schedule; lambda_at(0) returns 1.
  double lambda_at(std::size_t t) const;
  /// λ̄_t, with λ̄_0 = 1.
  double cumulative(std::size_t t) const;

  double constant_value() const { return lambda_; }
  std::size_t horizon() const { return horizon_; }
  const std::vector<double>& listed() const { return lambdas_; }
  std::optional<double> tail_ratio() const { return tail_ratio_; }

  /// Smallest index past which λ̄ is identically zero, if the schedule is finitely supported.
  std::optional<std::size_t> support_end() const;
  /// Whether λ_t is nonincreasing over 1..upto.
  bool nonincreasing(std::size_t upto) const;

  /// Σ_{t > T} λ̄_t, +inf when no certificate exists.
  double tail_after(std::size_t T) const;
  /// Σ_{t > T} (t + 1) λ̄_t, the count-weighted tail used to bound double sums.
  double weighted_tail_after(std::size_t T) const;

  std::string label() const;

  friend bool operator==(const DiscountSchedule&, const DiscountSchedule&) = default;

 private:
  DiscountSchedule() = default;

  Kind kind_ = Kind::constant;
  double lambda_ = 0.0;
  std::size_t horizon_ = 0;
  std::vector<double> lambdas_;
  std::vector<double> prefix_;  // prefix_[t] = λ̄_t for t = 0..n
  std::optional<double> tail_ratio_;
};

struct MassOptions {
  std::size_t max_index = 100'000'000;
  double overflow_cap = 1e300;
};

struct ScheduleMass {
  double l1 = std::numeric_limits<double>::infinity();
  std::size_t truncation_T = 0;
  double tail_mass = std::numeric_limits<double>::infinity();
  bool proper = false;
};

/// ‖λ̄‖_1 with a truncation index T such that the mass beyond T is <= eps_tail.
ScheduleMass mass(const DiscountSchedule& schedule, double eps_tail, const MassOptions& options = {});

struct TimestepDistribution {
  std::vector<double> pmf;
  std::size_t support_bound = 0;
  /// Pre-normalization mass over [0, support_bound].
  double total_mass = 0.0;
  /// Set when the mass beyond support_bound is not certified negligible.
  bool truncated = false;
  /// Upper bound on the pre-normalization mass dropped by truncation.
  double tail_bound = 0.0;

  double at(std::size_t t) const { return t < pmf.size() ? pmf[t] : 0.0; }
  double expectation(const std::function<double(std::size_t)>& f) const;
};

inline constexpr double kDefaultTailEps = 1e-12;

/// P_λ̄ on [0, T]: pmf(t) = λ̄_t / Σ_{s<=T} λ̄_s.
TimestepDistribution timestep_distribution(const DiscountSchedule& schedule, std::size_t T,
                                           double eps_tail = kDefaultTailEps);
/// P_λ̄ truncated where `mass` certifies the tail; flagged truncated for improper schedules.
TimestepDistribution timestep_distribution(const DiscountSchedule& schedule,
                                           double eps_tail = kDefaultTailEps,
                                           const MassOptions& options = {});

using DecayFn = std::function<double(std::size_t)>;

/// p(t) ∝ Σ_{k=0}^{T} λ̄_{t+k} κ(k)^α on t = 0..T. total_mass is the
/// pre-normalization mass Σ_t Σ_k λ̄_{t+k} κ(k)^α.
TimestepDistribution convolve_kappa(const DiscountSchedule& schedule, const DecayFn& kappa, double alpha,
                                    std::size_t T);

/// λ'_k = λ_{t+k}.
DiscountSchedule shift(const DiscountSchedule& schedule, std::size_t t);

/// Same λ_1..λ_N, zero afterwards.
DiscountSchedule truncate(const DiscountSchedule& schedule, std::size_t N);

/// Parses `constant:0.8`, `horizon:16` and `explicit:@file.csv`.
DiscountSchedule parse_schedule(const std::string& spec);
/// Splits a comma list of schedule specs.
std::vector<std::string> split_schedule_list(const std::string& list);
/// Reads one λ_t per line (1-indexed) with an optional `tail_ratio=q` line.
DiscountSchedule read_explicit_schedule(const std::string& path);

}  // namespace issprobe
