#include "issprobe/reproductions.hpp"

#include "issprobe/audit.hpp"
#include "issprobe/registry.hpp"
#include "issprobe/rng.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace issprobe {

namespace {

class Table {
 public:
  void row(const std::string& example, const std::string& quantity, double value, bool expected) {
    line(example, quantity, value, expected ? "ok" : "UNEXPECTED");
    all_ = all_ && expected;
  }
  // Informational row that does not count toward all_expected.
  void line(const std::string& example, const std::string& quantity, double value, const std::string& status) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-22s %-44s %14.6g  %s\n", example.c_str(), quantity.c_str(), value,
                  status.c_str());
    text_ += buf;
  }
  std::string str() const {
    char head[256];
    std::snprintf(head, sizeof head, "%-22s %-44s %14s  %s\n", "example", "quantity", "value", "status");
    return head + std::string(88, '-') + "\n" + text_;
  }
  bool all() const { return all_; }

 private:
  std::string text_;
  bool all_ = true;
};

}  // namespace

ExamplesOutput run_reproductions(std::uint64_t seed) {
  ExamplesOutput out;
  Table table;
  ojson& rep = out.report;
  rep["seed"] = seed;

  // Piecewise rotations: ISS along single trajectories, not incrementally stable.
  {
    const SystemEntry e = make_system("piecewise_rotation:c=0.99,theta=1");
    const auto [x, xp] = rotation_split_pair(kRotationSplitEps);
    const TrajectoryPair pair = rollout(e.system, e.policy, x, PerturbationPlan::state(xp - x), 60);
    GainSamplerSpec spec = gain_sampler_for(e);
    spec.seed = derive_seed(seed, 101, 0);
    auto items = sample_gain_items(e.system, spec, 60);
    items.insert(items.end(), e.probe_items.begin(), e.probe_items.end());
    ojson j;
    j["dx_norm"] = num(distance(x, xp));
    j["max_deviation"] = num(pair.max_deviation());
    bool infeasible = false;
    try {
      estimate_gains(e.system, e.policy, items, 60);
    } catch (const EnvelopeInfeasible& err) {
      infeasible = true;
      j["gains"] = to_json(err);
    }
    j["envelope_infeasible"] = infeasible;
    rep["rotation_divergence"] = j;
    table.row("piecewise rotations", "split pair |dx|", distance(x, xp), distance(x, xp) <= 1e-6);
    table.row("piecewise rotations", "max deviation", pair.max_deviation(), pair.max_deviation() >= 0.1);
    table.row("piecewise rotations", "envelope infeasible", infeasible ? 1.0 : 0.0, infeasible);
  }

  // Projection onto a box: sup of linear-class values is not a Lyapunov function.
  {
    const Vec lo = Vec::Constant(2, -1.0), hi = Vec::Constant(2, 1.0);
    const SupValueReport r = sup_value_not_lyapunov_demo(lo, hi, DiscountSchedule::constant(0.9));
    rep["projection"] = to_json(r, 4);
    table.row("projection", "grid points where W increases", static_cast<double>(r.witnesses.size()),
              !r.witnesses.empty());
    table.row("projection", "distance to corner after settling", r.final_distance, r.final_distance < 1e-6);
  }

  // Negation: even-term finite horizon cancels the reward.
  {
    const CancellationReport r = cancellation_demo(3, 1.0, 0.5);
    rep["negation"] = to_json(r);
    table.row("negation", "value over 6 terms", r.value_nominal, std::abs(r.value_nominal) <= 1e-12);
    table.row("negation", "value of perturbed start", r.value_perturbed, std::abs(r.value_perturbed) <= 1e-12);
    table.row("negation", "min deviation", r.min_deviation, r.min_deviation >= 0.5 - 1e-12);
  }

  // Signed-power class sensitivity.
  {
    ojson rows = ojson::array();
    for (int d : {1, 2, 3, 5}) {
      for (double alpha : {0.5, 1.0}) {
        const RewardClass cls = make_signed_power_class(d, 1.0, alpha);
        const auto pairs = sample_box_pairs(Box::cube(d, -1.0, 1.0), 1, 10000, derive_seed(seed, 202, d));
        const SensitivityReport s = certify_sensitivity(cls, pairs);
        ojson row = to_json(s);
        row["d"] = d;
        row["alpha"] = alpha;
        rows.push_back(row);
        char q[64];
        std::snprintf(q, sizeof q, "c_hat d=%d alpha=%.1f (declared %.4f)", d, alpha, s.declared_c);
        table.line("signed power", q, s.c_hat, s.violation ? "below declared" : "meets declared");
      }
    }
    rep["signed_power"] = rows;
  }

  // Linear system audit.
  {
    const SystemEntry e = make_system("scalar_linear:a=0.5,d=1");
    GainSamplerSpec spec = gain_sampler_for(e);
    spec.seed = derive_seed(seed, 303, 0);
    const auto items = sample_gain_items(e.system, spec, 30);
    const GainFit fit = estimate_gains(e.system, e.policy, items, 30);
    const RewardClass cls = make_linear_class(1, 1.0);
    std::vector<DiscountSchedule> scheds{DiscountSchedule::constant(0.5), DiscountSchedule::constant(0.8),
                                         DiscountSchedule::finite_horizon(8)};
    const auto pairs = sample_state_pairs(e.system, 64, derive_seed(seed, 304, 0));
    const auto points = sample_input_offsets(e.system, 64, derive_seed(seed, 305, 0));
    const auto fwd = forward_check(e.system, e.policy, fit.envelope, cls, scheds, pairs, points);
    ojson j;
    j["envelope"] = to_json(fit.envelope, 1.0);
    ojson fj = ojson::array();
    double worst_margin = 0.0;
    bool fwd_ok = true;
    for (const auto& r : fwd) {
      fj.push_back(to_json(r));
      worst_margin = std::max(worst_margin, r.margin);
      fwd_ok = fwd_ok && r.verdict == Verdict::consistent;
    }
    j["forward"] = fj;
    ojson rj = ojson::array();
    bool rev_ok = true;
    double worst_rev = 0.0;
    for (std::size_t t = 1; t <= 8; ++t) {
      const ReverseReport r = reverse_extract(e.system, e.policy, cls, fit.envelope, Vec::Constant(1, 1.0),
                                              PerturbationPlan::state(Vec::Constant(1, 0.1)), t, {1e-1, 1e-2, 1e-3},
                                              {1e-6, e.policy.lipschitz_bound()});
      rj.push_back(to_json(r));
      rev_ok = rev_ok && r.verdict == Verdict::consistent;
      worst_rev = std::max(worst_rev, r.measured_deviation / r.deviation_bound);
    }
    j["reverse"] = rj;
    rep["linear_audit"] = j;
    table.row("linear system", "fitted c1", fit.envelope.c1, fit.envelope.c1 <= 2.0 + 1e-6);
    table.row("linear system", "fitted rho", fit.envelope.rho, fit.envelope.rho == 1.0);
    table.row("linear system", "worst forward margin", worst_margin, fwd_ok);
    table.row("linear system", "worst reverse margin", worst_rev, rev_ok);
  }

  out.table = table.str();
  out.all_expected = table.all();
  rep["all_expected"] = out.all_expected;
  return out;
}

}  // namespace issprobe
