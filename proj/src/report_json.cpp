#include "issprobe/report_json.hpp"

#include <cmath>

namespace issprobe {

ojson num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ojson vec_json(const Vec& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

namespace {

ojson doubles(const std::vector<double>& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

ojson to_json(const ValueResult& r) {
  ojson j;
  j["value"] = num(r.value);
  j["truncation_T"] = r.truncation_T;
  j["tail_bound"] = num(r.tail_bound);
  j["term_count"] = r.term_count;
  return j;
}

ojson to_json(const TrajectoryPair& p) {
  ojson j;
  ojson nominal = ojson::array(), perturbed = ojson::array();
  for (const auto& s : p.nominal) nominal.push_back({{"state", vec_json(s.state)}, {"input", vec_json(s.input)}});
  for (const auto& s : p.perturbed) perturbed.push_back({{"state", vec_json(s.state)}, {"input", vec_json(s.input)}});
  j["nominal"] = nominal;
  j["perturbed"] = perturbed;
  j["deviations"] = doubles(p.deviations);
  j["max_deviation"] = num(p.max_deviation());
  return j;
}

ojson to_json(const GainEnvelope& e, double alpha) {
  ojson j;
  j["c1"] = num(e.c1);
  j["rho"] = num(e.rho);
  j["kappa"] = doubles(e.kappa);
  j["alpha"] = num(alpha);
  j["kappa_alpha_l1"] = num(e.kappa_alpha_l1(alpha));
  return j;
}

ojson to_json(const GainWitness& w) {
  return {{"item", w.item},          {"t", w.t},
          {"dx_norm", num(w.dx_norm)}, {"du_max", num(w.du_max)},
          {"deviation", num(w.deviation)}, {"max_deviation", num(w.max_deviation)},
          {"ratio", num(w.ratio)}};
}

ojson to_json(const GainFit& f, double alpha) {
  ojson j;
  j["envelope"] = to_json(f.envelope, alpha);
  j["c1_state"] = num(f.c1_state);
  j["c1_by_rho"] = doubles(f.c1_by_rho);
  j["state_witness"] = to_json(f.state_witness);
  j["input_witness"] = to_json(f.input_witness);
  j["items"] = f.trajectories.size();
  return j;
}

ojson to_json(const EnvelopeInfeasible& e) {
  ojson j;
  j["error"] = "EnvelopeInfeasible";
  j["message"] = e.what();
  j["witness"] = to_json(e.witness());
  j["x0"] = vec_json(e.x0());
  j["dx"] = vec_json(e.dx());
  return j;
}

ojson to_json(const SensitivityReport& r) {
  ojson j;
  j["c_hat"] = num(r.c_hat);
  j["C_hat"] = num(r.C_hat);
  j["alpha_fit"] = r.alpha_fit ? num(*r.alpha_fit) : ojson(nullptr);
  j["declared_c"] = num(r.declared_c);
  j["violation"] = r.violation;
  j["sup_exact"] = r.sup_exact;
  j["n_used"] = r.n_used;
  j["n_excluded"] = r.n_excluded;
  j["c_witness"] = r.c_witness;
  j["C_witness"] = r.C_witness;
  j["C_witness_member"] = r.C_witness_member;
  return j;
}

ojson to_json(const LyapunovReport& r, std::size_t max_violations) {
  ojson j;
  j["pass"] = r.pass;
  j["n_checked"] = r.n_checked;
  j["n_violations"] = r.violations.size();
  ojson v = ojson::array();
  for (std::size_t i = 0; i < r.violations.size() && i < max_violations; ++i) {
    const auto& x = r.violations[i];
    v.push_back({{"kind", to_string(x.kind)},
                 {"index", x.index},
                 {"xp", vec_json(x.triple.xp)},
                 {"x", vec_json(x.triple.x)},
                 {"du", vec_json(x.triple.du)},
                 {"lhs", num(x.lhs)},
                 {"rhs", num(x.rhs)}});
  }
  j["violations"] = v;
  return j;
}

ojson to_json(const HolderEstimate& h) {
  return {{"C_hat", num(h.C_hat)},
          {"exponent", num(h.exponent)},
          {"mode", to_string(h.mode)},
          {"witness", h.witness},
          {"witness_pair", {vec_json(h.witness_pair.first), vec_json(h.witness_pair.second)}},
          {"n_used", h.n_used},
          {"n_excluded", h.n_excluded}};
}

ojson to_json(const EquivalenceReport& r) {
  ojson j;
  j["direction"] = to_string(r.direction);
  j["schedule"] = r.schedule;
  j["reward_class"] = r.reward_class;
  j["member"] = r.member;
  j["mode"] = r.mode;
  j["predicted"] = num(r.predicted);
  j["measured"] = num(r.measured);
  j["margin"] = num(r.margin);
  j["verdict"] = to_string(r.verdict);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

ojson to_json(const ReverseReport& r) {
  ojson j;
  j["t"] = r.t;
  j["deviation_bound"] = num(r.deviation_bound);
  j["closed_form_bound"] = num(r.closed_form_bound);
  j["measured_deviation"] = num(r.measured_deviation);
  j["margin"] = num(r.deviation_bound > 0.0 ? r.measured_deviation / r.deviation_bound : 0.0);
  ojson taus = ojson::array();
  for (const auto& s : r.per_tau) {
    taus.push_back({{"tau", num(s.tau)},
                    {"value_gap", num(s.value_gap)},
                    {"rhs", num(s.rhs)},
                    {"deviation_bound", num(s.deviation_bound)},
                    {"gap_within_rhs", s.gap_within_rhs}});
  }
  j["per_tau"] = taus;
  j["verdict"] = to_string(r.verdict);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

ojson to_json(const CancellationReport& r) {
  return {{"term_count", r.term_count},      {"value_nominal", num(r.value_nominal)},
          {"value_perturbed", num(r.value_perturbed)}, {"max_deviation", num(r.max_deviation)},
          {"min_deviation", num(r.min_deviation)},     {"terms", doubles(r.terms)}};
}

ojson to_json(const SupValueReport& r, std::size_t max_witnesses) {
  ojson j;
  j["grid_points"] = r.grid_points;
  j["corner"] = vec_json(r.corner);
  j["n_witnesses"] = r.witnesses.size();
  j["settle_steps"] = r.settle_steps;
  j["final_distance"] = num(r.final_distance);
  ojson w = ojson::array();
  for (std::size_t i = 0; i < r.witnesses.size() && i < max_witnesses; ++i) {
    const auto& x = r.witnesses[i];
    w.push_back({{"x", vec_json(x.x)}, {"W", num(x.w)}, {"x_next", vec_json(x.x_next)}, {"W_next", num(x.w_next)}});
  }
  j["witnesses"] = w;
  return j;
}

ojson to_json(const PerformanceDifference& p) {
  return {{"lhs", num(p.lhs)},
          {"v_prime", num(p.v_prime)},
          {"v_base", num(p.v_base)},
          {"decomposition_sum", num(p.decomposition_sum)},
          {"residual", num(p.residual)},
          {"truncation_T", p.truncation_T},
          {"terms", doubles(p.terms)}};
}

}  // namespace issprobe
