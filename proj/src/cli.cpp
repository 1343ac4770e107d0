#include "issprobe/cli.hpp"

#include "issprobe/audit.hpp"
#include "issprobe/config.hpp"
#include "issprobe/errors.hpp"
#include "issprobe/kernels.hpp"
#include "issprobe/reproductions.hpp"
#include "issprobe/registry.hpp"
#include "issprobe/report_json.hpp"
#include "issprobe/rng.hpp"
#include "issprobe/spec_args.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

namespace issprobe {

namespace {

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

Vec to_vec(const std::vector<double>& v, const std::string& field, int dim) {
  if (v.size() == 1 && dim > 1) return Vec::Constant(dim, v[0]);
  if (static_cast<int>(v.size()) != dim) {
    throw ConfigError(field, "needs " + std::to_string(dim) + " components, got " + std::to_string(v.size()));
  }
  return Eigen::Map<const Vec>(v.data(), dim);
}

std::vector<double> parse_list(const std::string& text, const std::string& field) { return to_std(parse_vec(text, field)); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("outputs", "cannot write '" + path + "'");
  f << content;
}

// Command-line values, kept as strings so only flags the user passed
// override the config file.
struct Flags {
  std::string config, manifest, out;
  int threads = 0;
  std::uint64_t seed = 0;
  std::string system, policy, reward, reward_class, schedules, x, u, dx, du, rho_grid, tau, reverse_times;
  std::string csv, terms, candidate = "a1=1,p1=1,a2=1,p2=1,a3=0.5,p3=1,b=1,q=1", box = "-1,1";
  std::size_t horizon = 0, start_time = 0, pairs = 0, state_items = 0, input_items = 0, mixed_items = 0;
  double eps = 0, alpha = 0, c1_cap = 0, radius = 0.5;
};

struct Context {
  ExperimentConfig cfg;
  std::vector<std::string> outputs;
  std::ostream& out;
};

class Runner {
 public:
  Runner(CLI::App& app, std::ostream& out) : app_(app), out_(out) {}

  CLI::App* sub(const std::string& name, const std::string& help) {
    CLI::App* s = app_.add_subcommand(name, help);
    s->add_option("--config", flags_.config, "JSON experiment config (schema_version 1)");
    s->add_option("--threads", flags_.threads, "worker threads (default: ISSPROBE_THREADS or all cores)");
    opt(s, "--seed", flags_.seed, "sampler seed");
    s->add_option("--out", flags_.out, "write the JSON report here instead of stdout");
    s->add_option("--manifest", flags_.manifest, "write a run manifest (config hash, version, wall clock)");
    return s;
  }

  template <typename T>
  void opt(CLI::App* s, const std::string& name, T& target, const std::string& help) {
    options_.push_back(s->add_option(name, target, help));
  }

  bool given(const std::string& name) const {
    for (auto* o : options_) {
      if (o->check_lname(name.substr(2)) && o->count() > 0) return true;
    }
    return false;
  }

  Flags& flags() { return flags_; }

  ExperimentConfig build_config() const {
    ExperimentConfig c = flags_.config.empty() ? ExperimentConfig{} : load_config(flags_.config);
    const auto& f = flags_;
    if (given("--seed")) c.sampler.seed = f.seed;
    if (given("--system")) c.system = f.system;
    if (given("--policy")) c.policy = f.policy;
    if (given("--reward")) c.reward = f.reward;
    if (given("--class")) c.reward_class = f.reward_class;
    if (given("--schedule") || given("--schedules")) c.schedules = split_schedule_list(f.schedules);
    if (given("--x")) c.x = parse_list(f.x, "x");
    if (given("--u")) c.u = parse_list(f.u, "u");
    if (given("--dx")) c.dx = parse_list(f.dx, "dx");
    if (given("--du")) c.du = parse_list(f.du, "du");
    if (given("--rho-grid")) c.rho_grid = parse_list(f.rho_grid, "rho_grid");
    if (given("--tau")) c.tau = parse_list(f.tau, "tau");
    if (given("--reverse-times")) {
      c.reverse_times.clear();
      for (double t : parse_list(f.reverse_times, "reverse_times")) c.reverse_times.push_back(static_cast<std::size_t>(t));
    }
    if (given("--horizon")) c.horizon = f.horizon;
    if (given("--start")) c.start_time = f.start_time;
    if (given("--pairs") || given("--samples")) c.sampler.pairs = f.pairs;
    if (given("--state-items")) c.sampler.state_items = f.state_items;
    if (given("--input-items")) c.sampler.input_items = f.input_items;
    if (given("--mixed-items")) c.sampler.mixed_items = f.mixed_items;
    if (given("--eps")) c.eps = f.eps;
    if (given("--alpha")) c.alpha = f.alpha;
    if (given("--c1-cap")) c.c1_cap = f.c1_cap;
    if (!f.out.empty()) c.outputs.report = f.out;
    if (given("--csv")) c.outputs.csv = f.csv;
    if (given("--emit-terms")) c.outputs.terms = f.terms;
    // Validate through the same path as a config file.
    return parse_config(emit_config(c));
  }

 private:
  CLI::App& app_;
  std::ostream& out_;
  Flags flags_;
  std::vector<CLI::Option*> options_;
};

void emit_report(Context& ctx, const ojson& j) {
  const std::string text = j.dump(2) + "\n";
  if (ctx.cfg.outputs.report.empty()) {
    ctx.out << text;
  } else {
    write_file(ctx.cfg.outputs.report, text);
    ctx.outputs.push_back(ctx.cfg.outputs.report);
  }
}

PerturbationPlan plan_from(const ExperimentConfig& c, const System& sys, std::size_t steps) {
  Vec dx = c.dx.empty() ? Vec::Zero(sys.state_dim()) : to_vec(c.dx, "dx", sys.state_dim());
  std::vector<Vec> du;
  if (!c.du.empty()) du.assign(steps, to_vec(c.du, "du", sys.input_dim()));
  return PerturbationPlan{dx, du};
}

int cmd_simulate(Context& ctx) {
  const auto& c = ctx.cfg;
  const SystemEntry e = make_system(c.system);
  const Policy pol = make_policy(c.policy, e);
  const Vec x0 = to_vec(c.x, "x", e.system.state_dim());
  const TrajectoryPair pair = rollout(e.system, pol, x0, plan_from(c, e.system, c.horizon), c.horizon);
  emit_report(ctx, to_json(pair));
  if (!c.outputs.csv.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,deviation";
    for (int i = 0; i < e.system.state_dim(); ++i) csv << ",x" << i << ",xp" << i;
    csv << "\n";
    for (std::size_t t = 0; t < pair.deviations.size(); ++t) {
      csv << t << "," << pair.deviations[t];
      for (int i = 0; i < e.system.state_dim(); ++i) {
        csv << "," << pair.nominal[t].state[i] << "," << pair.perturbed[t].state[i];
      }
      csv << "\n";
    }
    write_file(c.outputs.csv, csv.str());
    ctx.outputs.push_back(c.outputs.csv);
  }
  return kExitOk;
}

int cmd_value(Context& ctx) {
  const auto& c = ctx.cfg;
  if (c.schedules.size() != 1) throw ConfigError("schedules", "value takes exactly one schedule");
  const SystemEntry e = make_system(c.system);
  ValueQuery q{e.system, make_policy(c.policy, e), RewardSequence(parse_reward(c.reward)),
               parse_schedule(c.schedules[0]), c.start_time, c.eps, !c.outputs.terms.empty()};
  const Vec x = to_vec(c.x, "x", e.system.state_dim());
  const ValueResult r = c.u.empty() ? value(q, x) : q_value(q, x, to_vec(c.u, "u", e.system.input_dim()));
  ojson j = to_json(r);
  j["kind"] = c.u.empty() ? "V" : "Q";
  emit_report(ctx, j);
  if (!c.outputs.terms.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,term\n";
    for (std::size_t t = 0; t < r.terms.size(); ++t) csv << t << "," << r.terms[t] << "\n";
    write_file(c.outputs.terms, csv.str());
    ctx.outputs.push_back(c.outputs.terms);
  }
  return kExitOk;
}

GainSamplerSpec gain_spec(const ExperimentConfig& c, const SystemEntry& e) {
  GainSamplerSpec s = gain_sampler_for(e);
  s.seed = c.sampler.seed;
  s.n_state = c.sampler.state_items;
  s.n_input = c.sampler.input_items;
  s.n_mixed = c.sampler.mixed_items;
  return s;
}

GainOptions gain_options(const ExperimentConfig& c) {
  GainOptions o;
  o.rho_grid = c.rho_grid;
  o.c1_cap = c.c1_cap;
  return o;
}

int cmd_estimate_gains(Context& ctx) {
  const auto& c = ctx.cfg;
  const SystemEntry e = make_system(c.system);
  const Policy pol = make_policy(c.policy, e);
  auto items = sample_gain_items(e.system, gain_spec(c, e), c.horizon);
  items.insert(items.end(), e.probe_items.begin(), e.probe_items.end());
  try {
    const GainFit fit = estimate_gains(e.system, pol, items, c.horizon, gain_options(c));
    emit_report(ctx, to_json(fit, c.alpha));
    return kExitOk;
  } catch (const EnvelopeInfeasible& err) {
    emit_report(ctx, to_json(err));
    return kExitViolation;
  }
}

LyapunovCandidate parse_candidate(const std::string& spec) {
  const SpecArgs a("norm:" + spec, "candidate");
  a.allow_only({"a1", "p1", "a2", "p2", "a3", "p3", "b", "q"});
  LyapunovCandidate cand;
  cand.V = [](const Vec& xp, const Vec& x) { return distance(xp, x); };
  cand.alpha1 = {a.get_double("a1", 1.0), a.get_double("p1", 1.0)};
  cand.alpha2 = {a.get_double("a2", 1.0), a.get_double("p2", 1.0)};
  cand.alpha3 = {a.get_double("a3", 0.5), a.get_double("p3", 1.0)};
  cand.rho_gain = {a.get_double("b", 1.0), a.get_double("q", 1.0)};
  return cand;
}

int cmd_lyapunov(Context& ctx, const Flags& f) {
  const auto& c = ctx.cfg;
  const SystemEntry e = make_system(c.system);
  const Policy pol = make_policy(c.policy, e);
  auto triples = sample_lyapunov_triples(e.system, c.sampler.pairs, c.sampler.seed, f.radius);
  triples.insert(triples.end(), e.probe_triples.begin(), e.probe_triples.end());
  const LyapunovReport r = check_lyapunov(parse_candidate(f.candidate), e.system, pol, triples);
  emit_report(ctx, to_json(r));
  return kExitOk;
}

int cmd_certify(Context& ctx, const Flags& f) {
  const auto& c = ctx.cfg;
  const RewardClass cls = parse_reward_class(c.reward_class);
  const Vec lohi = parse_vec(f.box, "box");
  if (lohi.size() != 2) throw ConfigError("box", "expected lo,hi");
  const auto pairs = sample_box_pairs(Box::cube(cls.traits().state_dim, lohi[0], lohi[1]), 1, c.sampler.pairs,
                                      c.sampler.seed);
  const SensitivityReport r = certify_sensitivity(cls, pairs);
  ojson j = to_json(r);
  j["class"] = cls.label();
  emit_report(ctx, j);
  return r.violation ? kExitViolation : kExitOk;
}

int cmd_audit(Context& ctx) {
  const auto& c = ctx.cfg;
  const SystemEntry e = make_system(c.system);
  const Policy pol = make_policy(c.policy, e);
  const RewardClass cls = parse_reward_class(c.reward_class);
  if (cls.traits().state_dim != e.system.state_dim()) {
    throw ConfigError("reward_class", "class dimension does not match the system");
  }
  std::vector<DiscountSchedule> scheds;
  for (const auto& s : c.schedules) scheds.push_back(parse_schedule(s));

  ojson j;
  j["system"] = c.system;
  j["policy"] = pol.label();
  j["reward_class"] = cls.label();
  auto items = sample_gain_items(e.system, gain_spec(c, e), c.horizon);
  items.insert(items.end(), e.probe_items.begin(), e.probe_items.end());
  GainFit fit;
  try {
    fit = estimate_gains(e.system, pol, items, c.horizon, gain_options(c));
  } catch (const EnvelopeInfeasible& err) {
    j["gains"] = to_json(err);
    j["verdict"] = "refuted-by-witness";
    j["reports"] = ojson::array();
    emit_report(ctx, j);
    return kExitViolation;
  }
  j["gains"] = to_json(fit, cls.alpha());

  auto pairs = sample_state_pairs(e.system, c.sampler.pairs, derive_seed(c.sampler.seed, 21, 0));
  pairs.insert(pairs.end(), e.probe_pairs.begin(), e.probe_pairs.end());
  const auto points = sample_input_offsets(e.system, c.sampler.pairs, derive_seed(c.sampler.seed, 22, 0),
                                           c.sampler.r_local);
  ForwardOptions fo;
  fo.eps = c.eps;
  fo.probe_seed = c.sampler.seed;
  auto reports = forward_check(e.system, pol, fit.envelope, cls, scheds, pairs, points, fo);

  const Vec x0 = to_vec(c.x, "x", e.system.state_dim());
  PerturbationPlan plan = plan_from(c, e.system, c.horizon);
  if (plan.is_zero()) plan.initial_offset = Vec::Constant(e.system.state_dim(), 0.1);
  ojson rev = ojson::array();
  bool violated = false;
  for (std::size_t t : c.reverse_times) {
    if (t < 1) continue;
    const ReverseReport r = reverse_extract(e.system, pol, cls, fit.envelope, x0, plan, t, c.tau,
                                            {1e-6, pol.lipschitz_bound()});
    violated = violated || r.verdict == Verdict::violated;
    rev.push_back(to_json(r));
  }

  const auto members = cls.probe_members(1, c.sampler.seed);
  std::vector<Vec> offsets = plan.input_offsets;
  if (offsets.empty()) offsets.assign(c.horizon, Vec::Constant(e.system.input_dim(), 0.1));
  const Policy pi_prime = Policy::offset_by(pol, offsets);
  for (const auto& s : scheds) {
    const PerformanceDifference pd =
        performance_difference(e.system, pol, pi_prime, RewardSequence(members.front()), s, x0, c.eps);
    EquivalenceReport r;
    r.direction = Direction::pdl;
    r.predicted = 2.0 * c.eps;
    r.measured = pd.residual;
    r.margin = pd.residual / r.predicted;
    r.schedule = s.label();
    r.reward_class = cls.label();
    r.member = members.front().label();
    r.mode = "telescoping";
    r.verdict = pd.residual <= r.predicted ? Verdict::consistent : Verdict::violated;
    reports.push_back(r);
  }

  ojson arr = ojson::array();
  for (const auto& r : reports) {
    violated = violated || r.verdict == Verdict::violated;
    arr.push_back(to_json(r));
  }
  j["reports"] = arr;
  j["reverse"] = rev;
  j["verdict"] = violated ? "violated" : "consistent-with";
  emit_report(ctx, j);

  if (!c.outputs.csv.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "schedule,member,mode,measured,predicted\n";
    for (const auto& r : reports) {
      if (r.direction != Direction::forward) continue;
      csv << r.schedule << "," << r.member << "," << r.mode << "," << r.measured << "," << r.predicted << "\n";
    }
    write_file(c.outputs.csv, csv.str());
    ctx.outputs.push_back(c.outputs.csv);
  }
  return violated ? kExitViolation : kExitOk;
}

int cmd_lift(Context& ctx) {
  const auto& c = ctx.cfg;
  if (c.schedules.size() != 1) throw ConfigError("schedules", "lift-demo takes exactly one schedule");
  const SystemEntry e = make_system(c.system);
  const Policy pol = make_policy(c.policy, e);
  const DiscountSchedule sched = parse_schedule(c.schedules[0]);
  const Reward r = parse_reward(c.reward);
  const LiftedSystem lifted(e.system, pol, sched, c.alpha);
  const Vec x0 = to_vec(c.x, "x", e.system.state_dim());
  const auto base = closed_loop(e.system, pol, x0, c.horizon);
  const auto lift = lifted.rollout(x0, c.horizon);
  double max_err = 0.0, lifted_sum = 0.0, base_sum = 0.0;
  ojson steps = ojson::array();
  for (std::size_t t = 0; t <= c.horizon; ++t) {
    const LiftedState g = lifted.lift(base[t].state, t);
    max_err = std::max(max_err, distance(g.y, lift[t].state.y));
    base_sum += sched.cumulative(t) * r(base[t].state, base[t].input);
    if (lifted.scale(lift[t].state.s) > 0.0) lifted_sum += lifted.reward(r, lift[t].state, lift[t].input);
    steps.push_back({{"t", t}, {"s", lift[t].state.s}, {"x", vec_json(base[t].state)}, {"y", vec_json(lift[t].state.y)}});
  }
  ojson j;
  j["schedule"] = sched.label();
  j["alpha"] = c.alpha;
  j["max_lift_error"] = num(max_err);
  j["lifted_reward_sum"] = num(lifted_sum);
  j["weighted_reward_sum"] = num(base_sum);
  j["steps"] = steps;
  emit_report(ctx, j);
  return kExitOk;
}

int cmd_reproductions(Context& ctx) {
  const ExamplesOutput r = run_reproductions(ctx.cfg.sampler.seed);
  ctx.out << r.table;
  if (!ctx.cfg.outputs.report.empty()) {
    write_file(ctx.cfg.outputs.report, r.report.dump(2) + "\n");
    ctx.outputs.push_back(ctx.cfg.outputs.report);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incremental stability probes through value-function regularity"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Runner run(app, out);
  Flags& f = run.flags();

  auto with_system = [&](CLI::App* s) {
    run.opt(s, "--system", f.system, "system spec, e.g. scalar_linear:a=0.5,d=1 or piecewise_rotation:c=0.99,theta=1");
    run.opt(s, "--policy", f.policy, "policy spec: default, zero, constant:u=.., linear:k=.., toward_corner:gain=..");
  };

  CLI::App* simulate = run.sub("simulate", "nominal and perturbed rollouts");
  with_system(simulate);
  run.opt(simulate, "--x", f.x, "initial state, comma separated");
  run.opt(simulate, "--dx", f.dx, "initial state offset");
  run.opt(simulate, "--du", f.du, "input offset applied at every step");
  run.opt(simulate, "--horizon", f.horizon, "number of steps");
  run.opt(simulate, "--csv", f.csv, "write t, deviation and both trajectories as CSV");

  CLI::App* val = run.sub("value", "V or Q under a discount schedule");
  with_system(val);
  run.opt(val, "--reward", f.reward, "reward spec: linear:v=..,C=.., signed_power:v=..,alpha=..,C=.., norm, zero");
  run.opt(val, "--schedule", f.schedules, "constant:0.8, horizon:16 or explicit:@file.csv");
  run.opt(val, "--x", f.x, "state");
  run.opt(val, "--u", f.u, "first input; computes Q instead of V");
  run.opt(val, "--start", f.start_time, "start time t of V_t");
  run.opt(val, "--eps", f.eps, "absolute accuracy");
  run.opt(val, "--emit-terms", f.terms, "write per-step weighted rewards as CSV");

  CLI::App* gains = run.sub("estimate-gains", "fit the (c1, rho, kappa) envelope from sampled rollouts");
  with_system(gains);
  run.opt(gains, "--horizon", f.horizon, "rollout length");
  run.opt(gains, "--rho-grid", f.rho_grid, "candidate input exponents");
  run.opt(gains, "--c1-cap", f.c1_cap, "largest acceptable c1");
  run.opt(gains, "--alpha", f.alpha, "exponent used for kappa_alpha_l1");
  run.opt(gains, "--state-items", f.state_items, "pure state perturbations");
  run.opt(gains, "--input-items", f.input_items, "pure input perturbations");
  run.opt(gains, "--mixed-items", f.mixed_items, "mixed perturbations");

  CLI::App* lyap = run.sub("lyapunov-check", "check V(x',x) = |x' - x| against power-law comparison functions");
  with_system(lyap);
  run.opt(lyap, "--candidate", f.candidate, "a1,p1,a2,p2,a3,p3 and rho gain b,q as key=value list");
  run.opt(lyap, "--samples", f.pairs, "number of sampled triples");
  lyap->add_option("--radius", f.radius, "largest |x' - x| sampled");

  CLI::App* certify = run.sub("certify-class", "estimate the sensitivity constant of a reward class");
  run.opt(certify, "--class", f.reward_class, "signed_power:d=2,alpha=0.5,C=1, linear:d=2,C=1, holder:.., norm");
  run.opt(certify, "--samples", f.pairs, "number of sampled point pairs");
  certify->add_option("--box", f.box, "sampling box lo,hi applied to every coordinate");

  CLI::App* audit = run.sub("audit", "forward and reverse checks of the regularity/stability equivalence");
  with_system(audit);
  run.opt(audit, "--class", f.reward_class, "reward class spec");
  run.opt(audit, "--schedules", f.schedules, "comma separated schedule list");
  run.opt(audit, "--horizon", f.horizon, "rollout length for gain fitting");
  run.opt(audit, "--tau", f.tau, "tau grid for the reverse extraction");
  run.opt(audit, "--reverse-times", f.reverse_times, "target times for the reverse extraction");
  run.opt(audit, "--x", f.x, "start state for the reverse extraction");
  run.opt(audit, "--dx", f.dx, "state offset for the reverse extraction");
  run.opt(audit, "--du", f.du, "input offset for the reverse extraction");
  run.opt(audit, "--pairs", f.pairs, "sampled pairs per Holder estimate");
  run.opt(audit, "--eps", f.eps, "value accuracy");
  run.opt(audit, "--csv", f.csv, "write (schedule, member, mode, measured, predicted) rows");

  CLI::App* lift = run.sub("lift-demo", "compare base and lifted trajectories and rewards");
  with_system(lift);
  run.opt(lift, "--schedule", f.schedules, "nonincreasing schedule");
  run.opt(lift, "--alpha", f.alpha, "Holder exponent of the lifting");
  run.opt(lift, "--reward", f.reward, "reward spec");
  run.opt(lift, "--x", f.x, "initial state");
  run.opt(lift, "--horizon", f.horizon, "number of steps");

  run.sub("paper-examples", "run the canned reproductions and print a summary table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (f.threads > 0) set_thread_count(f.threads);
    Context ctx{run.build_config(), {}, out};
    const std::string name = chosen->get_name();
    int code = kExitOk;
    if (name == "simulate") code = cmd_simulate(ctx);
    else if (name == "value") code = cmd_value(ctx);
    else if (name == "estimate-gains") code = cmd_estimate_gains(ctx);
    else if (name == "lyapunov-check") code = cmd_lyapunov(ctx, f);
    else if (name == "certify-class") code = cmd_certify(ctx, f);
    else if (name == "audit") code = cmd_audit(ctx);
    else if (name == "lift-demo") code = cmd_lift(ctx);
    else if (name == "paper-examples") code = cmd_reproductions(ctx);
    if (!f.manifest.empty()) {
      ojson m;
      m["subcommand"] = name;
      m["version"] = kVersion;
      m["config_hash"] = config_hash(ctx.cfg);
      m["exit_code"] = code;
      m["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      m["outputs"] = ctx.outputs;
      write_file(f.manifest, m.dump(2) + "\n");
    }
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kExitConfig;
  } catch (const EnvelopeInfeasible& e) {
    err << "envelope infeasible: " << e.what() << "\n";
    return kExitViolation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace issprobe
