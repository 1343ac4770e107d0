#include "issprobe/registry.hpp"

#include "issprobe/errors.hpp"

#include <algorithm>

namespace issprobe {

namespace {

std::vector<SystemRegistration>& table() {
  static std::vector<SystemRegistration> systems = [] {
    std::vector<SystemRegistration> s;
    s.push_back({"scalar_linear", "f(x,u) = a x + u; keys a (0.5), d (1)", [](const SpecArgs& a) {
                   a.allow_only({"a", "d"});
                   const int d = a.get_int("d", 1);
                   System sys = make_scalar_linear(a.get_double("a", 0.5), d);
                   return SystemEntry{sys, Policy::zero(d), {}, {}, {}};
                 }});
    s.push_back({"piecewise_rotation", "piecewise rotation; keys c (0.99), theta (1)", [](const SpecArgs& a) {
                   a.allow_only({"c", "theta"});
                   System sys = make_piecewise_rotation(a.get_double("c", 0.99), a.get_double("theta", 1.0));
                   const auto [x, xp] = rotation_split_pair(kRotationSplitEps);
                   SystemEntry e{sys, Policy::zero(2), {}, {}, {}};
                   e.probe_items.push_back({x, PerturbationPlan::state(xp - x)});
                   e.probe_pairs.emplace_back(x, xp);
                   e.probe_triples.push_back({xp, x, Vec::Zero(2)});
                   // Input gain is about 1/(1 - c); keep perturbed states inside [-4, 4]^2.
                   e.input_scale = 0.25 * (1.0 - a.get_double("c", 0.99));
                   return e;
                 }});
    s.push_back({"projection", "clamp(x + u) to [lo, hi]^d; keys d (2), lo (-1), hi (1)", [](const SpecArgs& a) {
                   a.allow_only({"d", "lo", "hi"});
                   const int d = a.get_int("d", 2);
                   const Vec lo = a.get_vec("lo", d, -1.0);
                   const Vec hi = a.get_vec("hi", d, 1.0);
                   System sys = make_projection_system(lo, hi);
                   return SystemEntry{sys, Policy::toward(hi, 0.5), {}, {}, {}};
                 }});
    s.push_back({"negation", "f(x,u) = -x + u", [](const SpecArgs& a) {
                   a.allow_only({});
                   ClosedLoop cl = make_negation_system();
                   return SystemEntry{cl.system, cl.policy, {}, {}, {}};
                 }});
    s.push_back({"zero", "f = 0; key d (1)", [](const SpecArgs& a) {
                   a.allow_only({"d"});
                   const int d = a.get_int("d", 1);
                   return SystemEntry{make_zero_system(d), Policy::zero(d), {}, {}, {}};
                 }});
    return s;
  }();
  return systems;
}

}  // namespace

void register_system(SystemRegistration registration) {
  auto& t = table();
  auto it = std::find_if(t.begin(), t.end(), [&](const auto& r) { return r.name == registration.name; });
  if (it != t.end()) throw InvalidParameter("system '" + registration.name + "' is already registered");
  t.push_back(std::move(registration));
}

const std::vector<SystemRegistration>& registered_systems() { return table(); }

GainSamplerSpec gain_sampler_for(const SystemEntry& entry) {
  GainSamplerSpec s;
  s.input_min *= entry.input_scale;
  s.input_max *= entry.input_scale;
  return s;
}

SystemEntry make_system(const std::string& spec) {
  const SpecArgs args(spec, "system");
  for (const auto& r : table()) {
    if (r.name != args.name()) continue;
    try {
      return r.factory(args);
    } catch (const InvalidParameter& e) {
      throw ConfigError("system", "'" + spec + "': " + e.what());
    }
  }
  throw ConfigError("system", "unknown system '" + args.name() + "'");
}

Policy make_policy(const std::string& spec, const SystemEntry& entry) {
  const SpecArgs args(spec, "policy");
  const int n = entry.system.state_dim();
  const int m = entry.system.input_dim();
  try {
    if (args.name() == "default") {
      args.allow_only({});
      return entry.policy;
    }
    if (args.name() == "zero") {
      args.allow_only({});
      return Policy::zero(m);
    }
    if (args.name() == "constant") {
      args.allow_only({"u"});
      return Policy::constant(args.get_vec("u", m));
    }
    if (args.name() == "linear") {
      args.allow_only({"k"});
      if (n != m) throw InvalidParameter("linear:k needs equal state and input dimensions");
      return Policy::linear(args.get_double("k") * Mat::Identity(m, n));
    }
    if (args.name() == "toward_corner") {
      args.allow_only({"gain"});
      if (n != m) throw InvalidParameter("toward_corner needs equal state and input dimensions");
      return Policy::toward(entry.system.domain().hi, args.get_double("gain", 0.5));
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError("policy", "'" + spec + "': " + e.what());
  }
  throw ConfigError("policy", "unknown policy '" + args.name() + "'");
}

}  // namespace issprobe
