#pragma once

#include "issprobe/dynamics.hpp"
#include "issprobe/spec_args.hpp"
#include "issprobe/stability.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace issprobe {

/// A built-in system with its reference policy and any hand-made probes that
/// random sampling is unlikely to hit.
struct SystemEntry {
  System system;
  Policy policy;
  std::vector<SampleItem> probe_items;
  std::vector<std::pair<Vec, Vec>> probe_pairs;
  std::vector<LyapunovTriple> probe_triples;
  /// Multiplies sampled input perturbation magnitudes so rollouts stay in the domain.
  double input_scale = 1.0;
};

/// Default gain sampler for the entry, with its input scale applied.
GainSamplerSpec gain_sampler_for(const SystemEntry& entry);

using SystemFactory = std::function<SystemEntry(const SpecArgs&)>;

struct SystemRegistration {
  std::string name;
  std::string help;
  SystemFactory factory;
};

/// Adds a system to the registry. Defining a static SystemRegistrar in any
/// translation unit linked into the binary is the extension point.
void register_system(SystemRegistration registration);

struct SystemRegistrar {
  explicit SystemRegistrar(SystemRegistration registration) { register_system(std::move(registration)); }
};

const std::vector<SystemRegistration>& registered_systems();

/// Builds `name:key=value,...`, e.g. `scalar_linear:a=0.5,d=1` or `piecewise_rotation:c=0.99,theta=1`.
SystemEntry make_system(const std::string& spec);

/// `default` (the system's reference policy), `zero`, `constant:u=..`,
/// `linear:k=..` (u = k x) or `toward_corner:gain=..` (steers to the domain's upper corner).
Policy make_policy(const std::string& spec, const SystemEntry& entry);

/// ε used for the split pair of the piecewise rotation; ‖δx‖ = 2ε.
inline constexpr double kRotationSplitEps = 5e-7;

}  // namespace issprobe
