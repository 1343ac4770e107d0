#pragma once

#include "issprobe/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace issprobe {

/// `name:key=value,key=value` strings used for systems, policies, rewards
/// and reward classes on the command line. Vector values separate their
/// components with ';'.
class SpecArgs {
 public:
  /// `field` names the config field in diagnostics.
  SpecArgs(const std::string& spec, std::string field);

  const std::string& name() const { return name_; }
  const std::string& spec() const { return spec_; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  double get_double(const std::string& key, std::optional<double> fallback = std::nullopt) const;
  int get_int(const std::string& key, std::optional<int> fallback = std::nullopt) const;
  /// Vector of length `dim`; a single scalar is broadcast.
  Vec get_vec(const std::string& key, int dim, std::optional<double> fallback = std::nullopt) const;
  /// Vector whose length is taken from the value itself.
  Vec get_vec(const std::string& key) const;

  /// Throws ConfigError naming the first key not in `allowed`.
  void allow_only(const std::vector<std::string>& allowed) const;

 private:
  [[noreturn]] void fail(const std::string& what) const;

  std::string spec_;
  std::string field_;
  std::string name_;
  std::map<std::string, std::string> values_;
};

/// Parses "1,0.5" or "1;0.5" into a vector.
Vec parse_vec(const std::string& text, const std::string& field);

}  // namespace issprobe
