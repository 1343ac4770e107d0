#include "issprobe/spec_args.hpp"

#include "issprobe/errors.hpp"

#include <sstream>

namespace issprobe {

namespace {

double to_double(const std::string& text, bool& ok) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    ok = used == text.size();
    return v;
  } catch (const std::exception&) {
    ok = false;
    return 0.0;
  }
}

}  // namespace

SpecArgs::SpecArgs(const std::string& spec, std::string field) : spec_(spec), field_(std::move(field)) {
  const auto colon = spec.find(':');
  name_ = spec.substr(0, colon);
  if (name_.empty()) fail("missing name");
  if (colon == std::string::npos) return;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) fail("expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (values_.count(key)) fail("duplicate key '" + key + "'");
    values_[key] = item.substr(eq + 1);
  }
}

void SpecArgs::fail(const std::string& what) const { throw ConfigError(field_, "'" + spec_ + "': " + what); }

double SpecArgs::get_double(const std::string& key, std::optional<double> fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    if (fallback) return *fallback;
    fail("missing key '" + key + "'");
  }
  bool ok = false;
  const double v = to_double(it->second, ok);
  if (!ok) fail("key '" + key + "' is not a number");
  return v;
}

int SpecArgs::get_int(const std::string& key, std::optional<int> fallback) const {
  const double v = get_double(key, fallback ? std::optional<double>(*fallback) : std::nullopt);
  if (v != static_cast<double>(static_cast<int>(v))) fail("key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

Vec SpecArgs::get_vec(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) fail("missing key '" + key + "'");
  return parse_vec(it->second, field_);
}

Vec SpecArgs::get_vec(const std::string& key, int dim, std::optional<double> fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    if (fallback) return Vec::Constant(dim, *fallback);
    fail("missing key '" + key + "'");
  }
  Vec v = parse_vec(it->second, field_);
  if (v.size() == 1 && dim != 1) return Vec::Constant(dim, v[0]);
  if (v.size() != dim) fail("key '" + key + "' needs " + std::to_string(dim) + " components");
  return v;
}

void SpecArgs::allow_only(const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    bool known = false;
    for (const auto& a : allowed) known = known || a == key;
    if (!known) fail("unknown key '" + key + "'");
  }
}

Vec parse_vec(const std::string& text, const std::string& field) {
  std::vector<double> values;
  std::string item;
  std::string normalized = text;
  for (char& ch : normalized) {
    if (ch == ';') ch = ',';
  }
  std::stringstream ss(normalized);
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    item = item.substr(first, item.find_last_not_of(' ') - first + 1);
    bool ok = false;
    values.push_back(to_double(item, ok));
    if (!ok) throw ConfigError(field, "'" + text + "' is not a numeric vector");
  }
  if (values.empty()) throw ConfigError(field, "empty vector");
  Vec v(static_cast<int>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<int>(i)] = values[i];
  return v;
}

}  // namespace issprobe
