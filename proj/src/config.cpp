#include "issprobe/config.hpp"

#include "issprobe/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace issprobe {

using ojson = nlohmann::ordered_json;

namespace {

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

// Line of the first occurrence of "key" in the raw text, 0 when absent.
std::size_t line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
 public:
  Reader(const std::string& text, const ojson& obj, std::string prefix)
      : text_(text), obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) fail(prefix_.empty() ? "config" : prefix_, "expected an object");
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const nlohmann::json::exception& e) {
      fail(path(key), std::string("wrong type: ") + e.what());
    }
  }

  const ojson* child(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void reject_unknown() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) fail(path(it.key()), "unknown key");
    }
  }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    const auto leaf = field.substr(field.rfind('.') == std::string::npos ? 0 : field.rfind('.') + 1);
    const std::size_t line = line_of_key(text_, leaf);
    throw ConfigError(field, line ? what + " (line " + std::to_string(line) + ")" : what);
  }

 private:
  std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  const std::string& text_;
  const ojson& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", "malformed JSON at line " + std::to_string(line_of_offset(text, e.byte)) + ": " +
                                    e.what());
  }
  ExperimentConfig c;
  Reader r(text, doc, "");
  int version = 0;
  r.read("schema_version", version);
  if (version != ExperimentConfig::kSchemaVersion) {
    r.fail("schema_version", "expected " + std::to_string(ExperimentConfig::kSchemaVersion) + ", got " +
                                 std::to_string(version));
  }
  r.read("system", c.system);
  r.read("policy", c.policy);
  r.read("reward", c.reward);
  r.read("reward_class", c.reward_class);
  r.read("schedules", c.schedules);
  r.read("x", c.x);
  r.read("u", c.u);
  r.read("dx", c.dx);
  r.read("du", c.du);
  r.read("start_time", c.start_time);
  r.read("horizon", c.horizon);
  r.read("eps", c.eps);
  r.read("alpha", c.alpha);
  r.read("rho_grid", c.rho_grid);
  r.read("c1_cap", c.c1_cap);
  r.read("tau", c.tau);
  r.read("reverse_times", c.reverse_times);
  if (const ojson* s = r.child("sampler")) {
    Reader rs(text, *s, "sampler");
    rs.read("seed", c.sampler.seed);
    rs.read("pairs", c.sampler.pairs);
    rs.read("state_items", c.sampler.state_items);
    rs.read("input_items", c.sampler.input_items);
    rs.read("mixed_items", c.sampler.mixed_items);
    rs.read("r_local", c.sampler.r_local);
    rs.reject_unknown();
  }
  if (const ojson* o = r.child("outputs")) {
    Reader ro(text, *o, "outputs");
    ro.read("report", c.outputs.report);
    ro.read("csv", c.outputs.csv);
    ro.read("terms", c.outputs.terms);
    ro.reject_unknown();
  }
  r.reject_unknown();
  if (!(c.eps > 0.0)) r.fail("eps", "must be positive");
  if (!(c.alpha > 0.0 && c.alpha <= 1.0)) r.fail("alpha", "must lie in (0, 1]");
  if (c.horizon < 1) r.fail("horizon", "must be at least 1");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ExperimentConfig& c) {
  ojson j;
  j["schema_version"] = ExperimentConfig::kSchemaVersion;
  j["system"] = c.system;
  j["policy"] = c.policy;
  j["reward"] = c.reward;
  j["reward_class"] = c.reward_class;
  j["schedules"] = c.schedules;
  j["x"] = c.x;
  j["u"] = c.u;
  j["dx"] = c.dx;
  j["du"] = c.du;
  j["start_time"] = c.start_time;
  j["horizon"] = c.horizon;
  j["eps"] = c.eps;
  j["alpha"] = c.alpha;
  j["rho_grid"] = c.rho_grid;
  j["c1_cap"] = c.c1_cap;
  j["tau"] = c.tau;
  j["reverse_times"] = c.reverse_times;
  j["sampler"] = {{"seed", c.sampler.seed},
                  {"pairs", c.sampler.pairs},
                  {"state_items", c.sampler.state_items},
                  {"input_items", c.sampler.input_items},
                  {"mixed_items", c.sampler.mixed_items},
                  {"r_local", c.sampler.r_local}};
  j["outputs"] = {{"report", c.outputs.report}, {"csv", c.outputs.csv}, {"terms", c.outputs.terms}};
  return j.dump(2) + "\n";
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : emit_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace issprobe
