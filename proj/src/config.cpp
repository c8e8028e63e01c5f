#include "dialectic/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dialectic {

static std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
    cfg.values_[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return cfg;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Config::require(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw std::runtime_error("config key missing: " + key);
  return it->second;
}

int Config::get_int(const std::string& key, int fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : std::stoi(it->second);
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : std::stod(it->second);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : std::stoull(it->second);
}

std::string Config::resolve_backend_name(const std::string& name) const {
  if (has("backend." + name + ".kind")) return name;
  // The judge and adversary default to the user simulator's endpoint.
  if ((name == "judge" || name == "adversary") && has("backend.user.kind")) return "user";
  throw std::runtime_error("no backend block configured for \"" + name + "\"");
}

BackendSpec Config::backend_spec(const std::string& name) const {
  std::string block = resolve_backend_name(name);
  std::string prefix = "backend." + block + ".";
  BackendSpec spec;
  std::string kind = require(prefix + "kind");
  if (kind == "http")
    spec.kind = BackendSpec::Kind::http;
  else if (kind == "scripted")
    spec.kind = BackendSpec::Kind::scripted;
  else
    throw std::runtime_error("unknown backend kind: " + kind);
  spec.model_name = get(prefix + "model", spec.kind == BackendSpec::Kind::scripted ? "scripted" : "");
  spec.base_url = get(prefix + "base_url");
  spec.api_key_env_var = get(prefix + "api_key_env");
  spec.script_path = get(prefix + "script");
  spec.max_retries = get_int(prefix + "max_retries", 3);
  spec.requests_per_minute_cap = get_int(prefix + "rpm_cap", 60);
  spec.timeout_seconds = get_int(prefix + "timeout_seconds", 120);
  spec.backoff_base_ms = get_int(prefix + "backoff_base_ms", 1000);
  if (spec.kind == BackendSpec::Kind::http && spec.base_url.empty())
    throw std::runtime_error("http backend \"" + block + "\" requires base_url");
  if (spec.kind == BackendSpec::Kind::scripted && spec.script_path.empty())
    throw std::runtime_error("scripted backend \"" + block + "\" requires script");
  return spec;
}

IndeterminatePolicy Config::indeterminate_policy() const {
  return indeterminate_policy_from_string(get("indeterminate_policy", "as_correct"));
}

}  // namespace dialectic
