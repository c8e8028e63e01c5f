#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dialectic/backend.hpp"
#include "dialectic/judge.hpp"

namespace dialectic {

// Flat key = value run configuration ('#' comments, blank lines ignored).
class Config {
 public:
  Config() = default;
  static Config load(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  std::string require(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  // Backend block under "backend.<name>." keys; falls back to backend.user
  // for judge/adversary when the named block is absent.
  BackendSpec backend_spec(const std::string& name) const;
  std::string resolve_backend_name(const std::string& name) const;

  IndeterminatePolicy indeterminate_policy() const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace dialectic
