#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vex {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key-value experiment configuration with dotted section keys
/// (`case.source.p.family = constant`). One experiment per file; `#` starts a
/// comment; values may be double-quoted.
class Config {
 public:
  static Config parse(std::istream& is);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  const std::string& str(const std::string& key) const;
  std::string str_or(const std::string& key, const std::string& def) const;
  double num(const std::string& key) const;
  double num_or(const std::string& key, double def) const;
  int integer(const std::string& key) const;
  int integer_or(const std::string& key, int def) const;
  std::vector<std::string> list(const std::string& key) const;

  /// FNV-1a over the sorted canonical `key=value` lines.
  std::uint64_t digest() const;

  const std::map<std::string, std::string>& entries() const { return kv_; }
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace vex
