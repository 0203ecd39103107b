#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twopoint {

/// Flat `key = value` configuration.
///
/// Lines starting with `#` or `;` are comments. A `[section]` header prefixes
/// the keys that follow it, so `[inversion]` + `tol = 1e-10` is the same as
/// `inversion.tol = 1e-10`.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_string(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool contains(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::vector<std::string> keys() const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace twopoint
