#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace confgate::harness {

struct TomlError : std::runtime_error {
  explicit TomlError(const std::string& what) : std::runtime_error(what) {}
};

// Scalar or homogeneous array value from a config file. Integers promote to
// floats on request; nothing else converts implicitly.
class TomlValue {
 public:
  enum class Kind { kString, kInt, kFloat, kBool, kArray };

  static TomlValue str(std::string v);
  static TomlValue integer(std::int64_t v);
  static TomlValue real(double v);
  static TomlValue boolean(bool v);
  static TomlValue array(std::vector<TomlValue> v);

  Kind kind() const { return kind_; }
  const std::string& as_string() const;
  std::int64_t as_int() const;
  double as_float() const;  // accepts kInt too
  bool as_bool() const;
  const std::vector<TomlValue>& as_array() const;

 private:
  Kind kind_ = Kind::kInt;
  std::string s_;
  std::int64_t i_ = 0;
  double f_ = 0.0;
  bool b_ = false;
  std::vector<TomlValue> arr_;
};

// Parsed config: keys are flattened to "section.key". Covers the subset of
// TOML these configs use: [section] headers, bare keys, strings, integers,
// floats, booleans, single-line arrays, and # comments.
class TomlDocument {
 public:
  bool contains(const std::string& key) const;
  const TomlValue& at(const std::string& key) const;  // names the key on miss

  // Typed lookups with defaults for optional keys.
  std::string get_string(const std::string& key, const std::string& dflt) const;
  std::int64_t get_int(const std::string& key, std::int64_t dflt) const;
  double get_float(const std::string& key, double dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;
  std::vector<double> get_float_array(const std::string& key) const;

  std::map<std::string, TomlValue>& entries() { return entries_; }
  const std::map<std::string, TomlValue>& entries() const { return entries_; }

 private:
  std::map<std::string, TomlValue> entries_;
};

TomlDocument parse_toml(const std::string& text);
TomlDocument parse_toml_file(const std::filesystem::path& path);

}  // namespace confgate::harness
