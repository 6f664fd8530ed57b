#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wsnsec::config {

/// Ordered key = value file: one pair per line, '#' starts a comment,
/// blank lines ignored, keys unique. Insertion order is preserved so a
/// round-tripped file is byte-stable (manifests rely on this).
class KeyValues {
 public:
  static KeyValues parse(const std::string& text);
  static KeyValues parse_file(const std::string& path);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;  // throws if absent
  std::string get_or(const std::string& key, const std::string& fallback) const;

  double get_double(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key) const;  // true|false

  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_u64(const std::string& key, std::uint64_t value);
  void set_bool(const std::string& key, bool value);

  std::string to_text() const;
  void write_file(const std::string& path) const;

  const std::vector<std::pair<std::string, std::string>>& items() const {
    return items_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace wsnsec::config
