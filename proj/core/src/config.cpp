#include "wsnsec/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wsnsec/csv.hpp"

namespace wsnsec::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

KeyValues KeyValues::parse(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  " has no '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  " has an empty key");
    if (kv.has(key))
      throw std::invalid_argument("duplicate config key: " + key);
    kv.items_.emplace_back(std::move(key), std::move(value));
  }
  return kv;
}

KeyValues KeyValues::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool KeyValues::has(const std::string& key) const {
  for (const auto& [k, v] : items_)
    if (k == key) return true;
  return false;
}

const std::string& KeyValues::get(const std::string& key) const {
  for (const auto& [k, v] : items_)
    if (k == key) return v;
  throw std::out_of_range("missing config key: " + key);
}

std::string KeyValues::get_or(const std::string& key,
                              const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

double KeyValues::get_double(const std::string& key) const {
  const std::string& v = get(key);
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config key " + key + " is not a number: " + v);
  return out;
}

std::uint64_t KeyValues::get_u64(const std::string& key) const {
  const std::string& v = get(key);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config key " + key +
                                " is not a non-negative integer: " + v);
  return out;
}

bool KeyValues::get_bool(const std::string& key) const {
  const std::string& v = get(key);
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("config key " + key + " expects true|false: " + v);
}

void KeyValues::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : items_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  items_.emplace_back(key, value);
}

void KeyValues::set_double(const std::string& key, double value) {
  set(key, csv::format_double(value));
}

void KeyValues::set_u64(const std::string& key, std::uint64_t value) {
  set(key, csv::format_u64(value));
}

void KeyValues::set_bool(const std::string& key, bool value) {
  set(key, value ? "true" : "false");
}

std::string KeyValues::to_text() const {
  std::ostringstream out;
  for (const auto& [k, v] : items_) out << k << " = " << v << '\n';
  return out.str();
}

void KeyValues::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_text();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace wsnsec::config
