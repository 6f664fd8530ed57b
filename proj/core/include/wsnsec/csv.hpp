#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wsnsec::csv {

/// Locale-free shortest round-trip decimal for a double ("nan"/"inf"
/// never appear in our tables; integralish values print without exponent
/// when std::to_chars chooses so).
std::string format_double(double value);
std::string format_u64(std::uint64_t value);
std::string format_i64(std::int64_t value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t columns() const { return header.size(); }
  std::size_t column_index(const std::string& name) const;  // throws if absent
  double number_at(std::size_t row, std::size_t col) const; // strict parse
};

class Writer {
 public:
  explicit Writer(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);  // throws on column mismatch
  std::string text() const;                      // '\n' line endings, final newline
  void write_file(const std::string& path) const;

  const Table& table() const { return table_; }

 private:
  Table table_;
};

/// Strict reader: non-empty header, every row has exactly the header's
/// column count, no quoting (values must not contain commas or newlines).
Table parse(const std::string& text);
Table read_file(const std::string& path);

std::string to_text(const Table& table);

}  // namespace wsnsec::csv
