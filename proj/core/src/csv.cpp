#include "wsnsec/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace wsnsec::csv {

namespace {

void check_cell(const std::string& cell) {
  if (cell.find_first_of(",\n\r") != std::string::npos)
    throw std::invalid_argument("CSV cell may not contain commas or newlines: " +
                                cell);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buf, ptr);
}

std::string format_u64(std::uint64_t value) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buf, ptr);
}

std::string format_i64(std::int64_t value) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buf, ptr);
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("CSV column not found: " + name);
}

double Table::number_at(std::size_t row, std::size_t col) const {
  const std::string& cell = rows.at(row).at(col);
  double out = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw std::invalid_argument("CSV cell is not a number: " + cell);
  return out;
}

Writer::Writer(std::vector<std::string> header) {
  if (header.empty()) throw std::invalid_argument("CSV header must be non-empty");
  for (const auto& h : header) check_cell(h);
  table_.header = std::move(header);
}

void Writer::add_row(std::vector<std::string> cells) {
  if (cells.size() != table_.header.size())
    throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) +
                                " cells, expected " +
                                std::to_string(table_.header.size()));
  for (const auto& c : cells) check_cell(c);
  table_.rows.push_back(std::move(cells));
}

std::string Writer::text() const { return to_text(table_); }

void Writer::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string to_text(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

Table parse(const std::string& text) {
  Table table;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(
        pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = eol == std::string::npos ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (pos < text.size())
        throw std::invalid_argument("CSV contains an interior empty line");
      break;
    }
    auto cells = split_line(line);
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size())
        throw std::invalid_argument("CSV row width mismatch");
      table.rows.push_back(std::move(cells));
    }
  }
  if (table.header.empty())
    throw std::invalid_argument("CSV has no header row");
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace wsnsec::csv
