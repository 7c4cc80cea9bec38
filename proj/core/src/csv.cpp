#include "spectral/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

namespace spectral::csv {

std::string format(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

void Writer::header(std::initializer_list<std::string_view> names) {
  bool first = true;
  for (auto name : names) {
    if (!first) *out_ << ',';
    *out_ << name;
    first = false;
  }
  *out_ << '\n';
}

void Writer::header(std::span<const std::string> names) {
  raw_row(names);
}

void Writer::row(std::initializer_list<double> values) {
  row(std::span<const double>(values.begin(), values.size()));
}

void Writer::row(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) *out_ << ',';
    *out_ << format(values[i]);
  }
  *out_ << '\n';
}

void Writer::raw_row(std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i != 0) *out_ << ',';
    *out_ << fields[i];
  }
  *out_ << '\n';
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto piece = line.substr(start, comma == std::string_view::npos ? line.size() - start
                                                                          : comma - start);
    out.emplace_back(trim(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::vector<std::string>> read_rows(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    rows.push_back(split_line(t));
  }
  return rows;
}

}  // namespace spectral::csv
