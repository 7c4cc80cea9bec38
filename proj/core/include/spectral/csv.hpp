#pragma once

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spectral::csv {

/// Shortest-safe textual form: 17 significant digits, '.' separator,
/// independent of the global locale.
[[nodiscard]] std::string format(double value);

/// Row-oriented CSV emitter. Strings are written verbatim (no quoting); the
/// library never emits fields containing commas.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(&out) {}

  void header(std::initializer_list<std::string_view> names);
  void header(std::span<const std::string> names);

  void row(std::initializer_list<double> values);
  void row(std::span<const double> values);

  /// Mixed text/number row; numbers must already be formatted.
  void raw_row(std::span<const std::string> fields);

 private:
  std::ostream* out_;
};

/// Splits one CSV line on commas and trims surrounding whitespace.
[[nodiscard]] std::vector<std::string> split_line(std::string_view line);

/// Reads every non-empty, non-comment ('#') line of a stream.
[[nodiscard]] std::vector<std::vector<std::string>> read_rows(std::istream& in);

}  // namespace spectral::csv
