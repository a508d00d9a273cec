#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noonsim {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Comma-separated rows with shortest round-trip number formatting, so equal
/// inputs always give byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace noonsim
