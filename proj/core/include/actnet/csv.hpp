#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace actnet {

/// Shortest round-trip decimal form. Output is identical across runs, which
/// keeps emitted CSVs byte-comparable.
std::string format_double(double value);

/// Minimal comma-separated writer. Fields are written as given; callers only
/// emit numeric or identifier-like values, so no quoting is performed.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(std::initializer_list<std::string_view> columns);

  CsvWriter& field(std::string_view value);
  CsvWriter& field(double value);
  CsvWriter& field(long long value);
  CsvWriter& field(unsigned long long value);
  CsvWriter& field(int value) { return field(static_cast<long long>(value)); }
  CsvWriter& field(unsigned value) { return field(static_cast<unsigned long long>(value)); }
  CsvWriter& field(long value) { return field(static_cast<long long>(value)); }
  CsvWriter& field(unsigned long value) { return field(static_cast<unsigned long long>(value)); }
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace actnet
