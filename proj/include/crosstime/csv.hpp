#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace crosstime {

/// Scientific notation with 10 significant digits, e.g. 1.234567890e-03.
std::string fmt_sci(double x);

std::uint64_t fnv1a64(std::string_view bytes);

/// Comma-separated writer with '#'-prefixed metadata lines.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& line);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
};

}  // namespace crosstime
