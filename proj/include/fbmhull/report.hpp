#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace fbmhull {

// Fixed shortest-roundtrip formatting so result files are byte-identical
// across runs and worker counts.
std::string format_double(double v);

// Minimal CSV emitter: header row, '.' decimal separator, one row per call.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  void row_text(const std::vector<std::string>& cells);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace fbmhull
