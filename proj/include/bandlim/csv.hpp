#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "bandlim/common.hpp"

namespace bandlim {

// 17 significant digits round-trip every double exactly; snprintf with the C
// locale keeps the byte stream independent of the host environment.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

// Comma-separated UTF-8 output with a versioned schema line. All floats go
// through format_g17, so identical inputs produce identical bytes.
class csv_writer {
 public:
  csv_writer(const std::string& path, const std::vector<std::string>& columns)
      : out_(path, std::ios::binary), ncols_(columns.size()) {
    if (!out_) throw config_error("cannot open output file: " + path);
    out_ << "#schema=1\n";
    for (size_t i = 0; i < columns.size(); ++i)
      out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
    out_ << "\n";
  }

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void row(const std::vector<double>& values) {
    if (values.size() != ncols_)
      throw std::invalid_argument("csv_writer: cell count does not match the header");
    for (size_t i = 0; i < values.size(); ++i)
      out_ << format_g17(values[i]) << (i + 1 < values.size() ? "," : "");
    out_ << "\n";
  }

  // pre-formatted cells, for integer or flag columns
  void row_cells(const std::vector<std::string>& cells) {
    if (cells.size() != ncols_)
      throw std::invalid_argument("csv_writer: cell count does not match the header");
    for (size_t i = 0; i < cells.size(); ++i)
      out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
    out_ << "\n";
  }

 private:
  std::ofstream out_;
  size_t ncols_;
};

}  // namespace bandlim
