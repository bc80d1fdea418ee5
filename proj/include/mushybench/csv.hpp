#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

#include "mushybench/error.hpp"

namespace mushybench {

/// Shortest decimal that round-trips to the same double.
inline std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// "020.0s"-style label used in per-time file names.
inline std::string time_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05.1fs", t);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
      : out_(path) {
    if (!out_) throw Error("cannot write " + path.string());
    bool first = true;
    for (const auto col : header) {
      if (!first) out_ << ',';
      out_ << col;
      first = false;
    }
    out_ << '\n';
  }

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((write_cell(cells, first)), ...);
    out_ << '\n';
  }

 private:
  void write_cell(double v, bool& first) {
    separator(first);
    out_ << format_number(v);
  }
  void write_cell(std::string_view s, bool& first) {
    separator(first);
    out_ << s;
  }
  void write_cell(const char* s, bool& first) { write_cell(std::string_view(s), first); }
  void separator(bool& first) {
    if (!first) out_ << ',';
    first = false;
  }

  std::ofstream out_;
};

}  // namespace mushybench
