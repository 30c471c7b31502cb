#include "core/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "core/errors.hpp"

namespace clab::csvio {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

namespace {

void append_cell(std::string& out, const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) {
    out += format_double(*d);
  } else if (const long* i = std::get_if<long>(&cell)) {
    out += std::to_string(*i);
  } else {
    const std::string& s = std::get<std::string>(cell);
    const bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) {
      out += s;
      return;
    }
    out += '"';
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
}

}  // namespace

std::string render_csv(const std::vector<std::string>& header, const std::vector<Row>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const Row& row : rows) {
    if (row.size() != header.size()) {
      fail(errc::schema_violation, "row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      append_cell(out, row[i]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<std::string>& header, const std::vector<Row>& rows,
              const std::string& path) {
  const std::string content = render_csv(header, rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_failure, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(errc::io_failure, "short write to '" + path + "'");
}

}  // namespace clab::csvio
