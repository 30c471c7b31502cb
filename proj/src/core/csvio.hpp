#pragma once

#include <string>
#include <variant>
#include <vector>

namespace clab::csvio {

using Cell = std::variant<double, long, std::string>;
using Row = std::vector<Cell>;

// Formats a double with 17 significant digits and '.' as the decimal
// separator, locale-independent.
std::string format_double(double v);

// RFC-4180-style CSV: header row, LF line endings, deterministic row order
// (the caller's order).
void emit_csv(const std::vector<std::string>& header, const std::vector<Row>& rows,
              const std::string& path);

std::string render_csv(const std::vector<std::string>& header, const std::vector<Row>& rows);

}  // namespace clab::csvio
