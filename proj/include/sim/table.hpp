#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace sim {

using Cell = std::variant<double, std::string>;
using Row = std::vector<Cell>;

// Locale-independent float formatting, 12 significant digits. The same
// value always renders to the same bytes, which is what makes CSV reruns
// byte-identical.
std::string format_float(double v);

// Writes a CSV file (header row, LF newlines, UTF-8). NaN cells are a hard
// error, never silently written.
void write_table(const std::vector<Row>& rows,
                 const std::vector<std::string>& columns,
                 const std::string& path);

// key = value sidecar recording everything needed to reproduce the CSV.
void write_metadata(const std::map<std::string, std::string>& entries,
                    const std::string& path);

} // namespace sim
