#include "sim/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sim {

std::string format_float(double v) {
    if (std::isnan(v))
        throw std::invalid_argument("write_table: NaN cell");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_table(const std::vector<Row>& rows,
                 const std::vector<std::string>& columns,
                 const std::string& path) {
    // Format everything first so a NaN aborts before the file is touched.
    std::string body;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) body += ',';
        body += columns[i];
    }
    body += '\n';
    for (const Row& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("write_table: ragged row");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) body += ',';
            if (const double* d = std::get_if<double>(&row[i]))
                body += format_float(*d);
            else
                body += std::get<std::string>(row[i]);
        }
        body += '\n';
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_table: cannot open '" + path + "'");
    out << body;
    if (!out) throw std::runtime_error("write_table: write failed on '" + path + "'");
}

void write_metadata(const std::map<std::string, std::string>& entries,
                    const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_metadata: cannot open '" + path + "'");
    for (const auto& [key, value] : entries)
        out << key << " = " << value << '\n';
    if (!out) throw std::runtime_error("write_metadata: write failed on '" + path + "'");
}

} // namespace sim
