#include "pitchguard/table.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>

#include "pitchguard/error.hpp"

namespace pitchguard {

const DataColumn& DataTable::column(const std::string& name) const {
    for (const auto& c : columns)
        if (c.name == name) return c;
    throw MissingColumnError(name);
}

bool DataTable::has_column(const std::string& name) const {
    for (const auto& c : columns)
        if (c.name == name) return true;
    return false;
}

std::vector<std::string> DataTable::column_names() const {
    std::vector<std::string> out;
    out.reserve(columns.size());
    for (const auto& c : columns) out.push_back(c.name);
    return out;
}

namespace {

bool parse_finite(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size() && errno != ERANGE && std::isfinite(out);
}

} // namespace

DataTable DataTable::from_csv(const CsvTable& csv) {
    DataTable table;
    table.columns.resize(csv.header.size());
    for (std::size_t c = 0; c < csv.header.size(); ++c) {
        DataColumn& col = table.columns[c];
        col.name = csv.header[c];
        col.numeric = true;
        col.numbers.reserve(csv.rows.size());
        for (const auto& row : csv.rows) {
            double v;
            if (!parse_finite(row[c], v)) {
                col.numeric = false;
                break;
            }
            col.numbers.push_back(v);
        }
        if (col.numeric) continue;
        col.numbers.clear();
        col.categories.reserve(csv.rows.size());
        for (const auto& row : csv.rows) col.categories.push_back(row[c]);
    }
    return table;
}

} // namespace pitchguard
