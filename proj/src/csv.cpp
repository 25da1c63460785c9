#include "pitchguard/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pitchguard/error.hpp"

namespace pitchguard {

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw MissingColumnError(name);
}

bool CsvTable::has_column(const std::string& name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    cells.push_back(cell);
    return cells;
}

} // namespace

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto cells = split_line(line);
        if (line_no == 1) {
            table.header = std::move(cells);
        } else {
            if (cells.size() != table.header.size())
                throw MalformedRowError(line_no, "expected " + std::to_string(table.header.size()) +
                                                     " cells, got " + std::to_string(cells.size()));
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.header.empty()) throw ValidationError("csv input has no header row");
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

double parse_double_cell(const std::string& cell, std::size_t line) {
    if (cell.empty()) throw MalformedRowError(line, "empty numeric cell");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || errno == ERANGE || !std::isfinite(v))
        throw MalformedRowError(line, "not a finite number: '" + cell + "'");
    return v;
}

long parse_long_cell(const std::string& cell, std::size_t line) {
    if (cell.empty()) throw MalformedRowError(line, "empty integer cell");
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(cell.c_str(), &end, 10);
    if (end != cell.c_str() + cell.size() || errno == ERANGE)
        throw MalformedRowError(line, "not an integer: '" + cell + "'");
    return v;
}

std::string format_double(double v) {
    // Shortest representation that round-trips; stable across runs.
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

} // namespace pitchguard
