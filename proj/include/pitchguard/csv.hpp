#ifndef PITCHGUARD_CSV_HPP
#define PITCHGUARD_CSV_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace pitchguard {

// Minimal comma-separated table: header row plus string cells. The file
// formats here never embed commas or quotes, so no quoting is supported.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const; // throws MissingColumnError
    bool has_column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);
void write_csv(const std::string& path, const CsvTable& table);

// Parses a cell as a finite double; reports the 1-based file line on failure.
double parse_double_cell(const std::string& cell, std::size_t line);
long parse_long_cell(const std::string& cell, std::size_t line);

std::string format_double(double v);

} // namespace pitchguard

#endif
