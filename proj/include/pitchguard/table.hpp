#ifndef PITCHGUARD_TABLE_HPP
#define PITCHGUARD_TABLE_HPP

#include <string>
#include <vector>

#include "pitchguard/csv.hpp"

namespace pitchguard {

// A loaded data column: numeric when every cell parses as a finite number,
// categorical (raw strings) otherwise.
struct DataColumn {
    std::string name;
    bool numeric = false;
    std::vector<double> numbers;
    std::vector<std::string> categories;

    std::size_t size() const { return numeric ? numbers.size() : categories.size(); }
};

struct DataTable {
    std::vector<DataColumn> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    const DataColumn& column(const std::string& name) const; // throws MissingColumnError
    bool has_column(const std::string& name) const;
    std::vector<std::string> column_names() const;

    static DataTable from_csv(const CsvTable& csv);
};

} // namespace pitchguard

#endif
