#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pseudoexit {

// Column-oriented result table. Numeric columns are rendered with 17
// significant digits in CSV (and as JSON numbers); text columns carry exact
// rational strings through the interface losslessly.
struct Table {
    struct Column {
        std::string name;
        bool is_text = false;
        std::vector<double> numbers;
        std::vector<std::string> strings;
    };

    std::vector<Column> columns;

    void add_numeric(std::string name, std::vector<double> values);
    void add_text(std::string name, std::vector<std::string> values);
    std::size_t row_count() const;

    std::string to_csv() const;
    // {"metadata": {...}, "columns": {...}} with insertion order preserved.
    std::string to_json(const std::vector<std::pair<std::string, std::string>>& metadata) const;
};

std::string format_double(double v);

}  // namespace pseudoexit
