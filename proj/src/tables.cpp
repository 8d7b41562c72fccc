#include "pseudoexit/tables.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace pseudoexit {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Table::add_numeric(std::string name, std::vector<double> values) {
    Column c;
    c.name = std::move(name);
    c.numbers = std::move(values);
    columns.push_back(std::move(c));
}

void Table::add_text(std::string name, std::vector<std::string> values) {
    Column c;
    c.name = std::move(name);
    c.is_text = true;
    c.strings = std::move(values);
    columns.push_back(std::move(c));
}

std::size_t Table::row_count() const {
    std::size_t rows = 0;
    for (const auto& c : columns)
        rows = std::max(rows, c.is_text ? c.strings.size() : c.numbers.size());
    return rows;
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i].name;
    }
    out += '\n';
    const std::size_t rows = row_count();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            const auto& c = columns[i];
            if (c.is_text) {
                if (r < c.strings.size()) out += c.strings[r];
            } else if (r < c.numbers.size()) {
                out += format_double(c.numbers[r]);
            }
        }
        out += '\n';
    }
    return out;
}

std::string Table::to_json(
    const std::vector<std::pair<std::string, std::string>>& metadata) const {
    nlohmann::ordered_json root;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) meta[k] = v;
    root["metadata"] = std::move(meta);
    nlohmann::ordered_json cols = nlohmann::ordered_json::object();
    for (const auto& c : columns) {
        if (c.is_text)
            cols[c.name] = c.strings;
        else
            cols[c.name] = c.numbers;
    }
    root["columns"] = std::move(cols);
    return root.dump(2) + "\n";
}

}  // namespace pseudoexit
