#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "subfuse/core.hpp"

namespace subfuse {

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // rows[r][c]
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace and CR
        size_t a = field.find_first_not_of(" \t\r");
        size_t b = field.find_last_not_of(" \t\r");
        out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

inline double parse_cell(const std::string& cell, size_t row, size_t col) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw parse_error("CSV: non-numeric cell '" + cell + "' at row " + std::to_string(row) +
                          ", column " + std::to_string(col + 1));
    return v;
}

} // namespace detail

// Strict numeric CSV with a header row; any non-numeric cell is an error.
inline CsvTable read_csv_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("CSV: cannot open " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw empty_file("CSV: empty file " + path);
    table.columns = detail::split_csv_line(line);
    size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty() || line == "\r") continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != table.columns.size())
            throw parse_error("CSV: row " + std::to_string(row_number) + " has " +
                              std::to_string(cells.size()) + " fields, expected " +
                              std::to_string(table.columns.size()));
        std::vector<double> row(cells.size());
        for (size_t c = 0; c < cells.size(); ++c)
            row[c] = detail::parse_cell(cells[c], row_number, c);
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw empty_file("CSV: no data rows in " + path);
    return table;
}

// Dataset from a CSV file: the named column is the response, every other
// column becomes a covariate in file order.
inline Dataset read_csv_dataset(const std::string& path, const std::string& response_column) {
    const CsvTable table = read_csv_table(path);
    Index ycol = -1;
    for (size_t c = 0; c < table.columns.size(); ++c)
        if (table.columns[c] == response_column) { ycol = static_cast<Index>(c); break; }
    if (ycol < 0) throw missing_column("CSV: response column '" + response_column + "' not found");
    const Index n = static_cast<Index>(table.rows.size());
    const Index p = static_cast<Index>(table.columns.size()) - 1;
    VectorXd y(n);
    MatrixXd X(n, p);
    std::vector<std::string> names;
    for (size_t c = 0; c < table.columns.size(); ++c)
        if (static_cast<Index>(c) != ycol) names.push_back(table.columns[c]);
    for (Index r = 0; r < n; ++r) {
        y[r] = table.rows[r][ycol];
        Index k = 0;
        for (size_t c = 0; c < table.columns.size(); ++c)
            if (static_cast<Index>(c) != ycol) X(r, k++) = table.rows[r][c];
    }
    return Dataset(std::move(y), std::move(X), std::nullopt, std::move(names));
}

} // namespace subfuse
