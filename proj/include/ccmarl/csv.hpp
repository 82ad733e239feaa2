#pragma once

// Minimal comma-separated I/O: header row plus unquoted numeric/text cells,
// which is all the trajectory dumps and summary tables need. Doubles are
// written with shortest round-trip formatting so identical runs produce
// identical bytes.

#include <charconv>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmarl {

inline void format_double(std::ostream& out, double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.write(buf, res.ptr - buf);
}

inline std::string double_to_string(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw std::invalid_argument("csv: missing column '" + name + "'");
    }

    // Parses the named column as doubles; errors name the offending cell.
    std::vector<double> numeric_column(const std::string& name) const {
        const int col = column_index(name);
        std::vector<double> values;
        values.reserve(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::string& cell = rows[r][static_cast<std::size_t>(col)];
            double v = 0.0;
            const char* begin = cell.data();
            const char* end = begin + cell.size();
            const auto res = std::from_chars(begin, end, v);
            if (res.ec != std::errc{} || res.ptr != end)
                throw std::invalid_argument("csv: non-numeric cell at row " + std::to_string(r + 2) +
                                            ", column '" + name + "': '" + cell + "'");
            values.push_back(v);
        }
        return values;
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split_csv_line(line);
    std::size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != table.header.size())
            throw std::runtime_error("csv: row " + std::to_string(row_number) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(table.header.size()));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

}  // namespace ccmarl
