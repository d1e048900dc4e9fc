#include "csvio.hpp"

#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qthermo::cli {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    std::string known;
    for (const auto& h : header) {
        if (!known.empty()) known += ", ";
        known += h;
    }
    throw ConfigError("unknown column '" + name + "' (available: " + known + ")");
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write CSV file: " + path);
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw ConfigError("CSV row width " + std::to_string(row.size()) +
                              " does not match header width " +
                              std::to_string(table.header.size()));
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

double parse_cell(const std::string& cell, const std::string& path, int line) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ConfigError(path + ":" + std::to_string(line) + ": bad numeric cell '" + cell + "'");
    }
    return v;
}

} // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open CSV file: " + path);
    CsvTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (table.header.empty()) {
            table.header = split_line(line);
            continue;
        }
        const auto cells = split_line(line);
        if (cells.size() != table.header.size()) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(table.header.size()) + " cells, got " +
                              std::to_string(cells.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_cell(c, path, lineno));
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw ConfigError("empty CSV file: " + path);
    return table;
}

} // namespace qthermo::cli
