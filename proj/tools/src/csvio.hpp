#pragma once

#include <string>
#include <vector>

namespace qthermo::cli {

/// Locale-free rendering with 17 significant digits (lossless for double).
/// Non-finite values map to the literals "inf", "-inf", "nan".
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const; // throws ConfigError
};

/// Comma-separated, LF line endings, one header row.  Every row must have
/// header.size() cells.
void write_csv(const std::string& path, const CsvTable& table);

/// Strict reader for files produced by write_csv.
CsvTable read_csv(const std::string& path);

} // namespace qthermo::cli
