#pragma once

#include <string>
#include <vector>

namespace boxwing::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const; // throws InputError if absent
    bool has_column(const std::string& name) const;
};

Table read(const std::string& path);
void write(const Table& table, const std::string& path, bool allow_overwrite);

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double v);
// Strict parse: the whole field must be a finite decimal number.
double parse_double(const std::string& field, const std::string& context);

} // namespace boxwing::csv
