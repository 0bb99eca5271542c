#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace cvxtalk::cli {

/// Named columns of equal length. Non-finite values are written as the
/// sentinels "inf", "-inf" and "nan".
struct SweepTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();

    void add_column(std::string name, std::vector<double> values);
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    const std::vector<double>& column(const std::string& name) const;  // throws std::out_of_range
    void check() const;                                                 // throws std::logic_error
};

/// "%.12g", or a sentinel.
std::string format_value(double x);
double parse_value(const std::string& s);  // throws std::invalid_argument

/// "# meta: <json>", then the header, then one row per line.
void write_csv(std::ostream& out, const SweepTable& table);
SweepTable read_csv(std::istream& in);  // throws std::invalid_argument

/// {"meta": ..., "columns": {name: [values]}} with sentinels as strings.
nlohmann::ordered_json table_to_json(const SweepTable& table);

}  // namespace cvxtalk::cli
