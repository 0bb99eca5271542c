#include "cvxtalk/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cvxtalk::cli {

void SweepTable::add_column(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != rows()) {
        throw std::logic_error("SweepTable: column '" + name + "' has " + std::to_string(values.size()) +
                               " rows, expected " + std::to_string(rows()));
    }
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

const std::vector<double>& SweepTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return columns[i];
    }
    throw std::out_of_range("SweepTable: no column '" + name + "'");
}

void SweepTable::check() const {
    if (names.size() != columns.size()) throw std::logic_error("SweepTable: names and columns differ in count");
    for (const auto& c : columns) {
        if (c.size() != rows()) throw std::logic_error("SweepTable: ragged columns");
    }
}

std::string format_value(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double parse_value(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return x;
}

void write_csv(std::ostream& out, const SweepTable& table) {
    table.check();
    out << "# meta: " << table.meta.dump() << '\n';
    for (std::size_t c = 0; c < table.names.size(); ++c) out << (c ? "," : "") << table.names[c];
    out << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << format_value(table.columns[c][r]);
        out << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

SweepTable read_csv(std::istream& in) {
    SweepTable t;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# meta: ", 0) != 0) {
        throw std::invalid_argument("CSV: first line must be '# meta: <json>'");
    }
    try {
        t.meta = nlohmann::ordered_json::parse(line.substr(8));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("CSV: bad meta header: ") + e.what());
    }
    if (!std::getline(in, line)) throw std::invalid_argument("CSV: missing header row");
    t.names = split(line);
    t.columns.assign(t.names.size(), {});
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != t.names.size()) {
            throw std::invalid_argument("CSV: row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                                        " cells, expected " + std::to_string(t.names.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) t.columns[c].push_back(parse_value(cells[c]));
    }
    return t;
}

nlohmann::ordered_json table_to_json(const SweepTable& table) {
    table.check();
    nlohmann::ordered_json cols = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        auto arr = nlohmann::ordered_json::array();
        for (double x : table.columns[c]) {
            if (std::isfinite(x)) {
                arr.push_back(x);
            } else {
                arr.push_back(format_value(x));
            }
        }
        cols[table.names[c]] = std::move(arr);
    }
    return {{"meta", table.meta}, {"columns", cols}};
}

}  // namespace cvxtalk::cli
