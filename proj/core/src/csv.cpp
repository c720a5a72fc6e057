#include "affilab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace affilab {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::size_t CsvTable::col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::runtime_error("csv: missing column '" + name + "'");
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

} // namespace

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path);
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        os << table.header[i] << (i + 1 < table.header.size() ? "," : "");
    }
    os << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("csv row width " + std::to_string(row.size()) +
                                        " does not match header width " +
                                        std::to_string(table.header.size()));
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << row[i] << (i + 1 < row.size() ? "," : "");
        }
        os << "\n";
    }
    if (!os) throw std::runtime_error("write failed for " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error(path + ": empty csv");
    t.header = split_commas(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        t.rows.push_back(split_commas(line));
    }
    return t;
}

void write_matrix(const std::string& path, std::size_t rows, std::size_t cols, const double* data) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << rows << " " << cols << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            os << fmt17(data[r * cols + c]) << (c + 1 < cols ? " " : "");
        }
        os << "\n";
    }
    if (!os) throw std::runtime_error("write failed for " + path);
}

std::vector<double> read_matrix(const std::string& path, std::size_t& rows, std::size_t& cols) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    if (!(is >> rows >> cols)) throw std::runtime_error(path + ": bad matrix header");
    std::vector<double> data(rows * cols);
    for (auto& v : data) {
        if (!(is >> v)) throw std::runtime_error(path + ": truncated matrix");
    }
    return data;
}

} // namespace affilab
