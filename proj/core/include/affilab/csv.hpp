#pragma once

#include <string>
#include <vector>

namespace affilab {

// Floats in every persisted file use 17 significant digits so values
// round-trip exactly.
std::string fmt17(double v);

// Minimal CSV support: comma-separated cells, no quoting (the project never
// emits commas inside cells), first row is the header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by header name; throws std::runtime_error if missing.
    std::size_t col(const std::string& name) const;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// Plain-text numeric matrix with a one-line "rows cols" header.
void write_matrix(const std::string& path, std::size_t rows, std::size_t cols, const double* data);
std::vector<double> read_matrix(const std::string& path, std::size_t& rows, std::size_t& cols);

} // namespace affilab
