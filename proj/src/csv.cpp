#include "rlen/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "rlen/errors.hpp"

namespace rlen {

namespace {

std::vector<std::string> split_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

}  // namespace

SeriesMatrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("read_matrix_csv: cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::vector<std::string> names;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const auto cells = split_line(line);
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw DataError("read_matrix_csv: ragged row at line " + std::to_string(lineno));
    }
    std::vector<double> vals(cells.size());
    bool numeric = true;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_double(cells[c], vals[c])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      // Only the first row may be non-numeric, as a header.
      if (lineno == 1 && rows.empty() && names.empty()) {
        names = cells;
        continue;
      }
      throw DataError("read_matrix_csv: non-numeric cell at line " + std::to_string(lineno));
    }
    rows.push_back(std::move(vals));
  }
  if (rows.size() < 2) {
    throw DataError("read_matrix_csv: need at least 2 data rows, got " +
                    std::to_string(rows.size()));
  }

  SeriesMatrix m = SeriesMatrix::zeros(rows.size(), width);
  m.names = std::move(names);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

void write_matrix_csv(const SeriesMatrix& matrix, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("write_matrix_csv: cannot open " + path);
  if (!matrix.names.empty()) {
    for (std::size_t j = 0; j < matrix.names.size(); ++j) {
      if (j) out << ',';
      out << matrix.names[j];
    }
    out << '\n';
  }
  char buf[40];
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    for (std::size_t j = 0; j < matrix.cols; ++j) {
      if (j) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", matrix.at(i, j));
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("write_matrix_csv: write failed for " + path);
}

}  // namespace rlen
