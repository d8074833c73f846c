#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rlen {

/// N x J collection of equal-length series; columns are the unit of analysis.
struct SeriesMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;        // column-major
  std::vector<std::string> names;  // empty, or one label per column

  static SeriesMatrix zeros(std::size_t rows, std::size_t cols) {
    SeriesMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.data.assign(rows * cols, 0.0);
    return m;
  }

  std::span<const double> col(std::size_t j) const { return {data.data() + j * rows, rows}; }
  std::span<double> col(std::size_t j) { return {data.data() + j * rows, rows}; }
  double at(std::size_t i, std::size_t j) const { return data[j * rows + i]; }
  double& at(std::size_t i, std::size_t j) { return data[j * rows + i]; }
};

}  // namespace rlen
