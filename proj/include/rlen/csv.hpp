#pragma once

#include <string>

#include "rlen/series_matrix.hpp"

namespace rlen {

/// Comma-separated matrix, columns = series, '.' decimal, LF or CRLF line
/// endings. A single non-numeric first row is treated as a header and kept
/// as column names. Throws DataError with the offending line number on
/// ragged rows, non-numeric cells or fewer than 2 data rows.
SeriesMatrix read_matrix_csv(const std::string& path);

/// Writes the matrix with 17 significant digits; includes a header row when
/// column names are present.
void write_matrix_csv(const SeriesMatrix& matrix, const std::string& path);

}  // namespace rlen
