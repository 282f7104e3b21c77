#pragma once

#include <string>

#include "tlsrand/mat.hpp"

namespace tlsrand {

enum class MatFileFormat { Csv, MatrixMarket };

/// Load a matrix from plain CSV (one row per line, '.' decimal, no header)
/// or Matrix Market array format; the format is detected from the content.
/// NaN/Inf entries are rejected with a ParseError naming the offending line.
Mat load_matrix(const std::string& path);

void save_matrix(const Mat& m, const std::string& path, MatFileFormat format);

Mat parse_csv_matrix(const std::string& text, const std::string& origin);
Mat parse_matrix_market(const std::string& text, const std::string& origin);

std::string format_full_precision(double v);  // 17 significant digits

}  // namespace tlsrand
