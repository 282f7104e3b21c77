#include "tlsrand/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tlsrand {

namespace {

double parse_number(const std::string& token, const std::string& origin, std::size_t line_no) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &consumed);
    } catch (const std::exception&) {
        fail(ErrorCode::ParseError,
             origin + ": line " + std::to_string(line_no) + ": not a number: '" + token + "'");
    }
    while (consumed < token.size() && std::isspace(static_cast<unsigned char>(token[consumed])))
        ++consumed;
    if (consumed != token.size())
        fail(ErrorCode::ParseError,
             origin + ": line " + std::to_string(line_no) + ": trailing junk in '" + token + "'");
    if (!std::isfinite(v))
        fail(ErrorCode::ParseError,
             origin + ": line " + std::to_string(line_no) + ": non-finite entry '" + token + "'");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string format_full_precision(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Mat parse_csv_matrix(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::vector<Vec> rows;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        Vec row;
        std::istringstream ls(line);
        std::string token;
        while (std::getline(ls, token, ',')) row.push_back(parse_number(token, origin, line_no));
        if (width == 0)
            width = row.size();
        else if (row.size() != width)
            fail(ErrorCode::ParseError, origin + ": line " + std::to_string(line_no) +
                                            ": expected " + std::to_string(width) + " fields, got " +
                                            std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(ErrorCode::ParseError, origin + ": no data rows");
    Mat m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
    return m;
}

Mat parse_matrix_market(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) fail(ErrorCode::ParseError, origin + ": empty file");
    ++line_no;
    {
        std::istringstream hs(line);
        std::string banner, object, fmt, field, symmetry;
        hs >> banner >> object >> fmt >> field >> symmetry;
        if (banner != "%%MatrixMarket" || object != "matrix" || fmt != "array" ||
            field != "real" || symmetry != "general")
            fail(ErrorCode::ParseError,
                 origin + ": expected '%%MatrixMarket matrix array real general' header");
    }
    std::size_t rows = 0, cols = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ds(line);
        long long r = 0, c = 0;
        if (!(ds >> r >> c) || r <= 0 || c <= 0)
            fail(ErrorCode::ParseError,
                 origin + ": line " + std::to_string(line_no) + ": bad dimensions line");
        rows = static_cast<std::size_t>(r);
        cols = static_cast<std::size_t>(c);
        break;
    }
    if (rows == 0) fail(ErrorCode::ParseError, origin + ": missing dimensions line");
    Mat m(rows, cols);
    std::size_t count = 0;
    const std::size_t total = rows * cols;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '%') continue;
        std::istringstream vs(line);
        std::string token;
        while (vs >> token) {
            if (count >= total)
                fail(ErrorCode::ParseError,
                     origin + ": line " + std::to_string(line_no) + ": too many entries");
            const double v = parse_number(token, origin, line_no);
            // array format stores column-major
            m(count % rows, count / rows) = v;
            ++count;
        }
    }
    if (count != total)
        fail(ErrorCode::ParseError, origin + ": expected " + std::to_string(total) +
                                        " entries, got " + std::to_string(count));
    return m;
}

Mat load_matrix(const std::string& path) {
    const std::string text = read_file(path);
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (text.compare(i, 2, "%%") == 0) return parse_matrix_market(text, path);
    return parse_csv_matrix(text, path);
}

void save_matrix(const Mat& m, const std::string& path, MatFileFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    if (format == MatFileFormat::Csv) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (j) out << ',';
                out << format_full_precision(m(i, j));
            }
            out << '\n';
        }
    } else {
        out << "%%MatrixMarket matrix array real general\n";
        out << m.rows() << ' ' << m.cols() << '\n';
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (std::size_t i = 0; i < m.rows(); ++i)
                out << format_full_precision(m(i, j)) << '\n';
    }
    if (!out.good()) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace tlsrand
