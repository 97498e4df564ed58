#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// Bad input, bad config, bad file: the caller can fix it. CLI maps this to
// exit code 1; anything else that escapes maps to 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// FNV-1a, 64 bit. Used to pin data files and to fingerprint feature layouts.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
bool file_exists(const std::string& path);

// Dense row-major matrix of doubles; the only numeric container shared
// between feature assembly, training and evaluation.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double* row(std::size_t r) { return data.data() + r * cols; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }
};

// Decimal rendering that round-trips doubles exactly (used by every CSV
// artifact so that re-reading a file reproduces bit-identical values).
std::string format_double(double v);

std::string to_lower_ascii(std::string_view s);

// Control characters in grams (unit separator, sentinel, tabs) are rendered
// as \xNN escapes in TSV/CSV reports.
std::string escape_control(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

}  // namespace stylo
