#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace blockrecon::cli {

/// Six significant digits, as printf("%.6g").
std::string format_double(double v);

/// One CSV cell. Integers print exactly, booleans as 0/1, doubles via format_double.
class CsvField {
public:
    CsvField(const std::string& s) : text_(s) {}
    CsvField(const char* s) : text_(s) {}
    CsvField(double v) : text_(format_double(v)) {}
    CsvField(bool v) : text_(v ? "1" : "0") {}
    CsvField(std::uint64_t v) : text_(std::to_string(v)) {}
    CsvField(std::uint32_t v) : text_(std::to_string(v)) {}
    CsvField(std::int64_t v) : text_(std::to_string(v)) {}
    CsvField(int v) : text_(std::to_string(v)) {}

    const std::string& text() const { return text_; }

private:
    std::string text_;
};

/// Comma-separated rows with LF line endings. Cells containing a comma, quote or newline are quoted.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<CsvField>& fields);

private:
    std::ostream& out_;
};

} // namespace blockrecon::cli
