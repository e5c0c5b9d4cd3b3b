#include "blockrecon/cli/csv.hpp"

#include <cstdio>

namespace blockrecon::cli {

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void CsvWriter::row(const std::vector<CsvField>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) out_ << ',';
        const std::string& t = fields[i].text();
        if (t.find_first_of(",\"\n") == std::string::npos) {
            out_ << t;
            continue;
        }
        out_ << '"';
        for (char c : t) {
            if (c == '"') out_ << '"';
            out_ << c;
        }
        out_ << '"';
    }
    out_ << '\n';
}

} // namespace blockrecon::cli
