#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "qtd/errors.hpp"

namespace qtd {

/// Render a double with 17 significant digits (lossless round-trip).
inline std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Rectangular numeric table with provenance lines (emitted as `#` comments).
struct ResultTable {
    std::vector<std::string> provenance;  ///< comment lines, without the "# " prefix
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void append_row(std::vector<double> row) {
        if (row.size() != columns.size())
            throw DomainError("row width " + std::to_string(row.size())
                              + " does not match column count " + std::to_string(columns.size()));
        for (double v : row)
            if (!std::isfinite(v)) throw DomainError("table entries must be finite");
        rows.push_back(std::move(row));
    }

    bool operator==(const ResultTable& other) const {
        return provenance == other.provenance && columns == other.columns && rows == other.rows;
    }
    bool operator!=(const ResultTable& other) const { return !(*this == other); }
};

/// Serialize to CSV: provenance comments, one column-header line, then one
/// line per row at full precision.
inline std::string emit_csv(const ResultTable& t) {
    if (t.columns.empty()) throw EmptyTable("table has no columns");
    if (t.rows.empty()) throw EmptyTable("table has no rows");
    std::string out;
    for (const std::string& line : t.provenance) out += "# " + line + "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    out += '\n';
    for (const std::vector<double>& row : t.rows) {
        if (row.size() != t.columns.size()) throw DomainError("table is not rectangular");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            if (!std::isfinite(row[c])) throw DomainError("table entries must be finite");
            out += format_full(row[c]);
        }
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(line.substr(start));
            break;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

inline std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
    return s.substr(a, b - a);
}

}  // namespace detail

/// Parse a CSV document produced by emit_csv (bit-exact round trip).
inline ResultTable parse_csv(const std::string& text) {
    ResultTable t;
    bool have_columns = false;
    int line_no = 0;
    for (const std::string& raw : detail::split(text, '\n')) {
        ++line_no;
        const std::string line = detail::strip(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t start = 1;
            if (start < line.size() && line[start] == ' ') ++start;
            t.provenance.push_back(line.substr(start));
            continue;
        }
        if (!have_columns) {
            t.columns = detail::split(line, ',');
            have_columns = true;
            continue;
        }
        std::vector<double> row;
        for (const std::string& cell : detail::split(line, ',')) {
            const std::string c = detail::strip(cell);
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (c.empty() || end != c.c_str() + c.size())
                throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + c
                                 + "'");
            row.push_back(v);
        }
        if (row.size() != t.columns.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected "
                             + std::to_string(t.columns.size()) + " cells, got "
                             + std::to_string(row.size()));
        t.rows.push_back(std::move(row));
    }
    if (!have_columns) throw ParseError("no column header line found");
    return t;
}

/// Fowler-Noll-Vo 64-bit hash, hex-encoded; used for config provenance.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qtd
