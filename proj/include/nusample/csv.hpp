#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nusample::csv {

/// One parsed file: the header plus every data record as raw text cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> records;
};

/// RFC-4180 reader: comma separated, optional double-quoted fields with ""
/// escapes, CRLF or LF line endings. Blank trailing lines are ignored.
Table parse(std::string_view text);
Table read_file(const std::string& path);

/// Quotes a cell only when it needs it.
std::string escape(std::string_view cell);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace nusample::csv
