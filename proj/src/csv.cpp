#include "nusample/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nusample/error.hpp"

namespace nusample::csv {

Table parse(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool in_quotes = false;
    bool cell_was_quoted = false;
    std::size_t line = 1;

    auto end_cell = [&] {
        row.push_back(std::move(cell));
        cell.clear();
        cell_was_quoted = false;
    };
    auto end_row = [&] {
        end_cell();
        const bool blank = row.size() == 1 && row.front().empty();
        if (!blank) rows.push_back(std::move(row));
        row.clear();
    };

    // Skip a UTF-8 byte order mark.
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                cell.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!cell.empty() || cell_was_quoted)
                    throw Error(ErrorKind::parse, "csv: stray quote on line " + std::to_string(line));
                in_quotes = true;
                cell_was_quoted = true;
                break;
            case ',':
                end_cell();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                [[fallthrough]];
            case '\n':
                end_row();
                ++line;
                break;
            default:
                cell.push_back(c);
        }
    }
    if (in_quotes) throw Error(ErrorKind::parse, "csv: unterminated quoted field");
    if (!cell.empty() || !row.empty() || cell_was_quoted) end_row();

    Table table;
    if (rows.empty()) throw Error(ErrorKind::parse, "csv: missing header row");
    table.header = std::move(rows.front());
    table.records.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
    for (std::size_t r = 0; r < table.records.size(); ++r) {
        if (table.records[r].size() != table.header.size())
            throw Error(ErrorKind::parse, "csv: record " + std::to_string(r + 1) + " has " +
                                              std::to_string(table.records[r].size()) + " cells, header has " +
                                              std::to_string(table.header.size()));
    }
    return table;
}

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string escape(std::string_view cell) {
    if (cell.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(cell);
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << escape(cells[i]);
    }
    out << '\n';
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

}  // namespace nusample::csv
