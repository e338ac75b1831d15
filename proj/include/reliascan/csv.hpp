#ifndef RELIASCAN_CSV_HPP_
#define RELIASCAN_CSV_HPP_

#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "reliascan/errors.hpp"

namespace reliascan::csv {

// Minimal RFC-4180 reader: quoted fields, escaped quotes, embedded commas
// and newlines. Lines starting with '#' outside a record are skipped so
// report files may carry a comment header.
struct Record {
    std::vector<std::string> fields;
    size_t line = 0;  // 1-based line where the record started
};

inline std::vector<Record> parse(std::istream& in) {
    std::vector<Record> records;
    std::string field;
    Record current;
    size_t line = 1;
    bool in_quotes = false;
    bool field_started = false;
    bool record_started = false;
    current.line = line;

    auto end_field = [&] {
        current.fields.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(current));
        current = Record{};
        record_started = false;
    };

    char c;
    while (in.get(c)) {
        if (c == '\r') continue;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        if (!record_started) {
            if (c == '\n') {
                ++line;
                continue;  // blank line
            }
            if (c == '#') {  // comment line
                while (in.get(c) && c != '\n') {
                }
                ++line;
                continue;
            }
            record_started = true;
            current.line = line;
        }
        switch (c) {
            case '"':
                if (field.empty() && !field_started) {
                    in_quotes = true;
                    field_started = true;
                } else {
                    field.push_back('"');  // stray quote, keep verbatim
                }
                break;
            case ',':
                end_field();
                field_started = false;
                break;
            case '\n':
                end_record();
                ++line;
                break;
            default:
                field.push_back(c);
                field_started = true;
        }
    }
    if (in_quotes) throw Error(ErrorCode::parse_error, "unterminated quoted field");
    if (record_started || field_started || !field.empty() || !current.fields.empty()) end_record();
    return records;
}

inline std::vector<Record> parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
    return parse(in);
}

inline std::string quote(const std::string& field) {
    bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << quote(fields[i]);
    }
    out << '\n';
}

}  // namespace reliascan::csv

#endif  // RELIASCAN_CSV_HPP_
