#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "text.hpp"

namespace lg2lmf {

struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// RFC-4180 reader with a configurable delimiter. Quoted fields may contain
// delimiters, doubled quotes and line breaks. Records made only of an empty
// line are skipped. A leading UTF-8 byte order mark is ignored.
inline std::vector<CsvRecord> read_delimited(std::string_view text, char delimiter = ';') {
  if (text.substr(0, 3) == "\xEF\xBB\xBF")
    text.remove_prefix(3);

  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool record_has_content = false;
  std::size_t line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    if (record_has_content || current.fields.size() > 1)
      records.push_back(std::move(current));
    current = CsvRecord{};
    current.line = line;
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n')
          ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field_was_quoted && trim(field).empty()) {
        field.clear();
        in_quotes = true;
        field_was_quoted = true;
        record_has_content = true;
        continue;
      }
      throw Error("CSV_SYNTAX", "stray quote inside unquoted field",
                  "line " + std::to_string(line));
    }
    if (c == delimiter) {
      end_field();
      record_has_content = true;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      ++line;
      end_record();
    } else {
      if (!is_space(c))
        record_has_content = true;
      field += c;
    }
  }
  if (in_quotes)
    throw Error("CSV_SYNTAX", "unterminated quoted field",
                "line " + std::to_string(current.line));
  if (record_has_content || !field.empty() || !current.fields.empty())
    end_record();
  return records;
}

// Writes one record, quoting only where needed. Used to produce fixtures.
inline std::string write_delimited_record(const std::vector<std::string>& fields,
                                          char delimiter = ';') {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i)
      out += delimiter;
    const std::string& f = fields[i];
    bool quote = f.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string::npos;
    if (!quote) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"')
        out += '"';
      out += c;
    }
    out += '"';
  }
  out += '\n';
  return out;
}

} // namespace lg2lmf
