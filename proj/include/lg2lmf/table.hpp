#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csv.hpp"
#include "error.hpp"
#include "feature_id.hpp"

namespace lg2lmf {

enum class Category { verb };

inline const char* to_string(Category c) {
  switch (c) {
    case Category::verb: return "verb";
  }
  return "";
}

// Prefix of entry identifiers ("V_32RA_96").
inline const char* category_code(Category c) {
  switch (c) {
    case Category::verb: return "V";
  }
  return "";
}

inline Category parse_category(std::string_view s) {
  if (s == "verb")
    return Category::verb;
  throw Error("BAD_CATEGORY", "unknown category '" + std::string(s) + "'");
}

inline constexpr std::string_view kLemmaColumn = "<ENT>";
inline constexpr std::string_view kExampleColumn = "<OPT>";
inline constexpr std::string_view kTranslationColumn = "<TRAD>";

inline bool is_meta_column(std::string_view name) {
  return name == kLemmaColumn || name == kExampleColumn || name == kTranslationColumn;
}

// ---------------------------------------------------------------------------
// Cells of a class table
// ---------------------------------------------------------------------------

struct CellValue {
  enum class Kind { plus, minus, unencoded, lexical };

  Kind kind = Kind::unencoded;
  std::string text;  // only for lexical

  static CellValue plus() { return {Kind::plus, {}}; }
  static CellValue minus() { return {Kind::minus, {}}; }
  static CellValue unencoded() { return {Kind::unencoded, {}}; }
  static CellValue lexical(std::string t) { return {Kind::lexical, std::move(t)}; }

  bool operator==(const CellValue&) const = default;
};

// "<E>" is a lexical value (the empty lexical element), not an unencoded cell.
inline CellValue decode_cell(std::string_view text) {
  text = trim(text);
  if (text.empty())
    throw Error("EMPTY_CELL", "empty cell (class tables must be dense)");
  if (text == "+")
    return CellValue::plus();
  if (text == "-")
    return CellValue::minus();
  if (text == "~")
    return CellValue::unencoded();
  return CellValue::lexical(std::string(text));
}

inline std::string encode_cell(const CellValue& v) {
  switch (v.kind) {
    case CellValue::Kind::plus: return "+";
    case CellValue::Kind::minus: return "-";
    case CellValue::Kind::unencoded: return "~";
    case CellValue::Kind::lexical: return v.text;
  }
  return {};
}

struct EntryRow {
  int index = 0;  // 1-based position in the table
  std::string lemma;
  std::map<std::string, CellValue> cells;  // normalized feature id -> value
  std::string example;
  std::string translation;

  bool operator==(const EntryRow&) const = default;
};

struct ClassTable {
  std::string class_id;
  Category category = Category::verb;
  std::vector<std::string> columns;  // raw header, in file order
  std::vector<EntryRow> rows;

  bool operator==(const ClassTable&) const = default;
};

inline std::string row_location(int row, std::string_view column = {}) {
  std::string s = "row " + std::to_string(row);
  if (!column.empty())
    s += ", column '" + std::string(column) + "'";
  return s;
}

inline ClassTable parse_class_table(std::string_view bytes, std::string class_id,
                                    Category category = Category::verb,
                                    char delimiter = ';') {
  ClassTable table{std::move(class_id), category, {}, {}};
  auto records = read_delimited(bytes, delimiter);
  if (records.empty())
    throw Error("MISSING_HEADER", "table has no header record");

  std::optional<std::size_t> lemma_col, example_col, translation_col;
  std::map<std::string, std::size_t> seen;
  for (std::size_t c = 0; c < records[0].fields.size(); ++c) {
    std::string name(trim(records[0].fields[c]));
    std::string key = is_meta_column(name) ? name : normalize_feature_id(name);
    if (!seen.emplace(key, c).second)
      throw Error("DUPLICATE_COLUMN", "duplicate feature identifier '" + name + "'",
                  "header");
    if (name == kLemmaColumn)
      lemma_col = c;
    else if (name == kExampleColumn)
      example_col = c;
    else if (name == kTranslationColumn)
      translation_col = c;
    table.columns.push_back(std::move(name));
  }
  if (!lemma_col)
    throw Error("MISSING_LEMMA_COLUMN", "no <ENT> column in header", "header");

  const std::size_t width = table.columns.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    const int index = static_cast<int>(r);
    const auto& fields = records[r].fields;
    if (fields.size() != width)
      throw Error("RAGGED_ROW",
                  std::to_string(fields.size()) + " cells under a " + std::to_string(width) +
                      "-column header",
                  row_location(index));
    EntryRow row;
    row.index = index;
    for (std::size_t c = 0; c < width; ++c) {
      const std::string& name = table.columns[c];
      if (c == lemma_col) {
        row.lemma = std::string(trim(fields[c]));
        if (row.lemma.empty())
          throw Error("EMPTY_LEMMA", "empty lemma", row_location(index, name));
      } else if (c == example_col) {
        row.example = std::string(trim(fields[c]));
      } else if (c == translation_col) {
        row.translation = std::string(trim(fields[c]));
      } else {
        try {
          row.cells.emplace(normalize_feature_id(name), decode_cell(fields[c]));
        } catch (const Error& e) {
          throw Error(e.code(), e.what(), row_location(index, name));
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

// Fixture serializer: the inverse of parse_class_table on parsed tables.
inline std::string write_class_table(const ClassTable& table, char delimiter = ';') {
  std::string out = write_delimited_record(table.columns, delimiter);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    for (const auto& name : table.columns) {
      if (name == kLemmaColumn)
        fields.push_back(row.lemma);
      else if (name == kExampleColumn)
        fields.push_back(row.example);
      else if (name == kTranslationColumn)
        fields.push_back(row.translation);
      else
        fields.push_back(encode_cell(row.cells.at(normalize_feature_id(name))));
    }
    out += write_delimited_record(fields, delimiter);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Table of classes
// ---------------------------------------------------------------------------

enum class ClassSymbol { plus, minus, lower_o, upper_o, question };

inline ClassSymbol parse_class_symbol(std::string_view s) {
  s = trim(s);
  if (s == "+") return ClassSymbol::plus;
  if (s == "-") return ClassSymbol::minus;
  if (s == "o") return ClassSymbol::lower_o;
  if (s == "O") return ClassSymbol::upper_o;
  if (s == "?") return ClassSymbol::question;
  throw Error("BAD_CLASS_SYMBOL", "symbol '" + std::string(s) + "' is not one of + - o O ?");
}

inline const char* to_string(ClassSymbol s) {
  switch (s) {
    case ClassSymbol::plus: return "+";
    case ClassSymbol::minus: return "-";
    case ClassSymbol::lower_o: return "o";
    case ClassSymbol::upper_o: return "O";
    case ClassSymbol::question: return "?";
  }
  return "";
}

class ClassFeatureMatrix {
public:
  Category category = Category::verb;

  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<std::string>& features() const { return features_; }

  bool has_class(const std::string& c) const { return class_index_.count(c) != 0; }

  std::optional<ClassSymbol> symbol(const std::string& class_id,
                                    const std::string& feature) const {
    auto ci = class_index_.find(class_id);
    auto fi = feature_index_.find(normalize_feature_id(feature));
    if (ci == class_index_.end() || fi == feature_index_.end())
      return std::nullopt;
    return grid_[ci->second][fi->second];
  }

  void add_feature(const std::string& raw) {
    std::string id = normalize_feature_id(raw);
    if (!feature_index_.emplace(id, features_.size()).second)
      throw Error("DUPLICATE_COLUMN", "duplicate feature '" + raw + "'", "header");
    features_.push_back(id);
  }

  void add_class(const std::string& class_id, std::vector<ClassSymbol> symbols) {
    if (symbols.size() != features_.size())
      throw Error("RAGGED_ROW", "class row width differs from header", "class " + class_id);
    if (!class_index_.emplace(class_id, classes_.size()).second)
      throw Error("DUPLICATE_CLASS", "class '" + class_id + "' listed twice",
                  "class " + class_id);
    classes_.push_back(class_id);
    grid_.push_back(std::move(symbols));
  }

private:
  std::vector<std::string> classes_;
  std::vector<std::string> features_;  // normalized ids, column order
  std::map<std::string, std::size_t> class_index_;
  std::map<std::string, std::size_t> feature_index_;
  std::vector<std::vector<ClassSymbol>> grid_;
};

inline ClassFeatureMatrix parse_table_of_classes(std::string_view bytes,
                                                 Category category = Category::verb,
                                                 char delimiter = ';') {
  ClassFeatureMatrix m;
  m.category = category;
  auto records = read_delimited(bytes, delimiter);
  if (records.empty())
    throw Error("MISSING_HEADER", "table of classes has no header record");
  const auto& header = records[0].fields;
  for (std::size_t c = 1; c < header.size(); ++c)
    m.add_feature(std::string(trim(header[c])));

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& fields = records[r].fields;
    std::string class_id(fields.empty() ? std::string_view{} : trim(fields[0]));
    std::string where = "line " + std::to_string(records[r].line);
    if (class_id.empty())
      throw Error("EMPTY_CLASS_ID", "row without class identifier", where);
    if (fields.size() != header.size())
      throw Error("RAGGED_ROW", "class row width differs from header", where);
    std::vector<ClassSymbol> symbols;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      try {
        symbols.push_back(parse_class_symbol(fields[c]));
      } catch (const Error& e) {
        throw Error(e.code(), e.what(),
                    "class " + class_id + ", feature '" + m.features()[c - 1] + "'");
      }
    }
    m.add_class(class_id, std::move(symbols));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Merging the two levels of encoding
// ---------------------------------------------------------------------------

struct ResolvedValue {
  enum class Kind { yes, no, unencoded, lexical };

  Kind kind = Kind::unencoded;
  std::string text;

  bool is_positive() const { return kind == Kind::yes || kind == Kind::lexical; }
  bool operator==(const ResolvedValue&) const = default;
};

struct EntryRecord {
  std::string class_id;
  int row = 0;
  std::string lemma;
  std::string example;
  std::string translation;
  // Matrix column order; only features coded +, - or o for the class.
  std::vector<std::pair<std::string, ResolvedValue>> resolved;
  int encoded_count = 0;
  int unencoded_count = 0;

  const ResolvedValue* find(std::string_view feature) const {
    for (const auto& [id, v] : resolved)
      if (id == feature)
        return &v;
    return nullptr;
  }
};

inline ResolvedValue resolve_cell(const CellValue& cell) {
  switch (cell.kind) {
    case CellValue::Kind::plus: return {ResolvedValue::Kind::yes, {}};
    case CellValue::Kind::minus: return {ResolvedValue::Kind::no, {}};
    case CellValue::Kind::unencoded: return {ResolvedValue::Kind::unencoded, {}};
    case CellValue::Kind::lexical: return {ResolvedValue::Kind::lexical, cell.text};
  }
  return {};
}

// Class-level + and - override the table; o defers to the entry's own cell;
// O and ? drop the feature. A feature coded o whose column the table lacks is
// unencoded. Cells contradicting a class-level +/- are reported as warnings.
inline std::vector<EntryRecord> merge_features(const ClassTable& table,
                                               const ClassFeatureMatrix& matrix,
                                               Findings* findings = nullptr) {
  if (!matrix.has_class(table.class_id))
    throw Error("UNKNOWN_CLASS",
                "class '" + table.class_id + "' is absent from the table of classes");

  if (findings) {
    for (const auto& col : table.columns) {
      if (is_meta_column(col))
        continue;
      if (!matrix.symbol(table.class_id, col))
        findings->warn("UNMAPPED_COLUMN",
                       "column '" + col + "' is not in the table of classes; ignored",
                       "class " + table.class_id);
    }
  }

  std::vector<EntryRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    EntryRecord rec;
    rec.class_id = table.class_id;
    rec.row = row.index;
    rec.lemma = row.lemma;
    rec.example = row.example;
    rec.translation = row.translation;
    for (const auto& feature : matrix.features()) {
      ClassSymbol sym = *matrix.symbol(table.class_id, feature);
      auto cell = row.cells.find(feature);
      ResolvedValue value;
      switch (sym) {
        case ClassSymbol::upper_o:
        case ClassSymbol::question:
          continue;
        case ClassSymbol::plus:
        case ClassSymbol::minus: {
          bool positive = sym == ClassSymbol::plus;
          value.kind = positive ? ResolvedValue::Kind::yes : ResolvedValue::Kind::no;
          if (findings && cell != row.cells.end()) {
            auto k = cell->second.kind;
            if ((positive && k == CellValue::Kind::minus) ||
                (!positive && k == CellValue::Kind::plus))
              findings->warn("CLASS_CELL_CONFLICT",
                             "cell '" + encode_cell(cell->second) + "' contradicts class-level '" +
                                 to_string(sym) + "' for '" + feature + "'; class level kept",
                             "class " + table.class_id + ", " + row_location(row.index));
          }
          break;
        }
        case ClassSymbol::lower_o:
          value = cell == row.cells.end() ? ResolvedValue{} : resolve_cell(cell->second);
          break;
      }
      if (value.kind == ResolvedValue::Kind::unencoded)
        ++rec.unencoded_count;
      else
        ++rec.encoded_count;
      rec.resolved.emplace_back(feature, std::move(value));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

} // namespace lg2lmf
