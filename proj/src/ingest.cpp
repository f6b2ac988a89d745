#include "wear/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace wear {

std::vector<std::vector<std::string>> parse_csv(std::string_view text, char delimiter) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  const auto end_row = [&] {
    if (field_started || !row.empty() || !field.empty()) {
      row.push_back(std::move(field));
      rows.push_back(std::move(row));
    }
    row.clear();
    field.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
      field_started = true;
    } else if (c == delimiter) {
      row.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_row();
    } else if (c == '\n') {
      end_row();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field", rows.size() + 1, row.size() + 1);
  end_row();
  return rows;
}

namespace {

Index resolve_column(const ColumnRef& ref, const std::vector<std::string>& header, Index width) {
  if (const auto* index = std::get_if<Index>(&ref)) {
    if (*index >= width) {
      throw InvalidInput("column index " + std::to_string(*index) + " out of range");
    }
    return *index;
  }
  const auto& name = std::get<std::string>(ref);
  for (Index j = 0; j < header.size(); ++j) {
    if (header[j] == name) return j;
  }
  throw InvalidInput("column '" + name + "' not found in header");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_cell(const std::string& cell, Index row, Index column) {
  std::string_view s = trim(cell);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "non-numeric cell '" << cell << "' at row " << row << ", column " << column;
    throw ParseError(msg.str(), row, column);
  }
  return value;
}

}  // namespace

MultiAnnotatedDataset load_csv_text(std::string_view text, const CsvSchema& schema) {
  auto rows = parse_csv(text, schema.delimiter);
  std::vector<std::string> header;
  if (schema.has_header) {
    if (rows.empty()) throw InvalidInput("CSV is empty");
    header = std::move(rows.front());
    rows.erase(rows.begin());
  }
  if (rows.empty()) throw InvalidInput("CSV has no data rows");

  const Index width = schema.has_header ? header.size() : rows.front().size();
  const Index target = resolve_column(schema.target_column, header, width);
  std::vector<Index> feature_cols;
  if (schema.feature_columns) {
    for (const auto& ref : *schema.feature_columns) {
      const Index j = resolve_column(ref, header, width);
      if (j == target) throw InvalidInput("target column is also listed as a feature");
      feature_cols.push_back(j);
    }
  } else {
    for (Index j = 0; j < width; ++j) {
      if (j != target) feature_cols.push_back(j);
    }
  }
  if (feature_cols.empty()) throw InvalidInput("CSV schema selects no feature columns");

  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix x(n, static_cast<Eigen::Index>(feature_cols.size()));
  Vector y(n);
  for (Index i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != width) {
      std::ostringstream msg;
      msg << "row " << i + 1 << " has " << r.size() << " cells, expected " << width;
      throw ParseError(msg.str(), i + 1, std::min(r.size(), width) + 1);
    }
    const auto ii = static_cast<Eigen::Index>(i);
    for (Index k = 0; k < feature_cols.size(); ++k) {
      x(ii, static_cast<Eigen::Index>(k)) = parse_cell(r[feature_cols[k]], i + 1, feature_cols[k] + 1);
    }
    y[ii] = parse_cell(r[target], i + 1, target + 1);
  }
  return MultiAnnotatedDataset(FeatureMatrix(std::move(x)), AnnotationMatrix::none(rows.size()), std::move(y));
}

MultiAnnotatedDataset load_csv(const CsvSchema& schema) {
  std::ifstream in(schema.path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open CSV file '" + schema.path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_csv_text(buffer.str(), schema);
}

}  // namespace wear
