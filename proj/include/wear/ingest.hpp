#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wear/core.hpp"

namespace wear {

/// A column named by its header text or by its 0-based position.
using ColumnRef = std::variant<std::string, Index>;

struct CsvSchema {
  std::string path;
  bool has_header = true;
  ColumnRef target_column = Index{0};
  // nullopt: every column except the target.
  std::optional<std::vector<ColumnRef>> feature_columns;
  char delimiter = ',';
};

/// Parses RFC 4180 style text: quoted fields, doubled quotes inside quotes,
/// CRLF or LF line ends, optional UTF-8 byte-order mark. Blank lines are
/// skipped.
std::vector<std::vector<std::string>> parse_csv(std::string_view text, char delimiter);

/// Loads features and the target (as true labels) from a local file. The
/// result has no annotations until `overlay_experts` is applied. Non-numeric
/// or empty cells raise ParseError with the 1-based data row and column.
MultiAnnotatedDataset load_csv(const CsvSchema& schema);

/// Same as `load_csv`, reading from a string instead of `schema.path`.
MultiAnnotatedDataset load_csv_text(std::string_view text, const CsvSchema& schema);

}  // namespace wear
