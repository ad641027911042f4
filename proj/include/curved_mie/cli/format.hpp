#pragma once

// Byte-deterministic emission: 17 significant digits, lowercase exponent,
// '\n' line ends, fixed column order.

#include <string>
#include <vector>

#include <json.hpp>

#include "curved_mie/cli/config.hpp"

namespace curved_mie::cli {

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// Rows of JSON scalars (number, string, bool or null) under a fixed header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<nlohmann::json>> rows;

  void add_row(std::vector<nlohmann::json> row);
};

/// Numbers via format_double, null as an empty field, strings quoted only
/// when they contain a comma, quote or newline.
std::string to_csv(const Table& t);

/// Array of objects keyed by the header; non-finite numbers become strings.
nlohmann::json to_json(const Table& t);

std::string render(const Table& t, OutputFormat format);

/// Writes to path, or stdout when path is empty.
void emit(const std::string& text, const std::string& path);

}  // namespace curved_mie::cli
