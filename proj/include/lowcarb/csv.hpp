#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lowcarb::csv {

// One non-blank, non-comment line split on commas, with its 1-based line number.
struct Row {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

// Splits text into rows. Cells are trimmed; quoting is not supported, which is
// enough for the numeric fixture files this project reads.
std::vector<Row> read(std::string_view text);

// Strict numeric parse of a whole cell. Returns nullopt on junk or trailing text.
std::optional<double> to_double(std::string_view cell);
std::optional<long> to_long(std::string_view cell);

// Column lookup by header name.
class Header {
 public:
  explicit Header(const Row& row);
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t require(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

std::string format_double(double value);

}  // namespace lowcarb::csv
