#include "lowcarb/csv.hpp"

#include <array>
#include <charconv>
#include <system_error>

#include "lowcarb/errors.hpp"

namespace lowcarb::csv {
namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<Row> read(std::string_view text) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    const auto line = trim(raw);
    if (!line.empty() && line.front() != '#') {
      Row row{line_no, {}};
      std::size_t start = 0;
      while (true) {
        const auto comma = line.find(',', start);
        row.cells.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      rows.push_back(std::move(row));
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return rows;
}

std::optional<double> to_double(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

std::optional<long> to_long(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  long value = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

Header::Header(const Row& row) : names_(row.cells) {}

std::optional<std::size_t> Header::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Header::require(std::string_view name) const {
  if (auto idx = find(name)) return *idx;
  throw SpecError(SpecError::Kind::MissingField, "missing column '" + std::string(name) + "'");
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace lowcarb::csv
