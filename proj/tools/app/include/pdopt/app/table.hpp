#pragma once

/// @file table.hpp
/// Typed CSV tables with a fixed, one-line header.
///
/// A table type is described by a list of columns, each knowing how to
/// format and parse one field of the row struct. Floating-point fields use
/// the shortest representation that parses back to the same double, so
/// reading a written table reproduces the rows exactly.

#include <charconv>
#include <concepts>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace pdopt::app {

/// Malformed table text (wrong header, bad field, wrong field count).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_field(double value);
std::string format_field(bool value);
std::string format_field(const std::string& value);

template <std::integral T>
  requires(!std::same_as<T, bool>)
std::string format_field(T value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void parse_field(std::string_view text, double& out);
void parse_field(std::string_view text, bool& out);
void parse_field(std::string_view text, std::string& out);

template <std::integral T>
  requires(!std::same_as<T, bool>)
void parse_field(std::string_view text, T& out) {
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw FormatError("not an integer: '" + std::string(text) + "'");
}

template <class Row>
struct Column {
  std::string name;
  std::function<std::string(const Row&)> format;
  std::function<void(Row&, std::string_view)> parse;
};

/// Builds a column from an accessor usable on both `Row&` and `const Row&`,
/// e.g. `[](auto& r) -> auto& { return r.point.rf; }`.
template <class Row, class Access>
Column<Row> column(std::string name, Access access) {
  return Column<Row>{
      std::move(name),
      [access](const Row& row) { return format_field(access(row)); },
      [access](Row& row, std::string_view text) { parse_field(text, access(row)); },
  };
}

template <class Row>
using Schema = std::vector<Column<Row>>;

std::vector<std::string_view> split_fields(std::string_view line);
std::vector<std::string_view> split_lines(std::string_view text);

template <class Row>
std::string header_line(const Schema<Row>& schema) {
  std::string line;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i) line += ',';
    line += schema[i].name;
  }
  return line;
}

template <class Row>
std::string write_table(const Schema<Row>& schema, const std::vector<Row>& rows) {
  std::string out = header_line(schema);
  out += '\n';
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < schema.size(); ++i) {
      if (i) out += ',';
      out += schema[i].format(row);
    }
    out += '\n';
  }
  return out;
}

template <class Row>
std::vector<Row> read_table(const Schema<Row>& schema, std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw FormatError("missing header line");
  if (lines.front() != header_line(schema))
    throw FormatError("unexpected header: '" + std::string(lines.front()) + "'");

  std::vector<Row> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto fields = split_fields(lines[l]);
    if (fields.size() != schema.size())
      throw FormatError("line " + std::to_string(l + 1) + ": expected " +
                        std::to_string(schema.size()) + " fields, got " +
                        std::to_string(fields.size()));
    Row row{};
    for (std::size_t i = 0; i < schema.size(); ++i) {
      try {
        schema[i].parse(row, fields[i]);
      } catch (const FormatError& e) {
        throw FormatError("line " + std::to_string(l + 1) + ", column '" + schema[i].name +
                          "': " + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pdopt::app
