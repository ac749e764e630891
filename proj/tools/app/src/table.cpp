#include "pdopt/app/table.hpp"

namespace pdopt::app {

std::string format_field(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_field(bool value) { return value ? "1" : "0"; }

std::string format_field(const std::string& value) {
  if (value.find_first_of(",\n\r\"") != std::string::npos)
    throw FormatError("text field contains a separator: '" + value + "'");
  return value;
}

void parse_field(std::string_view text, double& out) {
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw FormatError("not a number: '" + std::string(text) + "'");
}

void parse_field(std::string_view text, bool& out) {
  if (text == "1") {
    out = true;
  } else if (text == "0") {
    out = false;
  } else {
    throw FormatError("not a flag (0/1): '" + std::string(text) + "'");
  }
}

void parse_field(std::string_view text, std::string& out) { out.assign(text); }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace pdopt::app
