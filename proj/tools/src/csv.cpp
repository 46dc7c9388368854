#include "jumpdens/cli/csv.hpp"

#include "jumpdens/cli/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace jumpdens::cli {

namespace {

std::string_view
trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\"");
  return s.substr(first, last - first + 1);
}

bool
looks_like_nan(std::string_view token)
{
  std::string lower;
  for (char ch : token) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (!lower.empty() && (lower.front() == '-' || lower.front() == '+')) {
    lower.erase(0, 1);
  }
  return lower == "nan" || lower == "na" || lower.rfind("nan(", 0) == 0;
}

enum class Token
{
  number,
  nan,
  other
};

Token
classify(std::string_view token, double& value)
{
  if (looks_like_nan(token)) {
    return Token::nan;
  }
  std::string_view digits = token;
  if (!digits.empty() && digits.front() == '+') {
    digits.remove_prefix(1);
  }
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || end != digits.data() + digits.size() ||
      (ec != std::errc() && ec != std::errc::result_out_of_range)) {
    return Token::other;
  }
  if (ec == std::errc::result_out_of_range) {
    value = std::fabs(value) < 1.0 ? 0.0 : std::copysign(HUGE_VAL, value);
  }
  return Token::number;
}

} // namespace

std::vector<double>
parse_column(std::string_view text, std::string_view source)
{
  std::vector<double> values;
  std::size_t line_no = 0;
  bool seen_line = false;
  const std::string where(source);
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

    const std::string_view token = trim(line.substr(0, line.find(',')));
    if (trim(line).empty()) {
      continue;
    }
    const bool first = !seen_line;
    seen_line = true;

    double v = 0.0;
    const Token kind = classify(token, v);
    const std::string at = where + ", line " + std::to_string(line_no);
    if (kind == Token::nan) {
      throw IngestionError(at + ": NaN value '" + std::string(token) + "'");
    }
    if (kind == Token::other) {
      if (first) {
        continue; // header
      }
      throw IngestionError(at + ": non-numeric value '" + std::string(token) + "'");
    }
    if (!std::isfinite(v)) {
      throw IngestionError(at + ": infinite value '" + std::string(token) + "'");
    }
    if (v < 0.0) {
      throw IngestionError(at + ": negative value " + std::string(token) +
                           " (data must be nonnegative)");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw IngestionError(where + ": empty input, no numeric values found");
  }
  return values;
}

std::string
read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("error while reading '" + path + "'");
  }
  return buf.str();
}

std::vector<double>
read_column(const std::string& path)
{
  return parse_column(read_file(path), path);
}

std::string
format_double(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace jumpdens::cli
