#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace jumpdens::cli {

//! Parses the first comma-separated column of `text`. A first line whose
//! leading token is not a number is taken as a header. Blank lines are
//! skipped. Throws IngestionError naming the line for NaN, infinite,
//! negative or non-numeric entries, and for input without any value.
std::vector<double> parse_column(std::string_view text, std::string_view source = "input");

std::vector<double> read_column(const std::string& path);

std::string read_file(const std::string& path);

//! %.17g, round-trippable.
std::string format_double(double v);

} // namespace jumpdens::cli
