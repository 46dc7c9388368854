#pragma once

#include <iosfwd>

namespace jumpdens::cli {

//! Parses arguments, runs one subcommand and returns its exit code. Results
//! go to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace jumpdens::cli
