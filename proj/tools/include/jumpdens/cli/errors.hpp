#pragma once

#include <stdexcept>

namespace jumpdens::cli {

//! Process exit codes.
enum ExitCode : int
{
  exit_ok = 0,
  exit_internal = 1,
  exit_config = 2,
  exit_ingestion = 3,
  exit_degenerate = 4,
  exit_io = 5,
};

//! Malformed or invalid input data.
class IngestionError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! Unreadable input or unwritable output.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace jumpdens::cli
