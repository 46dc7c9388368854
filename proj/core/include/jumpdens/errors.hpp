#pragma once

#include <stdexcept>
#include <string>

namespace jumpdens {

//! Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

//! Iterative evaluation failed to converge within its budget.
class NumericError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Degeneracy
{
  truncation,   // kernel mass entirely on one side of the cutoff
  pilot,        // MBC pilot at b/delta vanished while the b pilot did not
  variance,     // variance estimate is zero, statistic undefined
  one_sided,    // no observations on one side of the cutoff
  subsample,    // a side is empty after sub-sample flooring
};

const char* to_string(Degeneracy kind) noexcept;

//! Insufficient local data for a well-defined estimate or statistic.
class DegenerateError : public std::runtime_error
{
public:
  DegenerateError(Degeneracy kind, const std::string& what)
    : std::runtime_error(what)
    , kind_(kind)
  {}

  Degeneracy kind() const noexcept { return kind_; }

private:
  Degeneracy kind_;
};

//! Invalid configuration (bandwidth grid, simulation spec, ...).
class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace jumpdens
