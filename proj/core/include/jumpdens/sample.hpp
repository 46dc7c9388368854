#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jumpdens {

struct SideCounts
{
  std::size_t n_minus = 0; // values < c
  std::size_t n_plus = 0;  // values >= c
};

//! Observations split at a cutoff: left holds values < c, right values >= c,
//! each ascending.
struct SideView
{
  std::span<const double> left;
  std::span<const double> right;

  std::size_t size() const { return left.size() + right.size(); }
};

//! Validated nonnegative observations kept in ascending order.
class Sample
{
public:
  //! Throws DomainError on an empty input or any negative / non-finite value.
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  SideCounts side_counts(double c) const;
  SideView split(double c) const;

private:
  std::vector<double> values_;
};

} // namespace jumpdens
