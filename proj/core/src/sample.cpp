#include "jumpdens/sample.hpp"

#include "jumpdens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jumpdens {

Sample::Sample(std::vector<double> values)
  : values_(std::move(values))
{
  if (values_.empty()) {
    throw DomainError("sample must contain at least one observation");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError("observation " + std::to_string(i) +
                        " is negative or non-finite: " + std::to_string(v));
    }
  }
  std::sort(values_.begin(), values_.end());
}

SideCounts
Sample::side_counts(double c) const
{
  const auto split_at = std::lower_bound(values_.begin(), values_.end(), c);
  const auto n_minus = static_cast<std::size_t>(split_at - values_.begin());
  return { n_minus, values_.size() - n_minus };
}

SideView
Sample::split(double c) const
{
  const SideCounts counts = side_counts(c);
  const std::span<const double> all(values_);
  return { all.first(counts.n_minus), all.subspan(counts.n_minus) };
}

} // namespace jumpdens
