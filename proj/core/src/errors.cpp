#include "jumpdens/errors.hpp"

namespace jumpdens {

const char*
to_string(Degeneracy kind) noexcept
{
  switch (kind) {
    case Degeneracy::truncation:
      return "degenerate truncation";
    case Degeneracy::pilot:
      return "degenerate pilot";
    case Degeneracy::variance:
      return "degenerate variance";
    case Degeneracy::one_sided:
      return "one-sided sample";
    case Degeneracy::subsample:
      return "degenerate sub-sample";
  }
  return "degenerate";
}

} // namespace jumpdens
