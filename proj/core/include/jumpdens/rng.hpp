#pragma once

#include <cstdint>
#include <random>

namespace jumpdens {

inline std::uint64_t
splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

//! mt19937_64 substream keyed by (seed, stream). Replication r of a study
//! always draws from stream r, whichever thread runs it.
class Rng
{
public:
  Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x5851f42d4c957f2dULL)))
  {}

  std::uint64_t next() { return engine_(); }

  //! Uniform on the open interval (0, 1), built from the top 53 bits so the
  //! stream is identical across standard libraries.
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

} // namespace jumpdens
