#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "survrel/network.hpp"

namespace survrel {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
// the output is a pure function of (counter, key).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

// Top 53 bits of x mapped onto [0, 1).
constexpr double to_unit_interval(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

struct PairDraws {
  double z_sensor = 0.0;
  double z_access = 0.0;

  friend bool operator==(const PairDraws&, const PairDraws&) = default;
};

// One realization of every random draw in a network. Draws are keyed by
// (seed, replicate, physical link, stream), so a link's values do not depend
// on how many other links exist or in which order they are visited.
class FailureSample {
 public:
  FailureSample() = default;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t replicate() const noexcept { return replicate_; }
  std::size_t size() const noexcept { return draws_.size(); }

  const PairDraws& operator[](PairIndex pair) const { return draws_[pair]; }
  // Per-sensor draws for the link; element 0 is z_sensor.
  std::span<const double> sensor_draws(PairIndex pair) const;

  friend bool operator==(const FailureSample&, const FailureSample&) = default;

 private:
  friend FailureSample draw_sample(const SurveillanceNetwork&, std::uint64_t, std::uint64_t);

  std::uint64_t seed_ = 0;
  std::uint64_t replicate_ = 0;
  std::vector<PairDraws> draws_;
  std::vector<std::uint32_t> sensor_offsets_;  // pair_count + 1
  std::vector<double> sensor_draws_;
};

// Uniform draws for one physical link.
PairDraws draw_pair(std::uint64_t seed, std::uint64_t replicate, PairIndex pair);
// Draw for sensor k >= 1 of a multi-sensor link (sensor 0 uses z_sensor).
double draw_extra_sensor(std::uint64_t seed, std::uint64_t replicate, PairIndex pair, std::uint32_t k);

FailureSample draw_sample(const SurveillanceNetwork& network, std::uint64_t seed, std::uint64_t replicate);

}  // namespace survrel
