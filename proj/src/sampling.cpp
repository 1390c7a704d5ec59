#include "survrel/sampling.hpp"

namespace survrel {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline PhiloxCounter philox_round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline std::uint64_t join(std::uint32_t hi, std::uint32_t lo) {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

// Counter layout: {pair, stream, replicate lo, replicate hi}; key = seed.
PhiloxCounter block(std::uint64_t seed, std::uint64_t replicate, PairIndex pair, std::uint32_t stream) {
  const PhiloxCounter ctr{pair, stream, static_cast<std::uint32_t>(replicate),
                          static_cast<std::uint32_t>(replicate >> 32)};
  const PhiloxKey key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return philox4x32(ctr, key);
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = philox_round(counter, key);
  }
  return counter;
}

PairDraws draw_pair(std::uint64_t seed, std::uint64_t replicate, PairIndex pair) {
  const PhiloxCounter out = block(seed, replicate, pair, 0);
  return {to_unit_interval(join(out[0], out[1])), to_unit_interval(join(out[2], out[3]))};
}

double draw_extra_sensor(std::uint64_t seed, std::uint64_t replicate, PairIndex pair, std::uint32_t k) {
  const PhiloxCounter out = block(seed, replicate, pair, k);
  return to_unit_interval(join(out[0], out[1]));
}

std::span<const double> FailureSample::sensor_draws(PairIndex pair) const {
  const auto begin = sensor_offsets_[pair];
  const auto end = sensor_offsets_[pair + 1];
  return std::span<const double>(sensor_draws_).subspan(begin, end - begin);
}

FailureSample draw_sample(const SurveillanceNetwork& network, std::uint64_t seed, std::uint64_t replicate) {
  FailureSample s;
  s.seed_ = seed;
  s.replicate_ = replicate;
  const auto pairs = static_cast<PairIndex>(network.pair_count());
  s.draws_.reserve(pairs);
  s.sensor_offsets_.reserve(pairs + 1);
  s.sensor_offsets_.push_back(0);
  for (PairIndex p = 0; p < pairs; ++p) {
    const PairDraws d = draw_pair(seed, replicate, p);
    s.draws_.push_back(d);
    s.sensor_draws_.push_back(d.z_sensor);
    for (std::uint32_t k = 1; k < network.sensors_on_pair(p); ++k) {
      s.sensor_draws_.push_back(draw_extra_sensor(seed, replicate, p, k));
    }
    s.sensor_offsets_.push_back(static_cast<std::uint32_t>(s.sensor_draws_.size()));
  }
  return s;
}

}  // namespace survrel
