#include <doctest.h>

#include <set>

#include "survrel/network.hpp"
#include "survrel/sampling.hpp"

using namespace survrel;

TEST_CASE("philox4x32-10 known answers") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("unit interval mapping") {
  CHECK(to_unit_interval(0) == 0.0);
  CHECK(to_unit_interval(~std::uint64_t{0}) < 1.0);
  CHECK(to_unit_interval(std::uint64_t{1} << 63) == 0.5);
}

TEST_CASE("draws are deterministic and keyed") {
  const auto net = lattice_network(3);
  CHECK(draw_sample(net, 42, 7) == draw_sample(net, 42, 7));
  CHECK_FALSE(draw_sample(net, 42, 7) == draw_sample(net, 42, 8));
  CHECK_FALSE(draw_sample(net, 42, 7) == draw_sample(net, 43, 7));

  // A link's draws do not depend on the rest of the network.
  const auto big = lattice_network(6);
  const auto a = draw_sample(net, 5, 3);
  const auto b = draw_sample(big, 5, 3);
  for (PairIndex p = 0; p < net.pair_count(); ++p) {
    CHECK(a[p].z_sensor == b[p].z_sensor);
    CHECK(a[p].z_access == b[p].z_access);
    CHECK(a[p].z_sensor == draw_pair(5, 3, p).z_sensor);
  }
}

TEST_CASE("draws are distinct across links and streams") {
  const auto net = lattice_network(5);
  const auto s = draw_sample(net, 1, 0);
  std::set<double> seen;
  for (PairIndex p = 0; p < s.size(); ++p) {
    seen.insert(s[p].z_sensor);
    seen.insert(s[p].z_access);
  }
  CHECK(seen.size() == 2 * s.size());
  CHECK(draw_extra_sensor(1, 0, 0, 1) != draw_extra_sensor(1, 0, 0, 2));
}

TEST_CASE("draws are uniform on average") {
  double sum_sensor = 0.0, sum_access = 0.0;
  const int n = 10000;
  for (int r = 0; r < n; ++r) {
    const auto d = draw_pair(0, static_cast<std::uint64_t>(r), 0);
    CHECK(d.z_sensor >= 0.0);
    CHECK(d.z_sensor < 1.0);
    sum_sensor += d.z_sensor;
    sum_access += d.z_access;
  }
  CHECK(sum_sensor / n == doctest::Approx(0.5).epsilon(0.04));
  CHECK(sum_access / n == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("multi-sensor samples") {
  const auto net = build_network(
      {"A", "B", "C"}, {{.from = "A", .to = "B", .sensors = {{1, 0.1}, {1, 0.1}}}, {.from = "B", .to = "C"}});
  const auto s = draw_sample(net, 9, 4);
  REQUIRE(s.sensor_draws(0).size() == 2);
  CHECK(s.sensor_draws(0)[0] == s[0].z_sensor);
  CHECK(s.sensor_draws(0)[1] == draw_extra_sensor(9, 4, 0, 1));
  CHECK(s.sensor_draws(1).size() == 1);
}
