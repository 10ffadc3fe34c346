#include "mobndn/mobility.hpp"

#include "test-util.hpp"

#include <doctest.h>

using namespace mobndn;

TEST_SUITE("mobility")
{

TEST_CASE("stationary endpoint has an empty trace")
{
  Topology t = Topology::grid(2, 2, 3);
  auto mp = regionProcess(t, {3, 4}, 0, 0);
  auto tr = scheduleHandovers(t, mp, 1800, 1);
  CHECK(tr.handovers.empty());
  CHECK(t.nodes()[tr.initialPoa].role == Role::PoA);
}

TEST_CASE("traces are deterministic per seed")
{
  Topology t = Topology::grid(3, 3, 3);
  auto mp = regionProcess(t, {4, 5, 6, 7, 8, 9}, 5, 15);
  auto a = scheduleHandovers(t, mp, 1800, 11);
  auto b = scheduleHandovers(t, mp, 1800, 11);
  auto c = scheduleHandovers(t, mp, 1800, 12);
  CHECK(a.initialPoa == b.initialPoa);
  CHECK(a.handovers == b.handovers);
  CHECK(a.handovers != c.handovers);
}

TEST_CASE("handovers chain inside the region")
{
  Topology t = Topology::grid(3, 3, 3);
  std::vector<int> region{4, 5, 6, 7, 8, 9};
  auto mp = regionProcess(t, region, 15, 30);
  auto tr = scheduleHandovers(t, mp, 1800, 3);
  REQUIRE_FALSE(tr.handovers.empty());
  size_t at = tr.initialPoa;
  Time last{-1};
  for (const auto& h : tr.handovers) {
    CHECK(h.fromPoa == at);
    CHECK(h.toPoa != h.fromPoa);
    CHECK(h.at > last);
    CHECK(h.at < fromSeconds(1800));
    int fromAs = t.nodes()[h.fromPoa].as;
    int toAs = t.nodes()[h.toPoa].as;
    CHECK(h.interAs == (fromAs != toAs));
    CHECK(std::find(region.begin(), region.end(), toAs) != region.end());
    at = h.toPoa;
    last = h.at;
  }
}

TEST_CASE("faster movement hands over more often")
{
  Topology t = Topology::grid(3, 3, 3);
  size_t slow = 0, fast = 0;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    slow += scheduleHandovers(t, regionProcess(t, {4, 5, 6, 7, 8, 9}, 3, 3), 1800, seed).handovers.size();
    fast += scheduleHandovers(t, regionProcess(t, {4, 5, 6, 7, 8, 9}, 15, 30), 1800, seed).handovers.size();
  }
  CHECK(fast > 2 * slow);
}

TEST_CASE("inter-AS fraction on the 9AS producer region")
{
  Topology t = Topology::grid(3, 3, 3);
  auto mp = regionProcess(t, {4, 5, 6, 7, 8, 9}, 5, 15);
  size_t inter = 0, total = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    for (const auto& h : scheduleHandovers(t, mp, 1800, seed).handovers) {
      inter += h.interAs;
      ++total;
    }
  }
  double frac = static_cast<double>(inter) / static_cast<double>(total);
  CHECK(frac >= 0.20);
  CHECK(frac <= 0.34);
}

TEST_CASE("nearest PoA")
{
  Topology t = Topology::grid(2, 2, 3, 400.0);
  auto poas = t.nodesWithRole(Role::PoA);
  size_t p = nearestPoa(t, poas, 600, 690);
  CHECK(t.nodes()[p].name == "PoA20");
  p = nearestPoa(t, poas, 0, 0);
  CHECK(t.nodes()[p].name == "PoA1");
}

}
