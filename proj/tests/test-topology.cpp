#include "mobndn/topology.hpp"

#include "test-util.hpp"

#include <doctest.h>

using namespace mobndn;

TEST_SUITE("topology")
{

TEST_CASE("4AS grid")
{
  Topology t = Topology::grid(2, 2, 3);
  Census c = t.census();
  CHECK(c.ases == 4);
  CHECK(c.controllers == 4);
  CHECK(c.infrastructure() >= 58);
  CHECK(c.infrastructure() <= 70);
  CHECK(t.isConnected());
  for (int as = 1; as <= 4; ++as) {
    CHECK(t.controllerOf(as).has_value());
    CHECK(t.nodesOf(as, Role::PoA).size() == 5);
    CHECK(t.nodesOf(as, Role::ServiceRouter).size() == 5);
  }
}

TEST_CASE("9AS and 16AS grids")
{
  size_t n9 = Topology::grid(3, 3, 3).census().infrastructure();
  CHECK(n9 >= 123);
  CHECK(n9 <= 151);
  size_t n16 = Topology::grid(4, 4, 3).census().infrastructure();
  CHECK(n16 >= 218);
  CHECK(n16 <= 266);
}

TEST_CASE("single AS grid")
{
  Topology t = Topology::grid(1, 1, 3);
  Census c = t.census();
  CHECK(c.ases == 1);
  CHECK(c.controllers == 1);
  CHECK(c.poas >= 1);
  CHECK(c.serviceRouters >= 1);
  CHECK(c.core >= 1);
  CHECK(t.isConnected());
}

TEST_CASE("bad dimensions")
{
  CHECK_THROWS_AS(Topology::grid(0, 2, 3), Topology::Error);
  CHECK_THROWS_AS(Topology::grid(2, 2, 0), Topology::Error);
}

TEST_CASE("AS-level routing")
{
  Topology t = Topology::grid(3, 3, 3);
  CHECK(t.asNeighbors(5) == std::vector<int>{2, 4, 6, 8});
  CHECK(t.asNeighbors(1) == std::vector<int>{2, 4});
  CHECK(t.nextAs(1, 9) == 2);
  CHECK(t.nextAs(1, 4) == 4);
  CHECK(t.nextAs(3, 3) == 3);
  for (int as = 1; as <= 9; ++as) {
    for (int nb : t.asNeighbors(as)) {
      auto er = t.borderRouter(as, nb);
      REQUIRE(er.has_value());
      CHECK(t.nodes()[*er].role == Role::EdgeRouter);
      CHECK(t.nodes()[*er].as == as);
      bool crosses = false;
      for (size_t w : t.adjacency()[*er]) {
        crosses = crosses || t.nodes()[w].as == nb;
      }
      CHECK(crosses);
    }
  }
  CHECK_FALSE(t.borderRouter(1, 9).has_value());
}

TEST_CASE("PoA cells lie inside their AS")
{
  Topology t = Topology::grid(2, 2, 3, 400.0);
  for (size_t i : t.nodesWithRole(Role::PoA)) {
    const auto& n = t.nodes()[i];
    int col = static_cast<int>(n.x / 400.0);
    int row = static_cast<int>(n.y / 400.0);
    CHECK(row * 2 + col + 1 == n.as);
  }
}

TEST_CASE("PoA names")
{
  CHECK(Topology::poaIndex("PoA12") == 12);
  CHECK(Topology::poaIndex("Sr1") == -1);
  CHECK(Topology::poaIndex("PoA") == -1);
}

TEST_CASE("hand-built graph")
{
  Topology t;
  size_t a = t.addNode({"A", Role::Core, 1});
  size_t b = t.addNode({"B", Role::Core, 1});
  CHECK_THROWS_AS(t.addNode({"A", Role::Core, 1}), Topology::Error);
  CHECK_FALSE(t.isConnected());
  t.addLink(a, b);
  CHECK(t.isConnected());
  CHECK(t.find("B") == b);
  CHECK_FALSE(t.find("C").has_value());
}

}
