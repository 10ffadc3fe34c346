#ifndef MOBNDN_TOPOLOGY_HPP
#define MOBNDN_TOPOLOGY_HPP

#include "mobndn/common.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mobndn {

struct TopoNode
{
  std::string name;
  Role role;
  /// 1-based AS number.
  int as = 0;
  /// PoA position in metres; unused for other roles.
  double x = 0;
  double y = 0;
};

struct TopoLink
{
  size_t a;
  size_t b;
  double bandwidthBps = 10e6;
  Time delay = fromSeconds(0.010);
};

struct Census
{
  size_t poas = 0;
  size_t serviceRouters = 0;
  size_t edgeRouters = 0;
  size_t core = 0;
  size_t controllers = 0;
  size_t links = 0;
  int ases = 0;

  size_t
  infrastructure() const noexcept
  {
    return poas + serviceRouters + edgeRouters + core + controllers;
  }
};

/** \brief Infrastructure graph: routers, PoAs and controllers of all ASes.
 *
 *  Mobile endpoints are not part of it; they attach to PoAs at run time.
 */
class Topology
{
public:
  class Error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /** \brief Grid of asRows x asCols ASes, each an intraDim x intraDim router grid.
   *
   *  The four corner routers and the centre router are service routers, one
   *  PoA each. Side midpoints that face a neighbouring AS are edge routers,
   *  joined by one inter-AS link per adjacency. The controller hangs off the
   *  centre router. PoAs sit on a vertical line through the AS centre, so
   *  coverage cells are horizontal strips.
   */
  static Topology
  grid(int asRows, int asCols, int intraDim, double asSizeMeters = 400.0);

  /// Adds a node and returns its index. Names must be unique.
  size_t
  addNode(TopoNode node);

  void
  addLink(size_t a, size_t b, double bandwidthBps = 10e6, Time delay = fromSeconds(0.010));

  const std::vector<TopoNode>&
  nodes() const noexcept
  {
    return m_nodes;
  }

  const std::vector<TopoLink>&
  links() const noexcept
  {
    return m_links;
  }

  /// Neighbour node indices in link insertion order.
  const std::vector<std::vector<size_t>>&
  adjacency() const noexcept
  {
    return m_adj;
  }

  std::optional<size_t>
  find(const std::string& name) const;

  int
  asCount() const noexcept
  {
    return m_asCount;
  }

  int
  asRows() const noexcept
  {
    return m_asRows;
  }

  int
  asCols() const noexcept
  {
    return m_asCols;
  }

  double
  asSize() const noexcept
  {
    return m_asSize;
  }

  std::vector<size_t>
  nodesOf(int as, Role role) const;

  std::vector<size_t>
  nodesWithRole(Role role) const;

  std::optional<size_t>
  controllerOf(int as) const;

  /// Neighbouring AS numbers, ascending.
  std::vector<int>
  asNeighbors(int as) const;

  /// Next AS on a shortest AS-level path, lowest number on ties; -1 if unreachable.
  int
  nextAs(int from, int to) const;

  /// Edge router of \p as whose inter-AS link reaches \p neighbor.
  std::optional<size_t>
  borderRouter(int as, int neighbor) const;

  bool
  isConnected() const;

  Census
  census() const;

  /// PoA number parsed from a "PoA<k>" name; -1 otherwise.
  static int
  poaIndex(const std::string& name);

private:
  std::vector<TopoNode> m_nodes;
  std::vector<TopoLink> m_links;
  std::vector<std::vector<size_t>> m_adj;
  std::map<std::string, size_t> m_index;
  int m_asCount = 0;
  int m_asRows = 0;
  int m_asCols = 0;
  double m_asSize = 400.0;
};

} // namespace mobndn

#endif // MOBNDN_TOPOLOGY_HPP
