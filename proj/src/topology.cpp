#include "mobndn/topology.hpp"

#include <algorithm>
#include <deque>

namespace mobndn {

size_t
Topology::addNode(TopoNode node)
{
  if (node.name.empty()) {
    throw Error("node name must not be empty");
  }
  if (m_index.count(node.name) > 0) {
    throw Error("duplicate node name '" + node.name + "'");
  }
  size_t id = m_nodes.size();
  m_index[node.name] = id;
  m_asCount = std::max(m_asCount, node.as);
  m_nodes.push_back(std::move(node));
  m_adj.emplace_back();
  return id;
}

void
Topology::addLink(size_t a, size_t b, double bandwidthBps, Time delay)
{
  if (a >= m_nodes.size() || b >= m_nodes.size() || a == b) {
    throw Error("invalid link endpoints");
  }
  if (std::find(m_adj[a].begin(), m_adj[a].end(), b) != m_adj[a].end()) {
    throw Error("duplicate link " + m_nodes[a].name + " - " + m_nodes[b].name);
  }
  m_links.push_back({a, b, bandwidthBps, delay});
  m_adj[a].push_back(b);
  m_adj[b].push_back(a);
}

Topology
Topology::grid(int asRows, int asCols, int intraDim, double asSizeMeters)
{
  if (asRows < 1 || asCols < 1) {
    throw Error("BadDims: as_rows and as_cols must be >= 1");
  }
  if (intraDim < 3) {
    throw Error("BadDims: intra_dim must be >= 3");
  }
  Topology t;
  t.m_asRows = asRows;
  t.m_asCols = asCols;
  t.m_asSize = asSizeMeters;
  const int d = intraDim;
  const int mid = d / 2;
  int nextSr = 1, nextEr = 1, nextCore = 1, nextPoa = 1;

  // per AS, index of the router at (row, col)
  std::vector<std::vector<size_t>> routerAt(asRows * asCols, std::vector<size_t>(d * d));

  for (int r = 0; r < asRows; ++r) {
    for (int c = 0; c < asCols; ++c) {
      int as = r * asCols + c + 1;
      bool hasUp = r > 0, hasDown = r + 1 < asRows, hasLeft = c > 0, hasRight = c + 1 < asCols;
      bool alone = !(hasUp || hasDown || hasLeft || hasRight);

      const std::vector<std::pair<int, int>> srCells{{0, 0}, {0, d - 1}, {mid, mid}, {d - 1, 0}, {d - 1, d - 1}};
      auto roleOf = [&] (int i, int j) {
        if (std::find(srCells.begin(), srCells.end(), std::make_pair(i, j)) != srCells.end()) {
          return Role::ServiceRouter;
        }
        if ((i == 0 && j == mid && (hasUp || alone)) || (i == d - 1 && j == mid && hasDown) ||
            (i == mid && j == 0 && hasLeft) || (i == mid && j == d - 1 && hasRight)) {
          return Role::EdgeRouter;
        }
        return Role::Core;
      };

      auto& grid = routerAt[as - 1];
      std::map<std::pair<int, int>, size_t> srNode;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          Role role = roleOf(i, j);
          std::string name;
          switch (role) {
            case Role::ServiceRouter: name = "Sr" + std::to_string(nextSr++); break;
            case Role::EdgeRouter: name = "Er" + std::to_string(nextEr++); break;
            default: name = "R" + std::to_string(nextCore++); break;
          }
          grid[i * d + j] = t.addNode({name, role, as});
          if (role == Role::ServiceRouter) {
            srNode[{i, j}] = grid[i * d + j];
          }
        }
      }
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          if (j + 1 < d) {
            t.addLink(grid[i * d + j], grid[i * d + j + 1]);
          }
          if (i + 1 < d) {
            t.addLink(grid[i * d + j], grid[(i + 1) * d + j]);
          }
        }
      }
      size_t lc = t.addNode({"LocalController:As" + std::to_string(as), Role::Controller, as});
      t.addLink(lc, grid[mid * d + mid]);

      // strips from top to bottom
      for (int k = 0; k < 5; ++k) {
        double x = (c + 0.5) * asSizeMeters;
        double y = (r + 0.5 + (k - 2) * 0.12) * asSizeMeters;
        size_t poa = t.addNode({"PoA" + std::to_string(nextPoa++), Role::PoA, as, x, y});
        t.addLink(poa, srNode.at(srCells[k]), 10e6, fromSeconds(0.010));
      }
    }
  }

  for (int r = 0; r < asRows; ++r) {
    for (int c = 0; c < asCols; ++c) {
      int as = r * asCols + c;
      if (c + 1 < asCols) {
        t.addLink(routerAt[as][mid * d + d - 1], routerAt[as + 1][mid * d + 0]);
      }
      if (r + 1 < asRows) {
        t.addLink(routerAt[as][(d - 1) * d + mid], routerAt[as + asCols][mid]);
      }
    }
  }
  return t;
}

std::optional<size_t>
Topology::find(const std::string& name) const
{
  auto it = m_index.find(name);
  if (it == m_index.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::vector<size_t>
Topology::nodesOf(int as, Role role) const
{
  std::vector<size_t> out;
  for (size_t i = 0; i < m_nodes.size(); ++i) {
    if (m_nodes[i].as == as && m_nodes[i].role == role) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<size_t>
Topology::nodesWithRole(Role role) const
{
  std::vector<size_t> out;
  for (size_t i = 0; i < m_nodes.size(); ++i) {
    if (m_nodes[i].role == role) {
      out.push_back(i);
    }
  }
  return out;
}

std::optional<size_t>
Topology::controllerOf(int as) const
{
  auto v = nodesOf(as, Role::Controller);
  if (v.empty()) {
    return std::nullopt;
  }
  return v.front();
}

std::vector<int>
Topology::asNeighbors(int as) const
{
  std::vector<int> out;
  for (const auto& l : m_links) {
    int a = m_nodes[l.a].as, b = m_nodes[l.b].as;
    if (a == as && b != as && b > 0) {
      out.push_back(b);
    }
    else if (b == as && a != as && a > 0) {
      out.push_back(a);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int
Topology::nextAs(int from, int to) const
{
  if (from == to) {
    return from;
  }
  // BFS from the destination gives hop counts; pick the lowest-numbered neighbour one step closer
  std::vector<int> dist(m_asCount + 1, -1);
  std::deque<int> q{to};
  dist[to] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : asNeighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  if (dist[from] < 0) {
    return -1;
  }
  for (int n : asNeighbors(from)) {
    if (dist[n] == dist[from] - 1) {
      return n;
    }
  }
  return -1;
}

std::optional<size_t>
Topology::borderRouter(int as, int neighbor) const
{
  for (const auto& l : m_links) {
    if (m_nodes[l.a].as == as && m_nodes[l.b].as == neighbor) {
      return l.a;
    }
    if (m_nodes[l.b].as == as && m_nodes[l.a].as == neighbor) {
      return l.b;
    }
  }
  return std::nullopt;
}

bool
Topology::isConnected() const
{
  if (m_nodes.empty()) {
    return true;
  }
  std::vector<char> seen(m_nodes.size(), 0);
  std::deque<size_t> q{0};
  seen[0] = 1;
  size_t count = 1;
  while (!q.empty()) {
    size_t u = q.front();
    q.pop_front();
    for (size_t v : m_adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push_back(v);
      }
    }
  }
  return count == m_nodes.size();
}

Census
Topology::census() const
{
  Census c;
  for (const auto& n : m_nodes) {
    switch (n.role) {
      case Role::PoA: ++c.poas; break;
      case Role::ServiceRouter: ++c.serviceRouters; break;
      case Role::EdgeRouter: ++c.edgeRouters; break;
      case Role::Core: ++c.core; break;
      case Role::Controller: ++c.controllers; break;
      case Role::Endpoint: break;
    }
  }
  c.links = m_links.size();
  c.ases = m_asCount;
  return c;
}

int
Topology::poaIndex(const std::string& name)
{
  if (name.rfind("PoA", 0) != 0 || name.size() < 4) {
    return -1;
  }
  int v = 0;
  for (size_t i = 3; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') {
      return -1;
    }
    v = v * 10 + (name[i] - '0');
  }
  return v;
}

} // namespace mobndn
