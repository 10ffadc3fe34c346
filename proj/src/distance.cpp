#include "mobndn/distance.hpp"

#include <deque>

namespace mobndn {

namespace {

void
bfsRow(const AdjacencyList& adj, size_t src, std::vector<int>& dist)
{
  dist.assign(adj.size(), -1);
  std::vector<size_t> queue;
  queue.reserve(adj.size());
  queue.push_back(src);
  dist[src] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    size_t u = queue[head];
    for (size_t v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
}

} // namespace

HopMatrix
allPairsHops(const AdjacencyList& adj)
{
  const long n = static_cast<long>(adj.size());
  HopMatrix m(adj.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long s = 0; s < n; ++s) {
    bfsRow(adj, static_cast<size_t>(s), m[s]);
  }
  return m;
}

HopMatrix
allPairsHopsSerial(const AdjacencyList& adj)
{
  HopMatrix m(adj.size());
  for (size_t s = 0; s < adj.size(); ++s) {
    bfsRow(adj, s, m[s]);
  }
  return m;
}

DistanceStats
pairwiseDistance(const Topology& topo, PairScope scope, bool parallel)
{
  if (!topo.isConnected()) {
    throw Disconnected("topology is disconnected");
  }
  const auto& adj = topo.adjacency();
  HopMatrix m = parallel ? allPairsHops(adj) : allPairsHopsSerial(adj);
  const auto& nodes = topo.nodes();
  DistanceStats st;
  long double sum = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (size_t j = i + 1; j < nodes.size(); ++j) {
      bool same = nodes[i].as == nodes[j].as;
      if ((scope == PairScope::Intra && !same) || (scope == PairScope::Inter && same)) {
        continue;
      }
      int d = m[i][j];
      if (d < 0) {
        throw Disconnected("topology is disconnected: no path " + nodes[i].name + " - " + nodes[j].name);
      }
      sum += d;
      st.diameter = std::max(st.diameter, d);
      ++st.pairs;
    }
  }
  if (st.pairs > 0) {
    st.mean = static_cast<double>(sum / st.pairs);
  }
  return st;
}

double
avgPairwiseDistance(const Topology& topo, PairScope scope)
{
  return pairwiseDistance(topo, scope).mean;
}

} // namespace mobndn
