#ifndef MOBNDN_DISTANCE_HPP
#define MOBNDN_DISTANCE_HPP

#include "mobndn/topology.hpp"

#include <vector>

namespace mobndn {

using AdjacencyList = std::vector<std::vector<size_t>>;

/// -1 marks unreachable pairs.
using HopMatrix = std::vector<std::vector<int>>;

/// One BFS per source, sources spread over OpenMP threads.
HopMatrix
allPairsHops(const AdjacencyList& adj);

/// Single-threaded reference for allPairsHops.
HopMatrix
allPairsHopsSerial(const AdjacencyList& adj);

class Disconnected : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class PairScope {
  All,
  Intra,
  Inter,
};

struct DistanceStats
{
  double mean = 0;
  int diameter = 0;
  size_t pairs = 0;
};

/// Mean hop count over unordered node pairs in \p scope. Throws Disconnected.
DistanceStats
pairwiseDistance(const Topology& topo, PairScope scope, bool parallel = true);

double
avgPairwiseDistance(const Topology& topo, PairScope scope);

} // namespace mobndn

#endif // MOBNDN_DISTANCE_HPP
