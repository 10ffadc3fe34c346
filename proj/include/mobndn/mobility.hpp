#ifndef MOBNDN_MOBILITY_HPP
#define MOBNDN_MOBILITY_HPP

#include "mobndn/topology.hpp"

#include <random>

namespace mobndn {

struct Handover
{
  Time at;
  size_t fromPoa;
  size_t toPoa;
  bool interAs;

  friend bool
  operator==(const Handover&, const Handover&) = default;
};

/// Random-waypoint movement inside a rectangle of ASes, no pause time.
/// The serving PoA is the nearest PoA of the allowed region.
struct MobilityProcess
{
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double speedMin = 0;
  double speedMax = 0;
  std::vector<size_t> poas;
};

/// Region covering the listed ASes of a grid topology.
MobilityProcess
regionProcess(const Topology& topo, const std::vector<int>& ases, double speedMin, double speedMax);

struct MobilityTrace
{
  size_t initialPoa;
  std::vector<Handover> handovers;
};

/// Deterministic for a fixed seed. Zero speed yields an empty trace.
MobilityTrace
scheduleHandovers(const Topology& topo, const MobilityProcess& mp, double durationS, uint64_t seed);

/// Nearest PoA in \p poas to (x, y); ties go to the lower node index.
size_t
nearestPoa(const Topology& topo, const std::vector<size_t>& poas, double x, double y);

} // namespace mobndn

#endif // MOBNDN_MOBILITY_HPP
