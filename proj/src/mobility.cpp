#include "mobndn/mobility.hpp"

#include <cmath>

namespace mobndn {

MobilityProcess
regionProcess(const Topology& topo, const std::vector<int>& ases, double speedMin, double speedMax)
{
  MobilityProcess mp;
  mp.speedMin = speedMin;
  mp.speedMax = speedMax;
  int cols = topo.asCols();
  double L = topo.asSize();
  bool first = true;
  for (int as : ases) {
    int r = (as - 1) / cols, c = (as - 1) % cols;
    double ax0 = c * L, ay0 = r * L;
    if (first) {
      mp.x0 = ax0;
      mp.y0 = ay0;
      mp.x1 = ax0 + L;
      mp.y1 = ay0 + L;
      first = false;
    }
    else {
      mp.x0 = std::min(mp.x0, ax0);
      mp.y0 = std::min(mp.y0, ay0);
      mp.x1 = std::max(mp.x1, ax0 + L);
      mp.y1 = std::max(mp.y1, ay0 + L);
    }
    for (size_t p : topo.nodesOf(as, Role::PoA)) {
      mp.poas.push_back(p);
    }
  }
  return mp;
}

size_t
nearestPoa(const Topology& topo, const std::vector<size_t>& poas, double x, double y)
{
  size_t best = poas.front();
  double bestD = INFINITY;
  for (size_t p : poas) {
    const auto& n = topo.nodes()[p];
    double d = (n.x - x) * (n.x - x) + (n.y - y) * (n.y - y);
    if (d < bestD || (d == bestD && p < best)) {
      best = p;
      bestD = d;
    }
  }
  return best;
}

MobilityTrace
scheduleHandovers(const Topology& topo, const MobilityProcess& mp, double durationS, uint64_t seed)
{
  if (mp.poas.empty()) {
    throw std::invalid_argument("mobility region has no PoA");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(mp.x0, mp.x1);
  std::uniform_real_distribution<double> uy(mp.y0, mp.y1);
  std::uniform_real_distribution<double> uv(mp.speedMin, mp.speedMax);

  double x = ux(rng), y = uy(rng);
  MobilityTrace trace;
  trace.initialPoa = nearestPoa(topo, mp.poas, x, y);
  if (mp.speedMax <= 0) {
    return trace;
  }

  size_t cur = trace.initialPoa;
  double t = 0;
  constexpr double step = 0.05;
  while (t < durationS) {
    double wx = ux(rng), wy = uy(rng);
    double v = uv(rng);
    if (v <= 0) {
      v = mp.speedMax;
    }
    double len = std::hypot(wx - x, wy - y);
    double legT = len / v;
    auto at = [&] (double s) {
      double f = legT > 0 ? s / legT : 1.0;
      return std::make_pair(x + (wx - x) * f, y + (wy - y) * f);
    };
    double prev = 0;
    while (prev < legT) {
      double next = std::min(prev + step, legT);
      auto [px, py] = at(next);
      size_t poa = nearestPoa(topo, mp.poas, px, py);
      if (poa != cur) {
        // locate the boundary crossing inside (prev, next]
        double lo = prev, hi = next;
        for (int k = 0; k < 30; ++k) {
          double mid = 0.5 * (lo + hi);
          auto [mx, my] = at(mid);
          if (nearestPoa(topo, mp.poas, mx, my) == cur) {
            lo = mid;
          }
          else {
            hi = mid;
          }
        }
        auto [hx, hy] = at(hi);
        size_t to = nearestPoa(topo, mp.poas, hx, hy);
        double when = t + hi;
        if (when >= durationS) {
          return trace;
        }
        trace.handovers.push_back({fromSeconds(when), cur, to,
                                   topo.nodes()[cur].as != topo.nodes()[to].as});
        cur = to;
        if (to != poa) {
          // crossed two boundaries within one step; rescan from the crossing
          prev = hi;
          continue;
        }
      }
      prev = next;
    }
    t += legT;
    x = wx;
    y = wy;
  }
  return trace;
}

} // namespace mobndn
