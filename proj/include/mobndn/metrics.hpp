#ifndef MOBNDN_METRICS_HPP
#define MOBNDN_METRICS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mobndn {

class NoTraffic : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

class NoData : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

struct MetricsLog
{
  uint64_t intTxTotal = 0;
  /// Content Data hop transmissions; control acknowledgements are counted apart.
  uint64_t dataHopTotal = 0;
  uint64_t controlDataHops = 0;
  uint64_t intTxApp = 0;
  uint64_t dataRxApp = 0;
  uint64_t permanentLoss = 0;
  uint64_t handoversIntra = 0;
  uint64_t handoversInter = 0;
  uint64_t controlMsgs = 0;
  uint64_t muDataCount = 0;
  double durationS = 0;
  std::string strategy;
  std::string topology;
  std::string mobilityLevel;
  uint64_t seed = 0;
};

/// data_rx_app / int_tx_app.
double
effectiveThroughput(const MetricsLog& log);

/// Per-hop Interest transmissions per second, network wide.
double
interestRate(const MetricsLog& log);

/// Extra Interest transmissions relative to per-hop Data transmissions, percent.
double
overheadRatio(const MetricsLog& log);

struct ControllerLoadParams
{
  double hAs = 0;
  double hAp = 0;
  double kappa = 0;
  double mC = 0;
  double mP = 0;
  double rmP = 0;
};

/// Controller request rate: hAs * (mC + kappa * rmP) + hAp * mP.
double
controllerRequestRate(const ControllerLoadParams& p);

/// c * h * (deltaLocal + 2 * deltaGlobal) with both distances approximated by ln n.
double
handoverOverheadEstimate(double h, double n, double c = 1.0);

} // namespace mobndn

#endif // MOBNDN_METRICS_HPP
