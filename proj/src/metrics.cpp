#include "mobndn/metrics.hpp"

#include <cmath>

namespace mobndn {

double
effectiveThroughput(const MetricsLog& log)
{
  if (log.intTxApp == 0) {
    throw NoTraffic("no application Interests were sent");
  }
  return static_cast<double>(log.dataRxApp) / static_cast<double>(log.intTxApp);
}

double
interestRate(const MetricsLog& log)
{
  if (!(log.durationS > 0)) {
    throw std::domain_error("duration must be positive");
  }
  return static_cast<double>(log.intTxTotal) / log.durationS;
}

double
overheadRatio(const MetricsLog& log)
{
  if (log.dataHopTotal == 0) {
    throw NoData("no Data transmissions");
  }
  double i = static_cast<double>(log.intTxTotal);
  double d = static_cast<double>(log.dataHopTotal);
  return 100.0 * (i - d) / d;
}

double
controllerRequestRate(const ControllerLoadParams& p)
{
  return p.hAs * (p.mC + p.kappa * p.rmP) + p.hAp * p.mP;
}

double
handoverOverheadEstimate(double h, double n, double c)
{
  if (n < 2) {
    throw std::domain_error("node count must be at least 2");
  }
  double delta = std::log(n);
  return c * h * (delta + 2.0 * delta);
}

} // namespace mobndn
