#include "mobndn/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mobndn;

TEST_SUITE("metrics")
{

TEST_CASE("effective throughput")
{
  MetricsLog log;
  log.intTxApp = 36000;
  log.dataRxApp = 36000;
  CHECK(effectiveThroughput(log) == 1.0);
  log.dataRxApp = 30240;
  CHECK(effectiveThroughput(log) == doctest::Approx(0.84).epsilon(1e-12));
  log.dataRxApp = 0;
  CHECK(effectiveThroughput(log) == 0.0);
  log.intTxApp = 0;
  CHECK_THROWS_AS(effectiveThroughput(log), NoTraffic);
}

TEST_CASE("interest rate")
{
  MetricsLog log;
  log.intTxTotal = 1800000;
  log.durationS = 1800;
  CHECK(interestRate(log) == 1000.0);
  log.durationS = 0;
  CHECK_THROWS(interestRate(log));
}

TEST_CASE("overhead ratio")
{
  MetricsLog log;
  log.intTxTotal = 5000;
  log.dataHopTotal = 5000;
  CHECK(overheadRatio(log) == 0.0);
  log.intTxTotal = 7500;
  CHECK(overheadRatio(log) == 50.0);
  log.dataHopTotal = 0;
  CHECK_THROWS_AS(overheadRatio(log), NoData);
}

TEST_CASE("overhead ratio ignores the time scale")
{
  MetricsLog a;
  a.intTxTotal = 1234;
  a.dataHopTotal = 1000;
  a.durationS = 300;
  MetricsLog b = a;
  b.intTxTotal *= 6;
  b.dataHopTotal *= 6;
  b.durationS *= 6;
  CHECK(overheadRatio(a) == doctest::Approx(overheadRatio(b)).epsilon(1e-12));
  CHECK(interestRate(a) == doctest::Approx(interestRate(b)).epsilon(1e-12));
}

TEST_CASE("controller request rate")
{
  ControllerLoadParams p{0.02, 0.08, 3, 100, 100, 100};
  CHECK(controllerRequestRate(p) == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(controllerRequestRate(ControllerLoadParams{}) == 0.0);

  // h = 0.1/s, gamma * kappa = 1, one million mobile hosts
  ControllerLoadParams big{0.1, 0, 1, 1e6, 0, 1e6};
  CHECK(controllerRequestRate(big) == 200000.0);
}

TEST_CASE("controller request rate is linear")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 10);
  for (int k = 0; k < 1000; ++k) {
    ControllerLoadParams a{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    double s = u(rng);
    ControllerLoadParams scaledH = a;
    scaledH.hAs *= s;
    scaledH.hAp *= s;
    CHECK(controllerRequestRate(scaledH) == doctest::Approx(s * controllerRequestRate(a)).epsilon(1e-9));

    ControllerLoadParams b = a;
    b.mC = u(rng);
    b.mP = u(rng);
    b.rmP = u(rng);
    ControllerLoadParams sum = a;
    sum.mC += b.mC;
    sum.mP += b.mP;
    sum.rmP += b.rmP;
    CHECK(controllerRequestRate(sum)
          == doctest::Approx(controllerRequestRate(a) + controllerRequestRate(b)).epsilon(1e-9));
  }
}

TEST_CASE("handover overhead estimate")
{
  CHECK(handoverOverheadEstimate(0, 64) == 0.0);
  double r = handoverOverheadEstimate(2, 137) / handoverOverheadEstimate(2, 64);
  CHECK(r == doctest::Approx(std::log(137.0) / std::log(64.0)).epsilon(1e-12));
  CHECK(r == doctest::Approx(1.18).epsilon(0.01));
  CHECK(handoverOverheadEstimate(1, 64) == doctest::Approx(3 * std::log(64.0)).epsilon(1e-12));
}

}
