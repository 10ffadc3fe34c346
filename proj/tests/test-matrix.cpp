#include "mobndn/matrix.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace mobndn;
namespace fs = std::filesystem;

namespace {

fs::path
freshDir(const std::string& name)
{
  fs::path p = fs::temp_directory_path() / ("mobndn-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string
slurp(const fs::path& p)
{
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::string>
lines(const std::string& s)
{
  std::vector<std::string> v;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) {
    v.push_back(l);
  }
  return v;
}

std::vector<std::string>
split(const std::string& line)
{
  std::vector<std::string> v;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) {
    v.push_back(f);
  }
  return v;
}

MatrixOptions
tinyOptions(int seeds)
{
  MatrixOptions o;
  o.gridSides = {2};
  o.levels = {"low", "high"};
  o.seeds = seeds;
  o.durationS = 3.0;
  return o;
}

} // namespace

TEST_SUITE("matrix")
{

TEST_CASE("mean and standard deviation")
{
  auto [m, s] = meanStd({2, 4, 4, 4, 5, 5, 7, 9});
  CHECK(m == 5.0);
  CHECK(s == doctest::Approx(std::sqrt(32.0 / 7.0)));
  CHECK(meanStd({3.5}) == std::pair<double, double>{3.5, 0.0});
}

TEST_CASE("run documents pin the cell")
{
  nlohmann::json base = {{"producer", {{"poa", "PoA5"}, {"home_as", 2}}},
                         {"mobility", {{"speed_min", 1}, {"handover_latency_ms", 40}}}};
  auto d = matrixRunDocument(base, "flooding", 3, "high", 7, 60.0);
  CHECK(d["strategy"] == "flooding");
  CHECK(d["topology"]["as_rows"] == 3);
  CHECK(d["topology"]["as_cols"] == 3);
  CHECK(d["seed"] == 7);
  CHECK(d["duration_s"] == 60.0);
  CHECK(d["mobility"]["level"] == "high");
  CHECK(d["mobility"]["handover_latency_ms"] == 40);
  CHECK_FALSE(d["mobility"].contains("speed_min"));
  CHECK_FALSE(d["producer"].contains("poa"));
  ScenarioConfig c = parseScenario(d);
  CHECK(c.topologyLabel() == "9AS");
}

TEST_CASE("summary rows, resumption and reproducibility")
{
  fs::path out = freshDir("matrix");
  MatrixOptions o = tinyOptions(2);
  MatrixResult r1 = runMatrix(nlohmann::json::object(), o, out);
  CHECK_FALSE(r1.anyFailed());
  CHECK(r1.runsExecuted == 12);
  std::string summary = slurp(out / "summary.csv");
  auto rows = lines(summary);
  REQUIRE(rows.size() == 1 + 3 * 1 * 2);
  auto header = split(rows[0]);
  CHECK(header[0] == "strategy");
  CHECK(std::find(header.begin(), header.end(), "throughput_mean") != header.end());
  CHECK(std::find(header.begin(), header.end(), "overhead_pct_std") != header.end());

  // drop one finished run as if interrupted; only that run is repeated
  fs::path victim = out / "runs" / "flooding_4AS_high" / "seed-2" / "metrics.json";
  REQUIRE(fs::exists(victim));
  std::string before = slurp(victim);
  fs::remove(victim);
  MatrixResult r2 = runMatrix(nlohmann::json::object(), o, out);
  CHECK(r2.runsExecuted == 1);
  CHECK(r2.runsReused == 11);
  CHECK(slurp(victim) == before);
  CHECK(slurp(out / "summary.csv") == summary);
  CHECK(summarizeRuns(out, o) == summary);
  fs::remove_all(out);
}

TEST_CASE("single seed has zero spread")
{
  fs::path out = freshDir("matrix1");
  MatrixOptions o = tinyOptions(1);
  o.strategies = {"fastforwarding"};
  o.levels = {"high"};
  runMatrix(nlohmann::json::object(), o, out);
  auto rows = lines(slurp(out / "summary.csv"));
  REQUIRE(rows.size() == 2);
  auto header = split(rows[0]);
  auto values = split(rows[1]);
  REQUIRE(header.size() == values.size());
  for (size_t k = 0; k < header.size(); ++k) {
    if (header[k].size() > 4 && header[k].substr(header[k].size() - 4) == "_std") {
      CHECK(std::stod(values[k]) == 0.0);
    }
  }
  fs::remove_all(out);
}

TEST_CASE("failed runs are reported")
{
  fs::path out = freshDir("matrixfail");
  MatrixOptions o = tinyOptions(1);
  o.strategies = {"fastforwarding"};
  o.levels = {"ludicrous"};
  MatrixResult r = runMatrix(nlohmann::json::object(), o, out);
  CHECK(r.anyFailed());
  CHECK(fs::exists(out / "runs" / "fastforwarding_4AS_ludicrous" / "seed-1" / "error.txt"));
  fs::remove_all(out);
}

TEST_CASE("zero seeds is rejected")
{
  CHECK_THROWS(runMatrix(nlohmann::json::object(), tinyOptions(0), freshDir("matrix0")));
}

}
