#include "mobndn/matrix.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <omp.h>

namespace mobndn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* const SUMMARY_METRICS[] = {
  "throughput", "interest_rate_hz", "overhead_pct", "handovers_intra",
  "handovers_inter", "control_msgs", "mu_data_count",
};

std::string
topoLabel(int side)
{
  return std::to_string(side * side) + "AS";
}

std::string
cellDir(const std::string& strategy, int side, const std::string& level)
{
  return strategy + "_" + topoLabel(side) + "_" + level;
}

struct Run
{
  size_t cell;
  std::string strategy;
  int side;
  std::string level;
  uint64_t seed;
  fs::path dir;
};

} // namespace

bool
MatrixResult::anyFailed() const
{
  return std::any_of(cells.begin(), cells.end(), [] (const MatrixCell& c) { return c.failed > 0; });
}

json
matrixRunDocument(const json& base, const std::string& strategy, int gridSide, const std::string& level,
                  uint64_t seed, std::optional<double> durationS)
{
  json doc = base.is_object() ? base : json::object();
  json& topo = doc["topology"];
  if (!topo.is_object()) {
    topo = json::object();
  }
  topo.erase("graph");
  topo["as_rows"] = gridSide;
  topo["as_cols"] = gridSide;
  doc["strategy"] = strategy;
  doc["seed"] = seed;
  if (durationS) {
    doc["duration_s"] = *durationS;
  }
  json& mob = doc["mobility"];
  if (!mob.is_object()) {
    mob = json::object();
  }
  // regions, homes and fixed speeds are per-topology; let the defaults apply
  for (const char* k : {"speed_min", "speed_max", "producer_region", "consumer_region", "handovers"}) {
    mob.erase(k);
  }
  mob["level"] = level;
  for (const char* who : {"consumer", "producer"}) {
    if (doc.contains(who) && doc[who].is_object()) {
      doc[who].erase("home_as");
      doc[who].erase("poa");
    }
  }
  return doc;
}

void
writeFileAtomic(const fs::path& path, const std::string& content)
{
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    os << content;
    if (!os) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::pair<double, double>
meanStd(const std::vector<double>& xs)
{
  if (xs.empty()) {
    return {0.0, 0.0};
  }
  double sum = 0;
  for (double x : xs) {
    sum += x;
  }
  double mean = sum / static_cast<double>(xs.size());
  if (xs.size() == 1) {
    return {mean, 0.0};
  }
  double ss = 0;
  for (double x : xs) {
    ss += (x - mean) * (x - mean);
  }
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

MatrixResult
runMatrix(const json& base, const MatrixOptions& opts, const fs::path& out,
          const std::function<void(const std::string&)>& progress)
{
  if (opts.seeds < 1) {
    throw std::invalid_argument("seeds must be >= 1");
  }
  MatrixResult result;
  std::vector<Run> runs;
  for (const auto& s : opts.strategies) {
    for (int side : opts.gridSides) {
      for (const auto& level : opts.levels) {
        size_t cell = result.cells.size();
        result.cells.push_back({s, topoLabel(side), level});
        for (int k = 0; k < opts.seeds; ++k) {
          uint64_t seed = opts.firstSeed + static_cast<uint64_t>(k);
          fs::path dir = out / "runs" / cellDir(s, side, level) / ("seed-" + std::to_string(seed));
          if (fs::exists(dir / "metrics.json")) {
            ++result.cells[cell].completed;
            ++result.runsReused;
            continue;
          }
          runs.push_back({cell, s, side, level, seed, dir});
        }
      }
    }
  }

  std::vector<int> ok(runs.size(), 0);
  int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (size_t i = 0; i < runs.size(); ++i) {
    const Run& r = runs[i];
    std::error_code ec;
    fs::create_directories(r.dir, ec);
    fs::remove(r.dir / "error.txt", ec);
    try {
      ScenarioConfig cfg = parseScenario(matrixRunDocument(base, r.strategy, r.side, r.level, r.seed, opts.durationS));
      cfg.logEvents = false;
      Simulation sim(std::move(cfg));
      MetricsLog log = sim.run();
      writeFileAtomic(r.dir / "metrics.json", metricsJson(log));
      ok[i] = 1;
    }
    catch (const std::exception& e) {
      try {
        writeFileAtomic(r.dir / "error.txt", std::string(e.what()) + "\n");
      }
      catch (const std::exception&) {
      }
    }
    if (progress) {
#pragma omp critical(matrix_progress)
      progress((ok[i] ? "done " : "FAILED ") + cellDir(r.strategy, r.side, r.level) + " seed " +
               std::to_string(r.seed));
    }
  }

  for (size_t i = 0; i < runs.size(); ++i) {
    if (ok[i]) {
      ++result.cells[runs[i].cell].completed;
    }
    else {
      ++result.cells[runs[i].cell].failed;
    }
  }
  result.runsExecuted = static_cast<int>(runs.size());
  writeFileAtomic(out / "summary.csv", summarizeRuns(out, opts));
  return result;
}

std::string
summarizeRuns(const fs::path& out, const MatrixOptions& opts)
{
  std::ostringstream os;
  os << "strategy,topology,mobility_level,runs,failed";
  for (const char* m : SUMMARY_METRICS) {
    os << ',' << m << "_mean," << m << "_std";
  }
  os << '\n';
  os.precision(10);

  for (const auto& s : opts.strategies) {
    for (int side : opts.gridSides) {
      for (const auto& level : opts.levels) {
        std::map<std::string, std::vector<double>> values;
        int runs = 0;
        int failed = 0;
        for (int k = 0; k < opts.seeds; ++k) {
          uint64_t seed = opts.firstSeed + static_cast<uint64_t>(k);
          fs::path dir = out / "runs" / cellDir(s, side, level) / ("seed-" + std::to_string(seed));
          std::ifstream is(dir / "metrics.json");
          if (!is) {
            ++failed;
            continue;
          }
          json j = json::parse(is, nullptr, false);
          if (j.is_discarded()) {
            ++failed;
            continue;
          }
          ++runs;
          for (const char* m : SUMMARY_METRICS) {
            values[m].push_back(j.value(m, 0.0));
          }
        }
        os << s << ',' << topoLabel(side) << ',' << level << ',' << runs << ',' << failed;
        for (const char* m : SUMMARY_METRICS) {
          auto [mean, sd] = meanStd(values[m]);
          os << ',' << mean << ',' << sd;
        }
        os << '\n';
      }
    }
  }
  return os.str();
}

} // namespace mobndn
