// Command-line front end: run, matrix, validate.

#include "mobndn/distance.hpp"
#include "mobndn/matrix.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace mobndn;

namespace {

void
setupLogging()
{
  const char* env = std::getenv("SIM_LOG_LEVEL");
  std::string level = env ? env : "info";
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  }
  else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  }
  else {
    if (level != "info") {
      spdlog::warn("SIM_LOG_LEVEL '{}' not one of error, info, debug; using info", level);
    }
    spdlog::set_level(spdlog::level::info);
  }
  spdlog::set_pattern("[%l] %v");
}

int
cmdRun(const std::string& configPath, const std::string& outDir, const std::vector<std::string>& sets)
{
  ScenarioConfig cfg;
  try {
    nlohmann::json doc = loadScenarioDocument(configPath);
    for (const auto& s : sets) {
      applyOverride(doc, s);
    }
    cfg = parseScenario(doc);
  }
  catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return 2;
  }

  fs::create_directories(outDir);
  std::ofstream events(fs::path(outDir) / "events.csv", std::ios::binary | std::ios::trunc);
  std::ofstream control(fs::path(outDir) / "control.csv", std::ios::binary | std::ios::trunc);
  try {
    bool logEvents = cfg.logEvents;
    Simulation sim(std::move(cfg));
    if (logEvents) {
      sim.setEventStream(&events);
    }
    else {
      events << "time,node,event,name,nonce,face\n";
    }
    sim.setControlStream(&control);
    spdlog::info("running {} on {} for {} s", toString(sim.config().strategy), sim.config().topologyLabel(),
                 sim.config().durationS);
    MetricsLog log = sim.run();
    writeFileAtomic(fs::path(outDir) / "metrics.json", metricsJson(log));
    spdlog::info("throughput {:.4f}, {} events", log.intTxApp ? effectiveThroughput(log) : 0.0,
                 sim.eventsExecuted());
  }
  catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  if (!events || !control) {
    spdlog::error("failed writing output files under {}", outDir);
    return 1;
  }
  return 0;
}

int
cmdMatrix(const std::string& configPath, int seeds, bool seedsGiven, const std::string& outDir, bool quick,
          int threads)
{
  nlohmann::json base;
  try {
    base = loadScenarioDocument(configPath);
    parseScenario(base);
  }
  catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  MatrixOptions opts;
  opts.seeds = seeds;
  opts.threads = threads;
  if (quick) {
    opts.durationS = 300.0;
    if (!seedsGiven) {
      opts.seeds = 3;
    }
  }
  else if (!base.contains("duration_s")) {
    opts.durationS = 1800.0;
  }
  if (opts.seeds < 1) {
    spdlog::error("--seeds must be >= 1");
    return 2;
  }
  fs::create_directories(outDir);
  MatrixResult res = runMatrix(base, opts, outDir, [] (const std::string& msg) { spdlog::debug("{}", msg); });
  spdlog::info("{} runs executed, {} reused; summary at {}", res.runsExecuted, res.runsReused,
               (fs::path(outDir) / "summary.csv").string());
  for (const auto& c : res.cells) {
    if (c.failed > 0) {
      spdlog::error("cell {} {} {}: {} of {} runs failed", c.strategy, c.topology, c.level, c.failed,
                    c.failed + c.completed);
    }
  }
  return res.anyFailed() ? 1 : 0;
}

int
cmdValidate(const std::string& configPath)
{
  try {
    ScenarioConfig cfg = loadScenario(configPath);
    Topology topo = cfg.buildTopology();
    Census c = topo.census();
    std::cout << "topology " << cfg.topologyLabel() << '\n'
              << "ases " << c.ases << '\n'
              << "nodes " << c.infrastructure() << '\n'
              << "links " << c.links << '\n'
              << "poa " << c.poas << '\n'
              << "service_routers " << c.serviceRouters << '\n'
              << "edge_routers " << c.edgeRouters << '\n'
              << "core_routers " << c.core << '\n'
              << "local_controllers " << c.controllers << '\n';
    if (!topo.isConnected()) {
      std::cout << "disconnected\n";
      spdlog::error("topology is disconnected");
      return 2;
    }
    cfg.resolve(topo);
    auto all = pairwiseDistance(topo, PairScope::All);
    auto intra = pairwiseDistance(topo, PairScope::Intra);
    std::cout << "delta_all " << all.mean << '\n' << "diameter " << all.diameter << '\n'
              << "delta_local " << intra.mean << '\n';
    if (c.ases > 1) {
      std::cout << "delta_global " << pairwiseDistance(topo, PairScope::Inter).mean << '\n';
    }
  }
  catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  catch (const Topology::Error& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  setupLogging();
  CLI::App app{"Mobility-aware NDN forwarding simulator"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::vector<std::string> sets;
  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--config", config, "Scenario JSON file")->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--set", sets, "Override, key=value (dotted keys)");

  int seeds = 10;
  bool quick = false;
  int threads = 0;
  auto* matrix = app.add_subcommand("matrix", "Run the strategy x topology x mobility grid");
  matrix->add_option("--config", config, "Base scenario JSON file")->required();
  auto* seedsOpt = matrix->add_option("--seeds", seeds, "Seeds per cell");
  matrix->add_option("--out", out, "Output directory")->required();
  matrix->add_flag("--quick", quick, "5-minute runs, 3 seeds unless --seeds is given");
  matrix->add_option("--threads", threads, "Parallel runs (default: OpenMP default)");

  auto* validate = app.add_subcommand("validate", "Check a scenario and print the topology census");
  validate->add_option("--config", config, "Scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmdRun(config, out, sets);
    }
    if (matrix->parsed()) {
      return cmdMatrix(config, seeds, seedsOpt->count() > 0, out, quick, threads);
    }
    return cmdValidate(config);
  }
  catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
