#ifndef MOBNDN_SCENARIO_CONFIG_HPP
#define MOBNDN_SCENARIO_CONFIG_HPP

#include "mobndn/forwarder.hpp"
#include "mobndn/topology.hpp"

#include <json.hpp>

namespace mobndn {

class ConfigError : public std::runtime_error
{
public:
  ConfigError(const std::string& field, const std::string& what)
    : std::runtime_error("config field '" + field + "': " + what)
    , m_field(field)
  {
  }

  const std::string&
  field() const noexcept
  {
    return m_field;
  }

private:
  std::string m_field;
};

enum class Scheme {
  FastForwarding,
  Flooding,
  SemiFlooding,
};

const char*
toString(Scheme s);

struct ScriptedHandover
{
  double timeS;
  std::string endpoint;
  std::string toPoa;
};

struct SpeedRange
{
  double min = 0;
  double max = 0;
};

/// Speed pair of a named mobility level, m/s.
SpeedRange
speedsForLevel(const std::string& level);

struct ScenarioConfig
{
  struct TopologySpec
  {
    int asRows = 2;
    int asCols = 2;
    int intraDim = 3;
    double asSizeM = 400.0;
    /// Hand-written graph; overrides the grid when present.
    std::optional<nlohmann::json> explicitGraph;
  } topology;

  Scheme strategy = Scheme::FastForwarding;
  double durationS = 1800.0;
  uint64_t seed = 1;
  bool logEvents = true;

  struct Consumer
  {
    double rateHz = 20.0;
    double rtoS = 1.0;
    int retries = 3;
    int homeAs = 0;
    std::string poa;
  } consumer;

  struct Producer
  {
    std::string prefix = "/Prefix";
    int homeAs = 0;
    int count = 1;
    std::string poa;
  } producer;

  struct Mobility
  {
    std::string level = "medium";
    SpeedRange producerSpeed = speedsForLevel("medium");
    SpeedRange consumerSpeed = speedsForLevel("low");
    double handoverLatencyMs = 50.0;
    std::vector<int> producerRegion;
    std::vector<int> consumerRegion;
    std::vector<ScriptedHandover> scripted;
  } mobility;

  struct Timers
  {
    double pitS = 2.0;
    double fptFlushS = 5.0;
    double rupdTimeoutS = 10.0;
    double suspectS = 5.0;
    size_t csCapacity = 100;
  } timers;

  /// Builds the topology; throws ConfigError naming the topology field.
  Topology
  buildTopology() const;

  /// Fills region/home defaults for the given topology and checks ranges.
  void
  resolve(const Topology& topo);

  std::string
  topologyLabel() const;
};

/// Parses and validates a JSON scenario. Unknown keys are rejected.
ScenarioConfig
parseScenario(const nlohmann::json& doc);

/// Reads a scenario file as JSON; throws ConfigError if unreadable.
nlohmann::json
loadScenarioDocument(const std::string& path);

ScenarioConfig
loadScenario(const std::string& path);

/// Applies a "dotted.key=value" override to a JSON document.
void
applyOverride(nlohmann::json& doc, const std::string& assignment);

} // namespace mobndn

#endif // MOBNDN_SCENARIO_CONFIG_HPP
