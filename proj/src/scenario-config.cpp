#include "mobndn/scenario-config.hpp"

#include <fstream>
#include <set>

namespace mobndn {

using nlohmann::json;

const char*
toString(Scheme s)
{
  switch (s) {
    case Scheme::FastForwarding: return "fastforwarding";
    case Scheme::Flooding: return "flooding";
    case Scheme::SemiFlooding: return "semiflooding";
  }
  return "?";
}

SpeedRange
speedsForLevel(const std::string& level)
{
  if (level == "low") return {3.0, 3.0};
  if (level == "medium") return {5.0, 15.0};
  if (level == "high") return {15.0, 30.0};
  throw ConfigError("mobility.level", "expected low, medium or high, got '" + level + "'");
}

namespace {

class ObjectReader
{
public:
  ObjectReader(const json& obj, std::string path)
    : m_obj(obj)
    , m_path(std::move(path))
  {
    if (!m_obj.is_object()) {
      throw ConfigError(m_path.empty() ? "<root>" : m_path, "expected an object");
    }
  }

  std::string
  field(const std::string& key) const
  {
    return m_path.empty() ? key : m_path + "." + key;
  }

  bool
  has(const std::string& key)
  {
    m_seen.insert(key);
    return m_obj.contains(key);
  }

  const json&
  raw(const std::string& key)
  {
    m_seen.insert(key);
    return m_obj.at(key);
  }

  double
  number(const std::string& key, double def, double lo, double hi)
  {
    if (!has(key)) {
      return def;
    }
    const json& v = m_obj.at(key);
    if (!v.is_number()) {
      throw ConfigError(field(key), "expected a number");
    }
    double d = v.get<double>();
    if (!(d >= lo && d <= hi)) {
      throw ConfigError(field(key), "value " + v.dump() + " out of range");
    }
    return d;
  }

  int
  integer(const std::string& key, int def, int lo, int hi)
  {
    if (!has(key)) {
      return def;
    }
    const json& v = m_obj.at(key);
    if (!v.is_number_integer()) {
      throw ConfigError(field(key), "expected an integer");
    }
    auto d = v.get<int64_t>();
    if (d < lo || d > hi) {
      throw ConfigError(field(key), "value " + v.dump() + " out of range");
    }
    return static_cast<int>(d);
  }

  std::string
  string(const std::string& key, const std::string& def)
  {
    if (!has(key)) {
      return def;
    }
    const json& v = m_obj.at(key);
    if (!v.is_string()) {
      throw ConfigError(field(key), "expected a string");
    }
    return v.get<std::string>();
  }

  bool
  boolean(const std::string& key, bool def)
  {
    if (!has(key)) {
      return def;
    }
    const json& v = m_obj.at(key);
    if (!v.is_boolean()) {
      throw ConfigError(field(key), "expected true or false");
    }
    return v.get<bool>();
  }

  std::vector<int>
  intList(const std::string& key)
  {
    if (!has(key)) {
      return {};
    }
    const json& v = m_obj.at(key);
    if (!v.is_array()) {
      throw ConfigError(field(key), "expected a list of AS numbers");
    }
    std::vector<int> out;
    for (const auto& e : v) {
      if (!e.is_number_integer() || e.get<int>() < 1) {
        throw ConfigError(field(key), "AS numbers are positive integers");
      }
      out.push_back(e.get<int>());
    }
    return out;
  }

  /// Rejects keys that were never asked for.
  void
  finish() const
  {
    for (auto it = m_obj.begin(); it != m_obj.end(); ++it) {
      if (m_seen.count(it.key()) == 0) {
        throw ConfigError(field(it.key()), "unknown field");
      }
    }
  }

private:
  const json& m_obj;
  std::string m_path;
  std::set<std::string> m_seen;
};

Role
parseRole(const std::string& s, const std::string& field)
{
  if (s == "poa") return Role::PoA;
  if (s == "sr") return Role::ServiceRouter;
  if (s == "er") return Role::EdgeRouter;
  if (s == "core") return Role::Core;
  if (s == "lc") return Role::Controller;
  throw ConfigError(field, "unknown role '" + s + "'");
}

Topology
buildExplicit(const json& g)
{
  Topology t;
  ObjectReader r(g, "topology.graph");
  if (!r.has("nodes") || !r.raw("nodes").is_array()) {
    throw ConfigError("topology.graph.nodes", "expected a list of nodes");
  }
  if (!r.has("links") || !r.raw("links").is_array()) {
    throw ConfigError("topology.graph.links", "expected a list of links");
  }
  r.finish();
  size_t idx = 0;
  for (const auto& n : g.at("nodes")) {
    std::string path = "topology.graph.nodes[" + std::to_string(idx++) + "]";
    ObjectReader nr(n, path);
    TopoNode node;
    node.name = nr.string("name", "");
    if (node.name.empty()) {
      throw ConfigError(nr.field("name"), "required");
    }
    node.role = parseRole(nr.string("role", ""), nr.field("role"));
    node.as = nr.integer("as", 0, 1, 1 << 20);
    if (node.as == 0) {
      throw ConfigError(nr.field("as"), "required");
    }
    node.x = nr.number("x", 0, -1e9, 1e9);
    node.y = nr.number("y", 0, -1e9, 1e9);
    nr.finish();
    try {
      t.addNode(node);
    }
    catch (const Topology::Error& e) {
      throw ConfigError(path, e.what());
    }
  }
  idx = 0;
  for (const auto& l : g.at("links")) {
    std::string path = "topology.graph.links[" + std::to_string(idx++) + "]";
    std::string a, b;
    double bw = 10e6, delayMs = 10;
    if (l.is_array() && l.size() == 2 && l[0].is_string() && l[1].is_string()) {
      a = l[0].get<std::string>();
      b = l[1].get<std::string>();
    }
    else if (l.is_object()) {
      ObjectReader lr(l, path);
      a = lr.string("a", "");
      b = lr.string("b", "");
      bw = lr.number("bandwidth_mbps", 10, 1e-3, 1e6) * 1e6;
      delayMs = lr.number("delay_ms", 10, 0, 1e6);
      lr.finish();
    }
    else {
      throw ConfigError(path, "expected [\"a\", \"b\"] or an object");
    }
    auto ia = t.find(a), ib = t.find(b);
    if (!ia || !ib) {
      throw ConfigError(path, "unknown node '" + (!ia ? a : b) + "'");
    }
    try {
      t.addLink(*ia, *ib, bw, fromSeconds(delayMs / 1000.0));
    }
    catch (const Topology::Error& e) {
      throw ConfigError(path, e.what());
    }
  }
  return t;
}

} // namespace

Topology
ScenarioConfig::buildTopology() const
{
  if (topology.explicitGraph) {
    return buildExplicit(*topology.explicitGraph);
  }
  try {
    return Topology::grid(topology.asRows, topology.asCols, topology.intraDim, topology.asSizeM);
  }
  catch (const Topology::Error& e) {
    throw ConfigError("topology", e.what());
  }
}

std::string
ScenarioConfig::topologyLabel() const
{
  if (topology.explicitGraph) {
    return "custom";
  }
  return std::to_string(topology.asRows * topology.asCols) + "AS";
}

void
ScenarioConfig::resolve(const Topology& topo)
{
  int n = topo.asCount();
  bool isGrid = !topology.explicitGraph;
  int cols = isGrid ? topology.asCols : n;

  if (producer.homeAs == 0) {
    producer.homeAs = isGrid ? cols : n;
  }
  if (producer.homeAs > n) {
    throw ConfigError("producer.home_as", "no such AS");
  }
  if (mobility.consumerRegion.empty()) {
    for (int as = 1; as <= (isGrid ? cols : n); ++as) {
      if (as != producer.homeAs) {
        mobility.consumerRegion.push_back(as);
      }
    }
    if (mobility.consumerRegion.empty()) {
      mobility.consumerRegion.push_back(1);
    }
  }
  if (mobility.producerRegion.empty()) {
    for (int as = (isGrid ? cols + 1 : 1); as <= n; ++as) {
      mobility.producerRegion.push_back(as);
    }
    if (mobility.producerRegion.empty()) {
      for (int as = 1; as <= n; ++as) {
        mobility.producerRegion.push_back(as);
      }
    }
  }
  for (const auto* region : {&mobility.consumerRegion, &mobility.producerRegion}) {
    const char* field = region == &mobility.consumerRegion ? "mobility.consumer_region" : "mobility.producer_region";
    for (int as : *region) {
      if (as < 1 || as > n) {
        throw ConfigError(field, "AS " + std::to_string(as) + " does not exist");
      }
    }
    if (isGrid) {
      int r0 = 1 << 30, r1 = -1, c0 = 1 << 30, c1 = -1;
      std::set<int> uniq(region->begin(), region->end());
      for (int as : uniq) {
        int r = (as - 1) / cols, c = (as - 1) % cols;
        r0 = std::min(r0, r);
        r1 = std::max(r1, r);
        c0 = std::min(c0, c);
        c1 = std::max(c1, c);
      }
      if (static_cast<int>(uniq.size()) != (r1 - r0 + 1) * (c1 - c0 + 1)) {
        throw ConfigError(field, "region must be a rectangle of ASes");
      }
    }
  }
  if (consumer.homeAs == 0) {
    consumer.homeAs = mobility.consumerRegion.front();
  }
  if (consumer.homeAs > n) {
    throw ConfigError("consumer.home_as", "no such AS");
  }
  if (!isGrid && (mobility.producerSpeed.max > 0 || mobility.consumerSpeed.max > 0)) {
    throw ConfigError("mobility", "random waypoint needs a grid topology; use scripted handovers");
  }
  for (const auto* poa : {&consumer.poa, &producer.poa}) {
    if (!poa->empty()) {
      auto idx = topo.find(*poa);
      if (!idx || topo.nodes()[*idx].role != Role::PoA) {
        throw ConfigError(poa == &consumer.poa ? "consumer.poa" : "producer.poa", "no PoA named '" + *poa + "'");
      }
    }
  }
  for (size_t k = 0; k < mobility.scripted.size(); ++k) {
    auto idx = topo.find(mobility.scripted[k].toPoa);
    if (!idx || topo.nodes()[*idx].role != Role::PoA) {
      throw ConfigError("mobility.handovers[" + std::to_string(k) + "].to", "no such PoA");
    }
  }
}

ScenarioConfig
parseScenario(const json& doc)
{
  ScenarioConfig c;
  ObjectReader root(doc, "");

  if (root.has("topology")) {
    ObjectReader t(root.raw("topology"), "topology");
    c.topology.asRows = t.integer("as_rows", c.topology.asRows, 1, 64);
    c.topology.asCols = t.integer("as_cols", c.topology.asCols, 1, 64);
    c.topology.intraDim = t.integer("intra_dim", c.topology.intraDim, 1, 64);
    if (c.topology.intraDim < 3) {
      throw ConfigError("topology.intra_dim", "must be >= 3 (corner and centre service routers)");
    }
    c.topology.asSizeM = t.number("as_size_m", c.topology.asSizeM, 1.0, 1e6);
    if (t.has("graph")) {
      c.topology.explicitGraph = t.raw("graph");
    }
    t.finish();
  }

  std::string strategy = root.string("strategy", "fastforwarding");
  if (strategy == "fastforwarding") c.strategy = Scheme::FastForwarding;
  else if (strategy == "flooding") c.strategy = Scheme::Flooding;
  else if (strategy == "semiflooding") c.strategy = Scheme::SemiFlooding;
  else {
    throw ConfigError("strategy", "expected fastforwarding, flooding or semiflooding, got '" + strategy + "'");
  }

  c.durationS = root.number("duration_s", c.durationS, 1e-3, 1e7);
  {
    if (root.has("seed")) {
      const json& s = root.raw("seed");
      if (!s.is_number_integer() || s.get<int64_t>() < 0) {
        throw ConfigError("seed", "expected a non-negative integer");
      }
      c.seed = s.get<uint64_t>();
    }
  }
  c.logEvents = root.boolean("log_events", c.logEvents);

  if (root.has("consumer")) {
    ObjectReader r(root.raw("consumer"), "consumer");
    c.consumer.rateHz = r.number("rate_hz", c.consumer.rateHz, 1e-3, 1e5);
    c.consumer.rtoS = r.number("rto_s", c.consumer.rtoS, 1e-3, 1e4);
    c.consumer.retries = r.integer("retries", c.consumer.retries, 0, 1000);
    c.consumer.homeAs = r.integer("home_as", 0, 1, 1 << 20);
    c.consumer.poa = r.string("poa", "");
    r.finish();
  }
  if (root.has("producer")) {
    ObjectReader r(root.raw("producer"), "producer");
    c.producer.prefix = r.string("prefix", c.producer.prefix);
    try {
      Name p = Name::parse(c.producer.prefix);
      if (p.empty()) {
        throw ConfigError("producer.prefix", "must not be the root name");
      }
    }
    catch (const Name::Error& e) {
      throw ConfigError("producer.prefix", e.what());
    }
    c.producer.homeAs = r.integer("home_as", 0, 1, 1 << 20);
    c.producer.count = r.integer("count", 1, 1, 1000);
    c.producer.poa = r.string("poa", "");
    r.finish();
  }
  if (root.has("mobility")) {
    ObjectReader r(root.raw("mobility"), "mobility");
    c.mobility.level = r.string("level", c.mobility.level);
    c.mobility.producerSpeed = speedsForLevel(c.mobility.level);
    c.mobility.producerSpeed.min = r.number("speed_min", c.mobility.producerSpeed.min, 0, 1e4);
    c.mobility.producerSpeed.max = r.number("speed_max", c.mobility.producerSpeed.max, 0, 1e4);
    if (c.mobility.producerSpeed.max < c.mobility.producerSpeed.min) {
      throw ConfigError("mobility.speed_max", "must be >= speed_min");
    }
    c.mobility.consumerSpeed.min = r.number("consumer_speed_min", c.mobility.consumerSpeed.min, 0, 1e4);
    c.mobility.consumerSpeed.max = r.number("consumer_speed_max", c.mobility.consumerSpeed.max, 0, 1e4);
    if (c.mobility.consumerSpeed.max < c.mobility.consumerSpeed.min) {
      throw ConfigError("mobility.consumer_speed_max", "must be >= consumer_speed_min");
    }
    c.mobility.handoverLatencyMs = r.number("handover_latency_ms", c.mobility.handoverLatencyMs, 0, 1e6);
    c.mobility.producerRegion = r.intList("producer_region");
    c.mobility.consumerRegion = r.intList("consumer_region");
    if (r.has("handovers")) {
      const json& h = r.raw("handovers");
      if (!h.is_array()) {
        throw ConfigError("mobility.handovers", "expected a list");
      }
      for (size_t k = 0; k < h.size(); ++k) {
        ObjectReader hr(h[k], "mobility.handovers[" + std::to_string(k) + "]");
        ScriptedHandover s;
        s.timeS = hr.number("time_s", -1, 0, 1e7);
        s.endpoint = hr.string("endpoint", "");
        s.toPoa = hr.string("to", "");
        if (s.endpoint.empty()) {
          throw ConfigError(hr.field("endpoint"), "required");
        }
        hr.finish();
        c.mobility.scripted.push_back(s);
      }
    }
    r.finish();
  }
  if (root.has("timers")) {
    ObjectReader r(root.raw("timers"), "timers");
    c.timers.pitS = r.number("pit_s", c.timers.pitS, 1e-3, 1e5);
    c.timers.fptFlushS = r.number("fpt_flush_s", c.timers.fptFlushS, 1e-3, 1e5);
    c.timers.rupdTimeoutS = r.number("rupd_timeout_s", c.timers.rupdTimeoutS, 1e-3, 1e5);
    c.timers.suspectS = r.number("suspect_s", c.timers.suspectS, 0, 1e5);
    c.timers.csCapacity = static_cast<size_t>(r.integer("cs_capacity", 100, 0, 1 << 24));
    r.finish();
  }
  root.finish();
  return c;
}

json
loadScenarioDocument(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("<file>", "cannot read '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  }
  catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("parse error: ") + e.what());
  }
  return doc;
}

ScenarioConfig
loadScenario(const std::string& path)
{
  return parseScenario(loadScenarioDocument(path));
}

void
applyOverride(json& doc, const std::string& assignment)
{
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(assignment, "override must look like key=value");
  }
  std::string key = assignment.substr(0, eq);
  std::string value = assignment.substr(eq + 1);
  json parsed;
  try {
    parsed = json::parse(value);
  }
  catch (const json::parse_error&) {
    parsed = value;
  }
  json* cur = &doc;
  size_t pos = 0;
  while (true) {
    size_t dot = key.find('.', pos);
    std::string part = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (part.empty()) {
      throw ConfigError(key, "empty key segment");
    }
    if (!cur->is_object()) {
      if (cur->is_null()) {
        *cur = json::object();
      }
      else {
        throw ConfigError(key, "cannot descend into a non-object");
      }
    }
    if (dot == std::string::npos) {
      (*cur)[part] = parsed;
      return;
    }
    cur = &(*cur)[part];
    pos = dot + 1;
  }
}

} // namespace mobndn
