#include "mobndn/simulation.hpp"

#include <cmath>
#include <deque>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mobndn {

// ---- EventQueue ----

void
EventQueue::schedule(Time at, std::function<void()> fn)
{
  if (at < m_now) {
    throw std::logic_error("event scheduled in the past");
  }
  m_heap.push({at, m_seq++, std::move(fn)});
}

void
EventQueue::runUntil(Time end)
{
  while (!m_heap.empty() && m_heap.top().at < end) {
    // move out before pop; top() is const
    Event ev = std::move(const_cast<Event&>(m_heap.top()));
    m_heap.pop();
    m_now = ev.at;
    ++m_executed;
    ev.fn();
  }
  if (m_now < end) {
    m_now = end;
  }
}

// ---- helpers ----

namespace {

bool
isControlName(const Name& n)
{
  if (n.empty()) {
    return false;
  }
  if (n[0].rfind("LocalController:", 0) == 0) {
    return true;
  }
  return n.size() >= 2 && n[1] == "Reg" && Topology::poaIndex(n[0]) > 0;
}

size_t
packetSize(const std::variant<Interest, Data>& p)
{
  if (std::holds_alternative<Interest>(p)) {
    return INTEREST_SIZE;
  }
  return isControlName(std::get<Data>(p).name) ? CONTROL_DATA_SIZE : DATA_SIZE;
}

uint64_t
deriveSeed(uint64_t seed, uint64_t stream)
{
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
  std::array<uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

std::string
csvField(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') {
      q += '"';
    }
    q += c;
  }
  return q + '"';
}

int64_t
seqOf(const Name& name)
{
  if (name.empty()) {
    return -1;
  }
  const std::string& last = name[name.size() - 1];
  if (last.rfind("seq=", 0) != 0) {
    return -1;
  }
  try {
    return std::stoll(last.substr(4));
  }
  catch (const std::exception&) {
    return -1;
  }
}

} // namespace

// ---- internal structures ----

struct Simulation::Link
{
  struct Side
  {
    bool endpoint;
    size_t idx;
    FaceId face;
  };
  Side side[2];
  double bandwidthBps;
  Time delay;
  Time busy[2]{Time(0), Time(0)};
  bool up = true;
};

class Simulation::NodeTimers : public TimerService
{
public:
  NodeTimers(Simulation& sim, size_t node)
    : m_sim(sim)
    , m_node(node)
  {
  }

  void
  schedule(Time at, std::function<void(Time, Actions&)> fn) override
  {
    m_sim.m_queue.schedule(at, [this, fn = std::move(fn)] {
      Actions out;
      fn(m_sim.now(), out);
      m_sim.dispatch(m_node, out);
    });
  }

private:
  Simulation& m_sim;
  size_t m_node;
};

struct Simulation::SimNode
{
  TopoNode info;
  Name locator;
  std::unique_ptr<NodeTimers> timers;
  std::unique_ptr<Forwarder> fw;
  std::unique_ptr<RouterAgent> agent;
  std::unique_ptr<LocalController> lc;
  std::map<FaceId, std::pair<size_t, int>> faces;
  std::map<size_t, FaceId> faceTo;
  FaceId nextFace = 1;
};

struct Simulation::Endpoint
{
  struct Pending
  {
    Time deadline;
    int retries;
  };

  std::string name;
  Name locator;
  bool producer = false;
  Name prefix;
  int homeAs = 0;
  MobilityTrace trace;
  std::optional<size_t> poa;
  size_t link = SIZE_MAX;
  uint64_t token = 0;
  Name pendingRegister;
  bool registered = false;

  uint64_t nextSeq = 0;
  std::map<uint64_t, Pending> pending;
  std::multimap<Time, uint64_t> timeouts;
  std::deque<uint64_t> due;
};

// ---- construction ----

Simulation::Simulation(ScenarioConfig config)
  : m_cfg(std::move(config))
  , m_topo(m_cfg.buildTopology())
  , m_plane(MobilityTimers{fromSeconds(m_cfg.timers.fptFlushS), fromSeconds(m_cfg.timers.rupdTimeoutS)},
            deriveSeed(m_cfg.seed, 7))
  , m_nonceRng(deriveSeed(m_cfg.seed, 11))
{
  m_cfg.resolve(m_topo);
  if (!m_topo.isConnected()) {
    throw ConfigError("topology", "graph is disconnected");
  }
  m_plane.setSink([this] (Time at, const Name& actor, const char* msg, const Name& prefix,
                          const std::optional<Name>& loc, const std::optional<Name>& third) {
    if (m_controlOs == nullptr) {
      return;
    }
    *m_controlOs << formatTime(at) << ',' << csvField(actor.toUri()) << ',' << msg << ','
                 << csvField(prefix.toUri()) << ',' << (loc ? csvField(loc->toUri()) : "") << ','
                 << (third ? csvField(third->toUri()) : "") << '\n';
  });

  m_log.strategy = toString(m_cfg.strategy);
  m_log.topology = m_cfg.topologyLabel();
  m_log.mobilityLevel = m_cfg.mobility.level;
  m_log.seed = m_cfg.seed;
  m_log.durationS = m_cfg.durationS;

  buildNodes();
  buildEndpoints();
  buildRoutes();
  if (m_cfg.strategy == Scheme::FastForwarding) {
    buildFpt();
  }

  // start: attach endpoints, replay traces, start the consumer
  for (auto& ep : m_endpoints) {
    Endpoint* e = ep.get();
    m_queue.schedule(Time(0), [this, e] { attach(*e, e->trace.initialPoa); });
    for (const auto& h : e->trace.handovers) {
      m_queue.schedule(h.at, [this, e, h] { handover(*e, h.toPoa, h.interAs); });
    }
  }
  for (const auto& s : m_cfg.mobility.scripted) {
    Endpoint* target = nullptr;
    for (auto& ep : m_endpoints) {
      if (ep->name == s.endpoint || (s.endpoint == "producer" && ep->name == "Producer") ||
          (s.endpoint == "consumer" && ep->name == "Consumer")) {
        target = ep.get();
      }
    }
    if (target == nullptr) {
      throw ConfigError("mobility.handovers", "unknown endpoint '" + s.endpoint + "'");
    }
    size_t to = *m_topo.find(s.toPoa);
    m_queue.schedule(fromSeconds(s.timeS), [this, target, to] {
      bool inter = target->poa && m_topo.nodes()[*target->poa].as != m_topo.nodes()[to].as;
      handover(*target, to, inter);
    });
  }
  for (auto& ep : m_endpoints) {
    if (!ep->producer) {
      Endpoint* e = ep.get();
      m_queue.schedule(Time(0), [this, e] { consumerTick(*e); });
    }
  }
}

Simulation::~Simulation() = default;

void
Simulation::buildNodes()
{
  const auto& nodes = m_topo.nodes();
  ForwarderConfig fc;
  fc.pitLifetime = fromSeconds(m_cfg.timers.pitS);
  fc.csCapacity = m_cfg.timers.csCapacity;
  fc.suspectWindow = fromSeconds(m_cfg.timers.suspectS);
  switch (m_cfg.strategy) {
    case Scheme::FastForwarding: fc.strategy = StrategyKind::BestRoute; break;
    case Scheme::Flooding: fc.strategy = StrategyKind::Flooding; break;
    case Scheme::SemiFlooding: fc.strategy = StrategyKind::SemiFlooding; break;
  }
  bool ff = m_cfg.strategy == Scheme::FastForwarding;

  for (size_t i = 0; i < nodes.size(); ++i) {
    auto n = std::make_unique<SimNode>();
    n->info = nodes[i];
    n->locator = Name({nodes[i].name});
    n->timers = std::make_unique<NodeTimers>(*this, i);
    n->fw = std::make_unique<Forwarder>(n->locator, nodes[i].role, fc, *n->timers);
    const std::string* nodeName = &n->info.name;
    n->fw->setEventSink([this, nodeName] (Time at, const char* ev, const Name& name, uint64_t nonce, FaceId face) {
      logEvent(at, *nodeName, ev, name, nonce, face);
    });
    m_nodes.push_back(std::move(n));
  }

  for (const auto& l : m_topo.links()) {
    Link link;
    size_t id = m_links.size();
    FaceId fa = m_nodes[l.a]->nextFace++;
    FaceId fb = m_nodes[l.b]->nextFace++;
    link.side[0] = {false, l.a, fa};
    link.side[1] = {false, l.b, fb};
    link.bandwidthBps = l.bandwidthBps;
    link.delay = l.delay;
    m_links.push_back(link);
    m_nodes[l.a]->faces[fa] = {id, 0};
    m_nodes[l.b]->faces[fb] = {id, 1};
    m_nodes[l.a]->faceTo[l.b] = fa;
    m_nodes[l.b]->faceTo[l.a] = fb;
    m_nodes[l.a]->fw->addFace(fa, nodes[l.b].role);
    m_nodes[l.b]->fw->addFace(fb, nodes[l.a].role);
  }

  if (!ff) {
    return;
  }
  for (size_t i = 0; i < nodes.size(); ++i) {
    SimNode& n = *m_nodes[i];
    Role r = n.info.role;
    if (r == Role::PoA || r == Role::ServiceRouter || r == Role::EdgeRouter) {
      n.agent = std::make_unique<RouterAgent>(*n.fw, n.info.as, m_plane);
      n.fw->setHooks(n.agent.get());
      if (r == Role::ServiceRouter) {
        for (const auto& [nbr, face] : n.faceTo) {
          if (nodes[nbr].role == Role::PoA) {
            n.agent->setFacePeer(face, m_nodes[nbr]->locator);
          }
        }
      }
    }
    else if (r == Role::Controller) {
      ControllerSetup setup;
      setup.as = n.info.as;
      for (size_t s : m_topo.nodesOf(setup.as, Role::ServiceRouter)) {
        setup.serviceRouters.push_back(m_nodes[s]->locator);
      }
      for (size_t e : m_topo.nodesOf(setup.as, Role::EdgeRouter)) {
        setup.edgeRouters.push_back(m_nodes[e]->locator);
      }
      for (int as = 1; as <= m_topo.asCount(); ++as) {
        if (as == setup.as || !m_topo.controllerOf(as)) {
          continue;
        }
        setup.peers.push_back(as);
        int next = m_topo.nextAs(setup.as, as);
        if (next > 0) {
          if (auto br = m_topo.borderRouter(setup.as, next)) {
            setup.egress[as] = m_nodes[*br]->locator;
          }
        }
      }
      n.lc = std::make_unique<LocalController>(*n.fw, std::move(setup), m_plane);
    }
  }
}

void
Simulation::buildEndpoints()
{
  const auto& mob = m_cfg.mobility;
  auto scripted = [&] (const std::string& name, const std::string& alias) {
    for (const auto& s : mob.scripted) {
      if (s.endpoint == name || s.endpoint == alias) {
        return true;
      }
    }
    return false;
  };
  bool grid = !m_cfg.topology.explicitGraph;

  auto makeTrace = [&] (Endpoint& ep, const std::vector<int>& region, SpeedRange speed,
                        const std::string& fixedPoa, uint64_t stream, bool isScripted) {
    if (grid) {
      double vmin = isScripted ? 0 : speed.min;
      double vmax = isScripted ? 0 : speed.max;
      MobilityProcess mp = regionProcess(m_topo, region, vmin, vmax);
      ep.trace = scheduleHandovers(m_topo, mp, m_cfg.durationS, deriveSeed(m_cfg.seed, stream));
    }
    else {
      auto poas = m_topo.nodesOf(region.front(), Role::PoA);
      if (poas.empty()) {
        poas = m_topo.nodesWithRole(Role::PoA);
      }
      if (poas.empty()) {
        throw ConfigError("topology", "no PoA to attach endpoints to");
      }
      ep.trace.initialPoa = poas.front();
    }
    if (!fixedPoa.empty()) {
      ep.trace.initialPoa = *m_topo.find(fixedPoa);
      if (!isScripted && speed.max > 0 && grid) {
        // keep the random trace consistent with the forced start
        ep.trace.handovers.clear();
      }
    }
  };

  Name base = Name::parse(m_cfg.producer.prefix);
  for (int k = 0; k < m_cfg.producer.count; ++k) {
    auto ep = std::make_unique<Endpoint>();
    ep->producer = true;
    ep->name = k == 0 ? "Producer" : "Producer" + std::to_string(k + 1);
    ep->locator = Name({ep->name});
    ep->prefix = base;
    if (k > 0) {
      ep->prefix = base.getPrefix(-1);
      ep->prefix.append(base[base.size() - 1] + std::to_string(k + 1));
    }
    ep->homeAs = m_cfg.producer.homeAs;
    makeTrace(*ep, mob.producerRegion, mob.producerSpeed, k == 0 ? m_cfg.producer.poa : "",
              100 + k, scripted(ep->name, k == 0 ? "producer" : ep->name));
    m_endpoints.push_back(std::move(ep));
  }

  auto c = std::make_unique<Endpoint>();
  c->producer = false;
  c->name = "Consumer";
  c->locator = Name({"Consumer"});
  c->prefix = base;
  c->homeAs = m_cfg.consumer.homeAs;
  makeTrace(*c, mob.consumerRegion, mob.consumerSpeed, m_cfg.consumer.poa, 1, scripted("Consumer", "consumer"));
  m_endpoints.push_back(std::move(c));
}

void
Simulation::buildRoutes()
{
  const auto& nodes = m_topo.nodes();
  const auto& adj = m_topo.adjacency();
  size_t n = nodes.size();

  std::vector<std::vector<int>> dist(n);
  for (size_t s = 0; s < n; ++s) {
    auto& d = dist[s];
    d.assign(n, -1);
    std::deque<size_t> q{s};
    d[s] = 0;
    while (!q.empty()) {
      size_t u = q.front();
      q.pop_front();
      for (size_t v : adj[u]) {
        if (d[v] < 0) {
          d[v] = d[u] + 1;
          q.push_back(v);
        }
      }
    }
  }

  auto shortestHops = [&] (size_t u, size_t target) {
    std::vector<NextHop> hops;
    for (size_t w : adj[u]) {
      if (dist[target][w] == dist[target][u] - 1) {
        hops.push_back({m_nodes[u]->faceTo.at(w), static_cast<uint32_t>(dist[target][u])});
      }
    }
    return hops;
  };

  for (size_t v = 0; v < n; ++v) {
    const Name& loc = m_nodes[v]->locator;
    for (size_t u = 0; u < n; ++u) {
      if (u == v) {
        continue;
      }
      m_nodes[u]->fw->fib().insert(loc, shortestHops(u, v));
    }
  }

  for (int as = 1; as <= m_topo.asCount(); ++as) {
    auto lc = m_topo.controllerOf(as);
    if (!lc) {
      continue;
    }
    m_nodes[*lc]->fw->fib().insert(m_nodes[*lc]->locator, {{APP_FACE, 0}});
    for (size_t poa : m_topo.nodesOf(as, Role::PoA)) {
      int k = Topology::poaIndex(nodes[poa].name);
      if (k < 0) {
        continue;
      }
      Name reg = poaRegisterPrefix(k);
      for (size_t u = 0; u < n; ++u) {
        if (nodes[u].as != as) {
          continue;
        }
        if (u == *lc) {
          m_nodes[u]->fw->fib().insert(reg, {{APP_FACE, 0}});
        }
        else {
          m_nodes[u]->fw->fib().insert(reg, shortestHops(u, *lc));
        }
      }
    }
  }

  // content prefixes: every non-uphill face towards the producer's first PoA
  for (const auto& ep : m_endpoints) {
    if (!ep->producer) {
      continue;
    }
    size_t target = ep->trace.initialPoa;
    for (size_t u = 0; u < n; ++u) {
      std::vector<NextHop> hops;
      if (u != target) {
        for (size_t w : adj[u]) {
          if (dist[target][w] <= dist[target][u] && nodes[w].role != Role::Controller) {
            hops.push_back({m_nodes[u]->faceTo.at(w), static_cast<uint32_t>(dist[target][w] + 1)});
          }
        }
      }
      m_nodes[u]->fw->fib().insert(ep->prefix, hops);
    }
  }
}

void
Simulation::buildFpt()
{
  const auto& nodes = m_topo.nodes();
  for (size_t u = 0; u < nodes.size(); ++u) {
    Role r = nodes[u].role;
    if (r != Role::Core && r != Role::ServiceRouter && r != Role::EdgeRouter) {
      continue;
    }
    int a = nodes[u].as;
    for (int b = 1; b <= m_topo.asCount(); ++b) {
      if (b == a) {
        continue;
      }
      int next = m_topo.nextAs(a, b);
      if (next < 0) {
        continue;
      }
      auto egress = m_topo.borderRouter(a, next);
      if (!egress) {
        continue;
      }
      size_t target = *egress;
      if (r == Role::EdgeRouter && *egress == u) {
        auto ingress = m_topo.borderRouter(next, a);
        if (!ingress) {
          continue;
        }
        target = *ingress;
      }
      m_nodes[u]->fw->fpt().insert(domainTag(b), FptEntry{m_nodes[target]->locator});
    }
  }
}

// ---- links ----

void
Simulation::transmit(size_t linkId, int fromSide, std::variant<Interest, Data> packet)
{
  Link& link = m_links[linkId];
  if (!link.up) {
    return;
  }
  Time now = m_queue.now();
  size_t bytes = packetSize(packet);
  Time ser(static_cast<int64_t>(std::llround(static_cast<double>(bytes) * 8.0 * 1e9 / link.bandwidthBps)));
  Time start = std::max(now, link.busy[fromSide]);
  link.busy[fromSide] = start + ser;
  Time arrival = start + ser + link.delay;

  const Link::Side& from = link.side[fromSide];
  const std::string& who = from.endpoint ? m_endpoints[from.idx]->name : m_nodes[from.idx]->info.name;
  if (auto* i = std::get_if<Interest>(&packet)) {
    ++m_log.intTxTotal;
    logEvent(now, who, "int_tx", i->name, i->nonce, from.face);
  }
  else {
    if (bytes == CONTROL_DATA_SIZE) {
      ++m_log.controlDataHops;
    }
    else {
      ++m_log.dataHopTotal;
    }
    logEvent(now, who, "data_tx", std::get<Data>(packet).name, 0, from.face);
  }
  int toSide = 1 - fromSide;
  m_queue.schedule(arrival, [this, linkId, toSide, p = std::move(packet)] () mutable {
    deliver(linkId, toSide, p);
  });
}

void
Simulation::deliver(size_t linkId, int toSide, std::variant<Interest, Data>& packet)
{
  Link& link = m_links[linkId];
  if (!link.up) {
    return;
  }
  const Link::Side& to = link.side[toSide];
  if (to.endpoint) {
    endpointReceive(*m_endpoints[to.idx], packet);
    return;
  }
  SimNode& node = *m_nodes[to.idx];
  Actions out;
  if (auto* i = std::get_if<Interest>(&packet)) {
    out = node.fw->onInterest(to.face, std::move(*i), m_queue.now());
  }
  else {
    out = node.fw->onData(to.face, std::move(std::get<Data>(packet)), m_queue.now());
  }
  dispatch(to.idx, out);
}

void
Simulation::dispatch(size_t nodeIdx, Actions& actions)
{
  SimNode& node = *m_nodes[nodeIdx];
  for (auto& a : actions) {
    if (a.face == APP_FACE) {
      m_queue.schedule(m_queue.now(), [this, nodeIdx, act = std::move(a)] () mutable {
        deliverLocal(nodeIdx, std::move(act));
      });
      continue;
    }
    auto it = node.faces.find(a.face);
    if (it == node.faces.end()) {
      continue;
    }
    if (auto* i = std::get_if<Interest>(&a.packet)) {
      transmit(it->second.first, it->second.second, std::move(*i));
    }
    else if (auto* d = std::get_if<Data>(&a.packet)) {
      transmit(it->second.first, it->second.second, std::move(*d));
    }
  }
}

void
Simulation::deliverLocal(size_t nodeIdx, ForwardAction action)
{
  SimNode& node = *m_nodes[nodeIdx];
  Time now = m_queue.now();
  Actions out;
  if (auto* i = std::get_if<Interest>(&action.packet)) {
    if (node.lc) {
      node.lc->onInterest(*i, now, out);
    }
  }
  else if (auto* d = std::get_if<Data>(&action.packet)) {
    if (node.lc) {
      node.lc->onLocalData(*d, now, out);
    }
    else if (node.agent) {
      node.agent->onLocalData(*d, now, out);
    }
  }
  else {
    const auto& t = std::get<LocalTimeout>(action.packet);
    if (node.lc) {
      node.lc->onLocalTimeout(t.name, now, out);
    }
    else if (node.agent) {
      node.agent->onLocalTimeout(t.name, now, out);
    }
  }
  dispatch(nodeIdx, out);
}

// ---- endpoints ----

void
Simulation::attach(Endpoint& ep, size_t poa)
{
  SimNode& node = *m_nodes[poa];
  FaceId face = node.nextFace++;
  Link link;
  link.side[0] = {false, poa, face};
  link.side[1] = {true, 0, 1};
  for (size_t k = 0; k < m_endpoints.size(); ++k) {
    if (m_endpoints[k].get() == &ep) {
      link.side[1].idx = k;
    }
  }
  link.bandwidthBps = 10e6;
  link.delay = fromSeconds(0.001);
  size_t id = m_links.size();
  m_links.push_back(link);
  node.faces[face] = {id, 0};
  node.fw->addFace(face, Role::Endpoint);
  node.fw->fib().insert(ep.locator, {{face, 0}});
  if (ep.producer) {
    std::vector<NextHop> hops;
    if (auto* cur = node.fw->fib().find(ep.prefix)) {
      hops = *cur;
    }
    hops.push_back({face, 0});
    node.fw->fib().insert(ep.prefix, hops);
  }
  if (node.agent) {
    node.agent->setFacePeer(face, ep.locator);
  }
  ep.poa = poa;
  ep.link = id;
  ep.registered = false;
  uint64_t token = ++ep.token;
  if (m_cfg.strategy == Scheme::FastForwarding) {
    sendRegister(ep, token, 0);
  }
}

void
Simulation::detach(Endpoint& ep)
{
  if (!ep.poa) {
    return;
  }
  SimNode& node = *m_nodes[*ep.poa];
  Link& link = m_links[ep.link];
  link.up = false;
  FaceId face = link.side[0].face;
  node.faces.erase(face);
  node.fw->removeFace(face);
  node.fw->fib().erase(ep.locator);
  if (ep.producer) {
    if (auto* cur = node.fw->fib().find(ep.prefix)) {
      std::erase_if(*cur, [face] (const NextHop& nh) { return nh.face == face; });
    }
  }
  if (node.agent) {
    node.agent->clearFacePeer(face);
  }
  ep.poa.reset();
  ep.link = SIZE_MAX;
}

void
Simulation::handover(Endpoint& ep, size_t toPoa, bool interAs)
{
  if (interAs) {
    ++m_log.handoversInter;
  }
  else {
    ++m_log.handoversIntra;
  }
  detach(ep);
  uint64_t token = ++ep.token;
  Endpoint* e = &ep;
  Time at = m_queue.now() + fromSeconds(m_cfg.mobility.handoverLatencyMs / 1000.0);
  m_queue.schedule(at, [this, e, token, toPoa] {
    if (e->token == token) {
      attach(*e, toPoa);
    }
  });
}

void
Simulation::sendRegister(Endpoint& ep, uint64_t token, int attempt)
{
  if (ep.token != token || ep.registered || !ep.poa) {
    return;
  }
  int k = Topology::poaIndex(m_nodes[*ep.poa]->info.name);
  if (k < 0) {
    return;
  }
  Name entity = ep.producer ? ep.prefix : ep.locator;
  Name home({"As" + std::to_string(ep.homeAs)});
  Interest reg = makeRegister(entity, home, true, poaRegisterPrefix(k), m_nonceRng, m_plane.nextSeq());
  reg.body->consumer = !ep.producer;
  ep.pendingRegister = reg.name;
  m_plane.log(m_queue.now(), ep.locator, "REG", entity, m_nodes[*ep.poa]->locator, home);
  endpointSend(ep, std::move(reg));
  if (attempt < 3) {
    Endpoint* e = &ep;
    m_queue.schedule(m_queue.now() + fromSeconds(1.0), [this, e, token, attempt] {
      sendRegister(*e, token, attempt + 1);
    });
  }
}

void
Simulation::endpointSend(Endpoint& ep, std::variant<Interest, Data> packet)
{
  if (!ep.poa) {
    return;
  }
  transmit(ep.link, 1, std::move(packet));
}

void
Simulation::endpointReceive(Endpoint& ep, std::variant<Interest, Data>& packet)
{
  Time now = m_queue.now();
  if (auto* i = std::get_if<Interest>(&packet)) {
    logEvent(now, ep.name, "int_rx", i->name, i->nonce, 1);
    if (ep.producer && i->kind == MsgKind::DataRequest && ep.prefix.isPrefixOf(i->name)) {
      Data d;
      d.name = i->name;
      d.muTag = i->muTag;
      endpointSend(ep, std::move(d));
    }
    return;
  }
  const Data& d = std::get<Data>(packet);
  logEvent(now, ep.name, "data_rx", d.name, 0, 1);
  if (d.name == ep.pendingRegister) {
    ep.registered = true;
    return;
  }
  if (ep.producer || !ep.prefix.isPrefixOf(d.name)) {
    return;
  }
  int64_t seq = seqOf(d.name);
  if (seq < 0) {
    return;
  }
  auto it = ep.pending.find(static_cast<uint64_t>(seq));
  if (it == ep.pending.end()) {
    return;
  }
  ep.pending.erase(it);
  ++m_log.dataRxApp;
  ++m_consumer.received;
  m_consumer.delivered.insert(static_cast<uint64_t>(seq));
}

void
Simulation::consumerTick(Endpoint& ep)
{
  Time now = m_queue.now();
  Time period(static_cast<int64_t>(std::llround(1e9 / m_cfg.consumer.rateHz)));
  Endpoint* e = &ep;
  if (now + period < fromSeconds(m_cfg.durationS)) {
    m_queue.schedule(now + period, [this, e] { consumerTick(*e); });
  }

  while (!ep.timeouts.empty() && ep.timeouts.begin()->first <= now) {
    auto [deadline, seq] = *ep.timeouts.begin();
    ep.timeouts.erase(ep.timeouts.begin());
    auto it = ep.pending.find(seq);
    if (it == ep.pending.end() || it->second.deadline != deadline) {
      continue;
    }
    if (it->second.retries >= m_cfg.consumer.retries) {
      ++m_log.permanentLoss;
      ++m_consumer.losses;
      ep.pending.erase(it);
    }
    else {
      ep.due.push_back(seq);
    }
  }

  Time rto = fromSeconds(m_cfg.consumer.rtoS);
  uint64_t seq = 0;
  bool found = false;
  while (!ep.due.empty()) {
    seq = ep.due.front();
    ep.due.pop_front();
    auto it = ep.pending.find(seq);
    if (it != ep.pending.end()) {
      ++it->second.retries;
      it->second.deadline = now + rto;
      found = true;
      break;
    }
  }
  if (!found) {
    seq = ep.nextSeq++;
    ep.pending[seq] = {now + rto, 0};
    m_consumer.firstSent[seq] = now;
  }
  ep.timeouts.emplace(now + rto, seq);

  Interest i;
  i.name = ep.prefix;
  i.name.append("seq=" + std::to_string(seq));
  i.nonce = m_nonceRng();
  i.msTag = m_cfg.strategy == Scheme::FastForwarding;
  ++m_log.intTxApp;
  ++m_consumer.sent;
  endpointSend(ep, std::move(i));
}

// ---- logging and results ----

void
Simulation::logEvent(Time at, const std::string& node, const char* event, const Name& name, uint64_t nonce,
                     FaceId face)
{
  if (m_eventCb) {
    m_eventCb(EventRecord{at, node, event, name, nonce, face});
  }
  if (m_eventOs == nullptr) {
    return;
  }
  *m_eventOs << formatTime(at) << ',' << csvField(node) << ',' << event << ',' << csvField(name.toUri()) << ','
             << nonce << ',';
  if (face == INVALID_FACE) {
    *m_eventOs << '-';
  }
  else {
    *m_eventOs << face;
  }
  *m_eventOs << '\n';
}

void
Simulation::setEventStream(std::ostream* os)
{
  m_eventOs = os;
  if (os != nullptr) {
    *os << "time,node,event,name,nonce,face\n";
  }
}

void
Simulation::setControlStream(std::ostream* os)
{
  m_controlOs = os;
  if (os != nullptr) {
    *os << "time,actor,msg,prefix,locator,third\n";
  }
}

void
Simulation::runUntil(double seconds)
{
  m_queue.runUntil(fromSeconds(std::min(seconds, m_cfg.durationS + m_cfg.consumer.rtoS)));
}

MetricsLog
Simulation::run()
{
  // the consumer stops at the configured duration; replies still in flight get one RTO to land
  m_queue.runUntil(fromSeconds(m_cfg.durationS + m_cfg.consumer.rtoS));
  return metrics();
}

MetricsLog
Simulation::metrics() const
{
  MetricsLog log = m_log;
  auto& counters = const_cast<ControlPlane&>(m_plane).counters();
  log.controlMsgs = counters.controlMsgs;
  log.muDataCount = counters.muData;
  return log;
}

Forwarder&
Simulation::forwarder(const std::string& node)
{
  auto idx = m_topo.find(node);
  if (!idx) {
    throw std::out_of_range("no node '" + node + "'");
  }
  return *m_nodes[*idx]->fw;
}

LocalController&
Simulation::controller(int as)
{
  auto idx = m_topo.controllerOf(as);
  if (!idx || !m_nodes[*idx]->lc) {
    throw std::out_of_range("no controller for AS " + std::to_string(as));
  }
  return *m_nodes[*idx]->lc;
}

RouterAgent*
Simulation::agent(const std::string& node)
{
  auto idx = m_topo.find(node);
  if (!idx) {
    throw std::out_of_range("no node '" + node + "'");
  }
  return m_nodes[*idx]->agent.get();
}

std::string
Simulation::attachment(const std::string& endpoint) const
{
  for (const auto& ep : m_endpoints) {
    if (ep->name == endpoint) {
      return ep->poa ? m_topo.nodes()[*ep->poa].name : "";
    }
  }
  throw std::out_of_range("no endpoint '" + endpoint + "'");
}

const std::vector<Handover>&
Simulation::trace(const std::string& endpoint) const
{
  for (const auto& ep : m_endpoints) {
    if (ep->name == endpoint) {
      return ep->trace.handovers;
    }
  }
  throw std::out_of_range("no endpoint '" + endpoint + "'");
}

std::string
metricsJson(const MetricsLog& log)
{
  nlohmann::ordered_json j;
  j["strategy"] = log.strategy;
  j["topology"] = log.topology;
  j["mobility_level"] = log.mobilityLevel;
  j["seed"] = log.seed;
  j["throughput"] = log.intTxApp > 0 ? effectiveThroughput(log) : 0.0;
  j["interest_rate_hz"] = log.durationS > 0 ? interestRate(log) : 0.0;
  j["overhead_pct"] = log.dataHopTotal > 0 ? overheadRatio(log) : 0.0;
  j["handovers_intra"] = log.handoversIntra;
  j["handovers_inter"] = log.handoversInter;
  j["control_msgs"] = log.controlMsgs;
  j["mu_data_count"] = log.muDataCount;
  j["int_tx_total"] = log.intTxTotal;
  j["data_hop_total"] = log.dataHopTotal;
  j["control_data_hops"] = log.controlDataHops;
  j["int_tx_app"] = log.intTxApp;
  j["data_rx_app"] = log.dataRxApp;
  j["permanent_loss"] = log.permanentLoss;
  j["duration_s"] = log.durationS;
  return j.dump(2) + "\n";
}

} // namespace mobndn
