#ifndef MOBNDN_SIMULATION_HPP
#define MOBNDN_SIMULATION_HPP

#include "mobndn/metrics.hpp"
#include "mobndn/mobility-plane.hpp"
#include "mobndn/mobility.hpp"
#include "mobndn/scenario-config.hpp"

#include <iosfwd>
#include <memory>
#include <queue>
#include <set>

namespace mobndn {

/// Time-ordered event queue; equal times run in insertion order.
class EventQueue
{
public:
  void
  schedule(Time at, std::function<void()> fn);

  /// Runs every event with time < \p end.
  void
  runUntil(Time end);

  Time
  now() const noexcept
  {
    return m_now;
  }

  size_t
  size() const noexcept
  {
    return m_heap.size();
  }

  uint64_t
  executed() const noexcept
  {
    return m_executed;
  }

private:
  struct Event
  {
    Time at;
    uint64_t seq;
    std::function<void()> fn;
  };

  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const noexcept
    {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> m_heap;
  Time m_now{0};
  uint64_t m_seq = 0;
  uint64_t m_executed = 0;
};

struct EventRecord
{
  Time at;
  const std::string& node;
  const char* event;
  const Name& name;
  uint64_t nonce;
  FaceId face;
};

struct ConsumerStats
{
  uint64_t sent = 0;
  uint64_t received = 0;
  uint64_t losses = 0;
  std::map<uint64_t, Time> firstSent;
  std::set<uint64_t> delivered;
};

/** \brief One scenario: topology, forwarders, mobility plane, endpoints.
 *
 *  Deterministic for a fixed configuration and seed.
 */
class Simulation
{
public:
  /// Throws ConfigError.
  explicit
  Simulation(ScenarioConfig config);

  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// CSV sinks; header lines are written immediately.
  void
  setEventStream(std::ostream* os);

  void
  setControlStream(std::ostream* os);

  void
  setEventCallback(std::function<void(const EventRecord&)> cb)
  {
    m_eventCb = std::move(cb);
  }

  void
  runUntil(double seconds);

  /// Runs the consumer for the configured duration, then drains for one RTO.
  MetricsLog
  run();

  MetricsLog
  metrics() const;

  Time
  now() const noexcept
  {
    return m_queue.now();
  }

  const ScenarioConfig&
  config() const noexcept
  {
    return m_cfg;
  }

  const Topology&
  topology() const noexcept
  {
    return m_topo;
  }

  Forwarder&
  forwarder(const std::string& node);

  LocalController&
  controller(int as);

  RouterAgent*
  agent(const std::string& node);

  ControlPlane&
  plane() noexcept
  {
    return m_plane;
  }

  const ConsumerStats&
  consumerStats() const noexcept
  {
    return m_consumer;
  }

  /// PoA name the endpoint is attached to; empty during a blackout.
  std::string
  attachment(const std::string& endpoint) const;

  const std::vector<Handover>&
  trace(const std::string& endpoint) const;

  uint64_t
  eventsExecuted() const noexcept
  {
    return m_queue.executed();
  }

private:
  struct SimNode;
  struct Endpoint;
  struct Link;
  class NodeTimers;

  void
  buildNodes();

  void
  buildRoutes();

  void
  buildFpt();

  void
  buildEndpoints();

  void
  transmit(size_t linkId, int fromSide, std::variant<Interest, Data> packet);

  void
  deliver(size_t linkId, int toSide, std::variant<Interest, Data>& packet);

  void
  dispatch(size_t node, Actions& actions);

  void
  deliverLocal(size_t node, ForwardAction action);

  void
  attach(Endpoint& ep, size_t poa);

  void
  detach(Endpoint& ep);

  void
  handover(Endpoint& ep, size_t toPoa, bool interAs);

  void
  sendRegister(Endpoint& ep, uint64_t token, int attempt);

  void
  endpointSend(Endpoint& ep, std::variant<Interest, Data> packet);

  void
  endpointReceive(Endpoint& ep, std::variant<Interest, Data>& packet);

  void
  consumerTick(Endpoint& ep);

  void
  logEvent(Time at, const std::string& node, const char* event, const Name& name, uint64_t nonce, FaceId face);

private:
  ScenarioConfig m_cfg;
  Topology m_topo;
  EventQueue m_queue;
  ControlPlane m_plane;
  std::vector<std::unique_ptr<SimNode>> m_nodes;
  std::vector<Link> m_links;
  std::vector<std::unique_ptr<Endpoint>> m_endpoints;
  std::mt19937_64 m_nonceRng;
  MetricsLog m_log;
  ConsumerStats m_consumer;
  std::ostream* m_eventOs = nullptr;
  std::ostream* m_controlOs = nullptr;
  std::function<void(const EventRecord&)> m_eventCb;
};

/// Writes metrics.json content.
std::string
metricsJson(const MetricsLog& log);

} // namespace mobndn

#endif // MOBNDN_SIMULATION_HPP
