#ifndef MOBNDN_FORWARDER_HPP
#define MOBNDN_FORWARDER_HPP

#include "mobndn/pdu.hpp"
#include "mobndn/prefix-table.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>
#include <variant>

namespace mobndn {

struct NextHop
{
  FaceId face;
  uint32_t cost;
};

using Fib = PrefixTable<std::vector<NextHop>>;

struct FptEntry
{
  Name locator;
  std::optional<Time> expiresAt;
  /// Lifetime restored on each use when resetOnUse is set.
  Time lifetime{0};
  bool resetOnUse = false;
};

/// Fast Path Table. Timed entries disappear once their deadline passes.
class Fpt
{
public:
  using Table = PrefixTable<FptEntry>;

  void
  insert(const Name& prefix, FptEntry entry)
  {
    m_table.insert(prefix, std::move(entry));
  }

  bool
  erase(const Name& prefix)
  {
    return m_table.erase(prefix);
  }

  const FptEntry*
  find(const Name& prefix) const
  {
    return m_table.find(prefix);
  }

  Table::value_type*
  lookup(const Name& name, Time now);

  void
  purgeExpired(Time now);

  size_t
  size() const noexcept
  {
    return m_table.size();
  }

  const Table&
  table() const noexcept
  {
    return m_table;
  }

  /// One "prefix::locator" line per entry, in name order.
  std::vector<std::string>
  dump() const;

private:
  Table m_table;
};

class ContentStore
{
public:
  explicit
  ContentStore(size_t capacity = 100)
    : m_capacity(capacity)
  {
  }

  void
  insert(const Data& data);

  const Data*
  find(const Name& name) const;

  size_t
  size() const noexcept
  {
    return m_store.size();
  }

private:
  size_t m_capacity;
  std::map<Name, Data> m_store;
  std::deque<Name> m_order;
};

struct PitEntry
{
  Name name;
  std::vector<FaceId> inFaces;
  /// (nonce, label digest) pairs seen; a copy re-steered with a new label is not a duplicate.
  std::vector<std::pair<uint64_t, uint64_t>> seen;
  std::vector<FaceId> outFaces;
  Time expiry{0};
  uint64_t generation = 0;
  Interest interest;
  /// This node attached the forwarding label from its own FPT.
  bool labeledHere = false;
  Time labeledAt{0};
  Name mapping;

  bool
  hasInFace(FaceId f) const
  {
    return std::find(inFaces.begin(), inFaces.end(), f) != inFaces.end();
  }
};

/// Remembers (name, nonce) pairs of removed PIT entries so late copies are dropped.
class DeadNonceList
{
public:
  void
  add(const Name& name, uint64_t nonce, uint64_t labelDigest, Time until);

  bool
  has(const Name& name, uint64_t nonce, uint64_t labelDigest, Time now);

private:
  static uint64_t
  key(const Name& name, uint64_t nonce, uint64_t labelDigest);

  std::unordered_set<uint64_t> m_set;
  std::deque<std::pair<Time, uint64_t>> m_fifo;
};

enum class StrategyKind {
  BestRoute,
  Flooding,
  SemiFlooding,
};

const char*
toString(StrategyKind k);

class EmptyChoice : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct FaceInfo
{
  FaceId id;
  Role peerRole;
};

/** \brief Per-node forwarding strategy state.
 *
 *  SemiFlooding keeps one preferred face per FIB prefix, learned from Data
 *  arrivals. A face turns suspect when a PIT entry it served expires and
 *  stays suspect for the recovery window. A suspect preferred face, or an
 *  access node, falls back to flooding.
 */
class Strategy
{
public:
  Strategy(StrategyKind kind, Time suspectWindow)
    : m_kind(kind)
    , m_window(suspectWindow)
  {
  }

  StrategyKind
  kind() const noexcept
  {
    return m_kind;
  }

  /// Throws EmptyChoice when no face qualifies.
  std::vector<FaceId>
  chooseFaces(const Name& fibPrefix, const std::vector<NextHop>& fibMatch,
              const std::vector<FaceInfo>& faces, FaceId inFace, bool floodHere, Time now) const;

  void
  onData(const Name& fibPrefix, FaceId face);

  void
  onExpiry(FaceId face, Time now);

  bool
  isSuspect(FaceId face, Time now) const;

  std::optional<FaceId>
  preferredFace(const Name& fibPrefix) const;

private:
  StrategyKind m_kind;
  Time m_window;
  std::map<FaceId, Time> m_suspectUntil;
  std::map<Name, FaceId> m_preferred;
};

struct LocalTimeout
{
  Name name;
};

struct ForwardAction
{
  FaceId face;
  std::variant<Interest, Data, LocalTimeout> packet;
};

using Actions = std::vector<ForwardAction>;

class TimerService
{
public:
  virtual
  ~TimerService() = default;

  virtual void
  schedule(Time at, std::function<void(Time, Actions&)> fn) = 0;
};

class Forwarder;

/// Extension points for the mobility plane.
class ForwarderHooks
{
public:
  virtual
  ~ForwarderHooks() = default;

  /// Every new Interest before routing; may amend the packet.
  virtual void
  observeInterest(Interest&, FaceId, Time)
  {
  }

  /// Label head is a domain tag at an edge router. Rewrites the label;
  /// false means no route.
  virtual bool
  edgeForward(Interest& interest, Time now) = 0;

  struct ControlResult
  {
    enum Kind { Forward, Reply, Drop } kind = Drop;
    Data reply;
  };

  /// Control Interest whose label ended at this node.
  virtual ControlResult
  onControl(Interest& interest, FaceId inFace, Time now, Actions& out) = 0;

  /// MS-tagged Interest with no FPT match. True if the Interest was parked.
  virtual bool
  onResolutionMiss(PitEntry& entry, Time now, Actions& out) = 0;

  virtual void
  onData(PitEntry&, const Data&, FaceId, Time, Actions&)
  {
  }

  virtual void
  onPitExpiry(PitEntry&, Time, Actions&)
  {
  }
};

struct ForwarderConfig
{
  StrategyKind strategy = StrategyKind::BestRoute;
  Time pitLifetime = fromSeconds(2.0);
  size_t csCapacity = 100;
  Time suspectWindow = fromSeconds(5.0);
  /// Roles that always flood under SemiFlooding.
  std::set<Role> semiFloodRoles{Role::PoA};
  /// Flooding strategies skip faces towards these roles.
  std::set<Role> floodSkipRoles{};
};

struct ForwarderCounters
{
  uint64_t interestsIn = 0;
  uint64_t dataIn = 0;
  uint64_t csHits = 0;
  uint64_t duplicates = 0;
  uint64_t noRoute = 0;
  uint64_t aggregated = 0;
  uint64_t unsolicited = 0;
  uint64_t expired = 0;
  uint64_t fptHits = 0;
};

using EventSink = std::function<void(Time, const char* event, const Name&, uint64_t nonce, FaceId)>;

/** \brief Forwarding pipeline of one node: CS, PIT, label, FPT, FIB/strategy.
 *
 *  Results are returned as actions; the caller moves them onto links.
 */
class Forwarder
{
public:
  Forwarder(Name locator, Role role, ForwarderConfig config, TimerService& timers);

  const Name&
  locator() const noexcept
  {
    return m_locator;
  }

  Role
  role() const noexcept
  {
    return m_role;
  }

  void
  addFace(FaceId id, Role peerRole);

  void
  removeFace(FaceId id);

  const std::vector<FaceInfo>&
  faces() const noexcept
  {
    return m_faces;
  }

  void
  setHooks(ForwarderHooks* hooks)
  {
    m_hooks = hooks;
  }

  void
  setEventSink(EventSink sink)
  {
    m_sink = std::move(sink);
  }

  Actions
  onInterest(FaceId inFace, Interest interest, Time now);

  Actions
  onData(FaceId inFace, Data data, Time now);

  /// Send an Interest that already owns a PIT entry, starting from the label/FPT stage.
  /// With \p transit set the node does not act as the labelling service router.
  void
  forwardExisting(PitEntry& entry, Interest interest, Time now, Actions& out, bool transit = false);

  /// Install an FPT entry; timed entries get a purge timer.
  void
  installFpt(const Name& prefix, FptEntry entry, Time now);

  Fib&
  fib() noexcept
  {
    return m_fib;
  }

  Fpt&
  fpt() noexcept
  {
    return m_fpt;
  }

  std::map<Name, PitEntry>&
  pit() noexcept
  {
    return m_pit;
  }

  ContentStore&
  cs() noexcept
  {
    return m_cs;
  }

  Strategy&
  strategy() noexcept
  {
    return m_strategy;
  }

  const ForwarderCounters&
  counters() const noexcept
  {
    return m_counters;
  }

private:
  void
  route(PitEntry& entry, Interest interest, FaceId inFace, Time now, Actions& out, bool arrived = false);

  void
  routeByFib(PitEntry& entry, const Interest& interest, FaceId inFace, Time now, Actions& out);

  std::optional<FaceId>
  bestLocatorFace(const Name& locator, FaceId inFace);

  void
  satisfy(PitEntry& entry, const Data& data, FaceId inFace, Actions& out);

  void
  dropNoRoute(PitEntry& entry, const Interest& interest, FaceId inFace, Time now);

  void
  onPitTimer(const Name& name, uint64_t generation, Time now, Actions& out);

  void
  schedulePitTimer(const PitEntry& entry);

  void
  armFptPurge(const Name& prefix, Time at);

  void
  emit(Time now, const char* event, const Name& name, uint64_t nonce, FaceId face)
  {
    if (m_sink) {
      m_sink(now, event, name, nonce, face);
    }
  }

private:
  Name m_locator;
  Role m_role;
  ForwarderConfig m_config;
  TimerService& m_timers;
  ForwarderHooks* m_hooks = nullptr;
  EventSink m_sink;

  std::vector<FaceInfo> m_faces;
  Fib m_fib;
  Fpt m_fpt;
  std::map<Name, PitEntry> m_pit;
  ContentStore m_cs;
  DeadNonceList m_dnl;
  Strategy m_strategy;
  uint64_t m_generation = 0;
  ForwarderCounters m_counters;
};

uint64_t
labelDigest(const Interest& interest);

/// "/Remote:As<j>" tag naming a whole domain.
bool
isDomainTag(const Name& n);

/// AS number of "/Remote:As<j>" or "/As<j>"; -1 otherwise.
int
domainOf(const Name& n);

Name
domainTag(int as);

} // namespace mobndn

#endif // MOBNDN_FORWARDER_HPP
