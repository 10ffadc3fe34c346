#ifndef MOBNDN_MOBILITY_PLANE_HPP
#define MOBNDN_MOBILITY_PLANE_HPP

#include "mobndn/forwarder.hpp"

#include <map>

namespace mobndn {

/// L-DB row: "prefix::locator[::third]".
struct LdbEntry
{
  Name prefix;
  Name locator;
  std::optional<Name> third;

  std::string
  toString() const;

  /// Throws Name::Error on malformed input.
  static LdbEntry
  parse(const std::string& s);

  friend bool
  operator==(const LdbEntry&, const LdbEntry&) = default;
};

Name
controllerPrefix(int as);

Name
poaRegisterPrefix(int poaIndex);

/// Home binding "/As<h>" or "/Home:As<h>" to h; -1 if not of that form.
int
homeAsOf(const Name& binding);

Name
homeTag(int as);

struct MobilityTimers
{
  Time fptFlush = fromSeconds(5.0);
  Time rupdTimeout = fromSeconds(10.0);
  /// How long a failed resolution sends an SR's Interests down the FIB path.
  Time negativeCache = fromSeconds(1.0);
  /// Lifetime of mappings a controller learned from its peers.
  Time homeCache = fromSeconds(600.0);
  /// Idle lifetime of mappings a service router learned by resolution.
  Time resolvedIdle = fromSeconds(10.0);
  size_t rwlCapacity = 256;
};

struct MobilityCounters
{
  uint64_t controlMsgs = 0;
  uint64_t muData = 0;
  uint64_t forcedRreq = 0;
  uint64_t rreqSent = 0;
  uint64_t nacks = 0;
  uint64_t rwlOverflow = 0;
  uint64_t redirected = 0;
  uint64_t erMislabel = 0;
  uint64_t unknownHome = 0;
};

using ControlSink = std::function<void(Time, const Name& actor, const char* msg, const Name& prefix,
                                       const std::optional<Name>& locator, const std::optional<Name>& third)>;

/// State shared by all mobility-plane actors of one simulation.
class ControlPlane
{
public:
  ControlPlane(MobilityTimers timers, uint64_t seed)
    : m_timers(timers)
    , m_rng(seed)
  {
  }

  uint64_t
  nextSeq()
  {
    return ++m_seq;
  }

  uint64_t
  nextNonce()
  {
    return m_rng();
  }

  std::mt19937_64&
  rng()
  {
    return m_rng;
  }

  const MobilityTimers&
  timers() const noexcept
  {
    return m_timers;
  }

  MobilityCounters&
  counters() noexcept
  {
    return m_counters;
  }

  void
  setSink(ControlSink sink)
  {
    m_sink = std::move(sink);
  }

  void
  log(Time now, const Name& actor, const char* msg, const Name& prefix,
      const std::optional<Name>& locator = std::nullopt, const std::optional<Name>& third = std::nullopt);

  /// Control Interest "<base>/<verb>/<prefix...>/c=<seq>".
  Interest
  makeControl(const Name& base, const char* verb, MsgKind kind, ControlBody body);

private:
  MobilityTimers m_timers;
  std::mt19937_64 m_rng;
  uint64_t m_seq = 0;
  MobilityCounters m_counters;
  ControlSink m_sink;
};

/// Waiting requests for one entity prefix.
struct RwlRecord
{
  bool outstanding = false;
  std::vector<Name> waiting;
  Time negativeUntil{0};
  size_t expected = 0;
  size_t negatives = 0;
  /// Last successful resolution; older labels cannot force another one.
  Time resolvedAt{-1};
};

/** \brief In-network behaviour of PoAs, service routers and edge routers.
 *
 *  Installed as forwarder hooks; Data and timeouts addressed to the local
 *  face reach onLocalData and onLocalTimeout.
 */
class RouterAgent : public ForwarderHooks
{
public:
  RouterAgent(Forwarder& fw, int as, ControlPlane& plane);

  /// Endpoint or PoA reachable over a face; used to learn registration locators.
  void
  setFacePeer(FaceId face, const Name& locator)
  {
    m_facePeer[face] = locator;
  }

  void
  clearFacePeer(FaceId face)
  {
    m_facePeer.erase(face);
  }

  void
  observeInterest(Interest& interest, FaceId inFace, Time now) override;

  bool
  edgeForward(Interest& interest, Time now) override;

  ControlResult
  onControl(Interest& interest, FaceId inFace, Time now, Actions& out) override;

  bool
  onResolutionMiss(PitEntry& entry, Time now, Actions& out) override;

  void
  onData(PitEntry& entry, const Data& data, FaceId inFace, Time now, Actions& out) override;

  void
  onPitExpiry(PitEntry& entry, Time now, Actions& out) override;

  void
  onLocalData(const Data& data, Time now, Actions& out);

  void
  onLocalTimeout(const Name& name, Time now, Actions& out);

  const std::map<Name, RwlRecord>&
  rwl() const noexcept
  {
    return m_rwl;
  }

private:
  void
  sendRreq(const Name& prefix, bool forced, Time now, Actions& out);

  void
  resolveFailed(const Name& prefix, Time now, Actions& out);

  void
  releaseWaiting(const Name& prefix, Time now, Actions& out);

  void
  redirectPending(const Name& prefix, const Name& target, Time now, Actions& out);

  /// Forced re-resolution after a labelled Interest failed or met a mislabel.
  void
  maybeForceRreq(const PitEntry& entry, Time now, Actions& out);

private:
  struct PendingRegistration
  {
    Name entity;
    Name via;
    bool ms;
  };

  Forwarder& m_fw;
  int m_as;
  ControlPlane& m_plane;
  std::map<FaceId, Name> m_facePeer;
  std::map<Name, PendingRegistration> m_pendingReg;
  std::map<Name, RwlRecord> m_rwl;
  std::map<Name, Name> m_rreqPrefix;
};

struct ControllerSetup
{
  int as = 0;
  std::vector<Name> serviceRouters;
  std::vector<Name> edgeRouters;
  std::vector<int> peers;
  /// Egress edge router of this AS towards each other AS.
  std::map<int, Name> egress;
};

/** \brief Local Controller: owns the L-DB of one AS and runs the
 *  registration, handover and resolution procedures.
 */
class LocalController
{
public:
  LocalController(Forwarder& fw, ControllerSetup setup, ControlPlane& plane);

  void
  onInterest(const Interest& interest, Time now, Actions& out);

  void
  onLocalData(const Data& data, Time now, Actions& out);

  void
  onLocalTimeout(const Name& name, Time now, Actions& out);

  const PrefixTable<LdbEntry>&
  ldb() const noexcept
  {
    return m_ldb;
  }

  std::vector<std::string>
  dumpLdb() const;

  const Name&
  prefix() const noexcept
  {
    return m_prefix;
  }

private:
  void
  onRegister(const Interest& interest, Time now, Actions& out);

  void
  onHreg(const Interest& interest, Time now, Actions& out);

  void
  onFreg(const Interest& interest, Time now, Actions& out);

  void
  onRreq(const Interest& interest, Time now, Actions& out);

  /// Tell the old service router and, for producers, every local edge router
  /// that the entity now lives behind \p target.
  void
  flushLocal(const Name& entity, const Name& oldSr, const Name& target, bool consumer,
             Time now, Actions& out);

  void
  reply(const Name& name, const std::string& payload, bool nack, Time now, Actions& out);

  void
  send(Interest interest, const char* msg, Time now, Actions& out);

  std::string
  replyForRouter(const LdbEntry& entry) const;

  bool
  isLocalSr(const Name& locator) const;

  void
  finishQuery(const Name& entity, Time now, Actions& out);

private:
  Forwarder& m_fw;
  ControllerSetup m_setup;
  ControlPlane& m_plane;
  Name m_prefix;
  PrefixTable<LdbEntry> m_ldb;
  std::map<Name, Time> m_cacheExpiry;
  std::map<Name, RwlRecord> m_rwl;
  std::map<Name, Name> m_queryPrefix;
};

} // namespace mobndn

#endif // MOBNDN_MOBILITY_PLANE_HPP
