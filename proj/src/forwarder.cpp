#include "mobndn/forwarder.hpp"

#include <charconv>

namespace mobndn {

bool
isDomainTag(const Name& n)
{
  return n.size() == 1 && n[0].rfind("Remote:As", 0) == 0;
}

int
domainOf(const Name& n)
{
  if (n.size() != 1) {
    return -1;
  }
  std::string_view c = n[0];
  if (c.rfind("Remote:", 0) == 0) {
    c.remove_prefix(7);
  }
  if (c.rfind("As", 0) != 0 || c.size() < 3) {
    return -1;
  }
  int v = -1;
  auto [p, ec] = std::from_chars(c.data() + 2, c.data() + c.size(), v);
  if (ec != std::errc() || p != c.data() + c.size()) {
    return -1;
  }
  return v;
}

Name
domainTag(int as)
{
  return Name({"Remote:As" + std::to_string(as)});
}

uint64_t
labelDigest(const Interest& interest)
{
  if (!interest.hasLabel()) {
    return 0;
  }
  uint64_t h = 1469598103934665603ULL;
  for (const auto& hop : interest.label->hops) {
    for (const auto& comp : hop) {
      for (unsigned char c : comp) {
        h = (h ^ c) * 1099511628211ULL;
      }
      h = (h ^ '/') * 1099511628211ULL;
    }
    h = (h ^ '|') * 1099511628211ULL;
  }
  return h == 0 ? 1 : h;
}

const char*
toString(StrategyKind k)
{
  switch (k) {
    case StrategyKind::BestRoute: return "bestroute";
    case StrategyKind::Flooding: return "flooding";
    case StrategyKind::SemiFlooding: return "semiflooding";
  }
  return "?";
}

// ---- Fpt ----

Fpt::Table::value_type*
Fpt::lookup(const Name& name, Time now)
{
  while (true) {
    auto* m = m_table.findLongestPrefixMatch(name);
    if (m == nullptr) {
      return nullptr;
    }
    if (m->second.expiresAt && *m->second.expiresAt <= now) {
      Name stale = m->first;
      m_table.erase(stale);
      continue;
    }
    return m;
  }
}

void
Fpt::purgeExpired(Time now)
{
  m_table.eraseIf([now] (const auto& kv) {
    return kv.second.expiresAt && *kv.second.expiresAt <= now;
  });
}

std::vector<std::string>
Fpt::dump() const
{
  std::vector<std::string> lines;
  for (const auto& [prefix, entry] : m_table) {
    lines.push_back(prefix.toUri() + "::" + entry.locator.toUri());
  }
  return lines;
}

// ---- ContentStore ----

void
ContentStore::insert(const Data& data)
{
  if (m_capacity == 0) {
    return;
  }
  auto it = m_store.find(data.name);
  if (it != m_store.end()) {
    it->second = data;
    return;
  }
  while (m_store.size() >= m_capacity) {
    m_store.erase(m_order.front());
    m_order.pop_front();
  }
  m_store.emplace(data.name, data);
  m_order.push_back(data.name);
}

const Data*
ContentStore::find(const Name& name) const
{
  auto it = m_store.find(name);
  return it == m_store.end() ? nullptr : &it->second;
}

// ---- DeadNonceList ----

uint64_t
DeadNonceList::key(const Name& name, uint64_t nonce, uint64_t labelDigest)
{
  uint64_t h = 1469598103934665603ULL;
  for (const auto& comp : name) {
    for (unsigned char c : comp) {
      h = (h ^ c) * 1099511628211ULL;
    }
    h = (h ^ '/') * 1099511628211ULL;
  }
  h ^= nonce + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= labelDigest + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

void
DeadNonceList::add(const Name& name, uint64_t nonce, uint64_t labelDigest, Time until)
{
  uint64_t k = key(name, nonce, labelDigest);
  if (m_set.insert(k).second) {
    m_fifo.emplace_back(until, k);
  }
}

bool
DeadNonceList::has(const Name& name, uint64_t nonce, uint64_t labelDigest, Time now)
{
  while (!m_fifo.empty() && m_fifo.front().first <= now) {
    m_set.erase(m_fifo.front().second);
    m_fifo.pop_front();
  }
  return m_set.count(key(name, nonce, labelDigest)) > 0;
}

// ---- Strategy ----

std::vector<FaceId>
Strategy::chooseFaces(const Name& fibPrefix, const std::vector<NextHop>& fibMatch,
                      const std::vector<FaceInfo>& faces, FaceId inFace, bool floodHere,
                      Time now) const
{
  auto floodAll = [&] {
    std::vector<FaceId> all;
    for (const auto& f : faces) {
      if (f.id != inFace) {
        all.push_back(f.id);
      }
    }
    return all;
  };

  std::vector<FaceId> chosen;
  switch (m_kind) {
    case StrategyKind::BestRoute: {
      const NextHop* best = nullptr;
      for (const auto& nh : fibMatch) {
        if (nh.face == inFace) {
          continue;
        }
        if (best == nullptr || nh.cost < best->cost || (nh.cost == best->cost && nh.face < best->face)) {
          best = &nh;
        }
      }
      if (best != nullptr) {
        chosen.push_back(best->face);
      }
      break;
    }
    case StrategyKind::Flooding:
      chosen = floodAll();
      break;
    case StrategyKind::SemiFlooding: {
      if (floodHere) {
        chosen = floodAll();
        break;
      }
      std::optional<FaceId> top;
      auto pref = preferredFace(fibPrefix);
      if (pref && *pref != inFace &&
          std::any_of(faces.begin(), faces.end(), [&] (const FaceInfo& f) { return f.id == *pref; })) {
        top = pref;
      }
      else {
        const NextHop* best = nullptr;
        for (const auto& nh : fibMatch) {
          if (nh.face == inFace) {
            continue;
          }
          if (best == nullptr || nh.cost < best->cost || (nh.cost == best->cost && nh.face < best->face)) {
            best = &nh;
          }
        }
        if (best != nullptr) {
          top = best->face;
        }
      }
      if (top && !isSuspect(*top, now)) {
        chosen.push_back(*top);
      }
      else {
        chosen = floodAll();
      }
      break;
    }
  }
  if (chosen.empty()) {
    throw EmptyChoice("no eligible face");
  }
  return chosen;
}

void
Strategy::onData(const Name& fibPrefix, FaceId face)
{
  m_suspectUntil.erase(face);
  if (m_kind == StrategyKind::SemiFlooding) {
    m_preferred[fibPrefix] = face;
  }
}

void
Strategy::onExpiry(FaceId face, Time now)
{
  m_suspectUntil[face] = now + m_window;
}

bool
Strategy::isSuspect(FaceId face, Time now) const
{
  auto it = m_suspectUntil.find(face);
  return it != m_suspectUntil.end() && it->second > now;
}

std::optional<FaceId>
Strategy::preferredFace(const Name& fibPrefix) const
{
  auto it = m_preferred.find(fibPrefix);
  if (it == m_preferred.end()) {
    return std::nullopt;
  }
  return it->second;
}

// ---- Forwarder ----

Forwarder::Forwarder(Name locator, Role role, ForwarderConfig config, TimerService& timers)
  : m_locator(std::move(locator))
  , m_role(role)
  , m_config(std::move(config))
  , m_timers(timers)
  , m_cs(m_config.csCapacity)
  , m_strategy(m_config.strategy, m_config.suspectWindow)
{
}

void
Forwarder::addFace(FaceId id, Role peerRole)
{
  m_faces.push_back({id, peerRole});
}

void
Forwarder::removeFace(FaceId id)
{
  std::erase_if(m_faces, [id] (const FaceInfo& f) { return f.id == id; });
}

Actions
Forwarder::onInterest(FaceId inFace, Interest interest, Time now)
{
  Actions out;
  ++m_counters.interestsIn;
  emit(now, "int_rx", interest.name, interest.nonce, inFace);

  if (interest.kind == MsgKind::DataRequest) {
    if (const Data* hit = m_cs.find(interest.name); hit != nullptr) {
      ++m_counters.csHits;
      emit(now, "cs_hit", interest.name, interest.nonce, inFace);
      out.push_back({inFace, *hit});
      return out;
    }
  }

  uint64_t digest = labelDigest(interest);
  if (m_dnl.has(interest.name, interest.nonce, digest, now)) {
    ++m_counters.duplicates;
    emit(now, "drop_dup", interest.name, interest.nonce, inFace);
    return out;
  }

  auto it = m_pit.find(interest.name);
  if (it != m_pit.end()) {
    PitEntry& e = it->second;
    std::pair<uint64_t, uint64_t> key{interest.nonce, digest};
    if (std::find(e.seen.begin(), e.seen.end(), key) != e.seen.end()) {
      ++m_counters.duplicates;
      emit(now, "drop_dup", interest.name, interest.nonce, inFace);
      return out;
    }
    e.seen.push_back(key);
    bool sameLabel = labelDigest(e.interest) == digest;
    if (!e.hasInFace(inFace)) {
      e.inFaces.push_back(inFace);
      if (sameLabel) {
        ++m_counters.aggregated;
        e.expiry = std::max(e.expiry, now + m_config.pitLifetime);
        return out;
      }
    }
    // retransmission from a known downstream, or a re-steered copy
    e.expiry = now + m_config.pitLifetime;
    if (m_hooks != nullptr) {
      m_hooks->observeInterest(interest, inFace, now);
    }
    e.interest = interest;
    route(e, std::move(interest), inFace, now, out);
    return out;
  }

  PitEntry& e = m_pit[interest.name];
  e.name = interest.name;
  e.inFaces.push_back(inFace);
  e.seen.emplace_back(interest.nonce, digest);
  e.expiry = now + m_config.pitLifetime;
  e.generation = ++m_generation;
  schedulePitTimer(e);
  if (m_hooks != nullptr) {
    m_hooks->observeInterest(interest, inFace, now);
  }
  e.interest = interest;
  route(e, std::move(interest), inFace, now, out);
  return out;
}

void
Forwarder::forwardExisting(PitEntry& entry, Interest interest, Time now, Actions& out, bool transit)
{
  std::pair<uint64_t, uint64_t> key{interest.nonce, labelDigest(interest)};
  if (std::find(entry.seen.begin(), entry.seen.end(), key) == entry.seen.end()) {
    entry.seen.push_back(key);
  }
  route(entry, std::move(interest), APP_FACE, now, out, transit);
}

std::optional<FaceId>
Forwarder::bestLocatorFace(const Name& locator, FaceId)
{
  auto* m = m_fib.findLongestPrefixMatch(locator);
  if (m == nullptr) {
    return std::nullopt;
  }
  const NextHop* best = nullptr;
  for (const auto& nh : m->second) {
    if (best == nullptr || nh.cost < best->cost || (nh.cost == best->cost && nh.face < best->face)) {
      best = &nh;
    }
  }
  if (best == nullptr) {
    return std::nullopt;
  }
  return best->face;
}

void
Forwarder::route(PitEntry& entry, Interest interest, FaceId inFace, Time now, Actions& out, bool arrived)
{
  while (true) {
    // label stage
    while (interest.hasLabel()) {
      const Name& head = interest.label->hops.front();
      if (head == m_locator) {
        interest = popLabelHop(std::move(interest)).second;
        arrived = true;
        continue;
      }
      if (isDomainTag(head)) {
        if (m_role == Role::EdgeRouter && m_hooks != nullptr) {
          if (!m_hooks->edgeForward(interest, now)) {
            dropNoRoute(entry, interest, inFace, now);
            return;
          }
          if (!interest.hasLabel()) {
            arrived = true;
          }
          continue;
        }
        auto* m = m_fpt.lookup(head, now);
        if (m == nullptr) {
          dropNoRoute(entry, interest, inFace, now);
          return;
        }
        interest.label->hops.insert(interest.label->hops.begin(), m->second.locator);
        continue;
      }
      auto face = bestLocatorFace(head, inFace);
      if (!face) {
        dropNoRoute(entry, interest, inFace, now);
        return;
      }
      if (std::find(entry.outFaces.begin(), entry.outFaces.end(), *face) == entry.outFaces.end()) {
        entry.outFaces.push_back(*face);
      }
      out.push_back({*face, std::move(interest)});
      return;
    }

    if (interest.kind != MsgKind::DataRequest && arrived && m_hooks != nullptr) {
      auto result = m_hooks->onControl(interest, inFace, now, out);
      if (result.kind == ForwarderHooks::ControlResult::Forward) {
        arrived = false;
        if (interest.hasLabel()) {
          continue;
        }
        break;
      }
      if (result.kind == ForwarderHooks::ControlResult::Reply) {
        satisfy(entry, result.reply, APP_FACE, out);
        return;
      }
      m_pit.erase(entry.name);
      return;
    }

    if (interest.kind == MsgKind::DataRequest && interest.msTag && m_hooks != nullptr) {
      auto* m = m_fpt.lookup(interest.name, now);
      if (m != nullptr) {
        ++m_counters.fptHits;
        if (m->second.resetOnUse) {
          m->second.expiresAt = now + m->second.lifetime;
        }
        if (m_role == Role::ServiceRouter && !arrived) {
          entry.labeledHere = true;
          entry.labeledAt = now;
          entry.mapping = m->second.locator;
        }
        interest.label = ForwardingLabel{{m->second.locator}};
        arrived = false;
        continue;
      }
      if (m_role == Role::ServiceRouter && !arrived) {
        if (m_hooks->onResolutionMiss(entry, now, out)) {
          return;
        }
      }
    }
    break;
  }
  routeByFib(entry, interest, inFace, now, out);
}

void
Forwarder::routeByFib(PitEntry& entry, const Interest& interest, FaceId inFace, Time now, Actions& out)
{
  auto* m = m_fib.findLongestPrefixMatch(interest.name);
  static const std::vector<NextHop> none;
  const auto& hops = m ? m->second : none;
  Name fibPrefix = m ? m->first : Name();

  std::vector<FaceInfo> candidates;
  if (m_strategy.kind() == StrategyKind::BestRoute) {
    candidates = m_faces;
  }
  else {
    for (const auto& f : m_faces) {
      if (m_config.floodSkipRoles.count(f.peerRole) == 0) {
        candidates.push_back(f);
      }
    }
  }

  std::vector<FaceId> chosen;
  try {
    bool floodHere = m_config.semiFloodRoles.count(m_role) > 0;
    chosen = m_strategy.chooseFaces(fibPrefix, hops, candidates, inFace, floodHere, now);
  }
  catch (const EmptyChoice&) {
    dropNoRoute(entry, interest, inFace, now);
    return;
  }
  for (size_t k = 0; k < chosen.size(); ++k) {
    FaceId f = chosen[k];
    if (std::find(entry.outFaces.begin(), entry.outFaces.end(), f) == entry.outFaces.end()) {
      entry.outFaces.push_back(f);
    }
    out.push_back({f, interest});
  }
}

void
Forwarder::dropNoRoute(PitEntry& entry, const Interest& interest, FaceId inFace, Time now)
{
  ++m_counters.noRoute;
  emit(now, "drop_noroute", interest.name, interest.nonce, inFace);
  if (entry.outFaces.empty()) {
    m_pit.erase(entry.name);
  }
}

void
Forwarder::satisfy(PitEntry& entry, const Data& data, FaceId inFace, Actions& out)
{
  for (FaceId f : entry.inFaces) {
    if (f != inFace || f == APP_FACE) {
      out.push_back({f, data});
    }
  }
  for (const auto& [nonce, digest] : entry.seen) {
    m_dnl.add(entry.name, nonce, digest, entry.expiry);
  }
  m_pit.erase(entry.name);
}

Actions
Forwarder::onData(FaceId inFace, Data data, Time now)
{
  Actions out;
  ++m_counters.dataIn;
  emit(now, "data_rx", data.name, 0, inFace);
  auto it = m_pit.find(data.name);
  if (it == m_pit.end()) {
    ++m_counters.unsolicited;
    return out;
  }
  PitEntry& e = it->second;
  if (inFace != APP_FACE) {
    auto* m = m_fib.findLongestPrefixMatch(data.name);
    m_strategy.onData(m ? m->first : Name(), inFace);
  }
  if (m_hooks != nullptr) {
    m_hooks->onData(e, data, inFace, now, out);
  }
  if (e.interest.kind == MsgKind::DataRequest) {
    m_cs.insert(data);
  }
  for (FaceId f : e.inFaces) {
    if (f != inFace) {
      out.push_back({f, data});
    }
  }
  for (const auto& [nonce, digest] : e.seen) {
    m_dnl.add(e.name, nonce, digest, e.expiry);
  }
  m_pit.erase(it);
  return out;
}

void
Forwarder::schedulePitTimer(const PitEntry& entry)
{
  Name name = entry.name;
  uint64_t gen = entry.generation;
  m_timers.schedule(entry.expiry, [this, name, gen] (Time now, Actions& out) {
    onPitTimer(name, gen, now, out);
  });
}

void
Forwarder::onPitTimer(const Name& name, uint64_t generation, Time now, Actions& out)
{
  auto it = m_pit.find(name);
  if (it == m_pit.end() || it->second.generation != generation) {
    return;
  }
  PitEntry& e = it->second;
  if (e.expiry > now) {
    schedulePitTimer(e);
    return;
  }
  ++m_counters.expired;
  emit(now, "pit_expire", e.name, e.interest.nonce, INVALID_FACE);
  for (FaceId f : e.outFaces) {
    m_strategy.onExpiry(f, now);
  }
  if (m_hooks != nullptr) {
    m_hooks->onPitExpiry(e, now, out);
  }
  if (e.hasInFace(APP_FACE)) {
    out.push_back({APP_FACE, LocalTimeout{e.name}});
  }
  for (const auto& [nonce, digest] : e.seen) {
    m_dnl.add(e.name, nonce, digest, now + m_config.pitLifetime);
  }
  m_pit.erase(it);
}

void
Forwarder::installFpt(const Name& prefix, FptEntry entry, Time)
{
  std::optional<Time> at = entry.expiresAt;
  m_fpt.insert(prefix, std::move(entry));
  if (at) {
    armFptPurge(prefix, *at);
  }
}

void
Forwarder::armFptPurge(const Name& prefix, Time at)
{
  m_timers.schedule(at, [this, prefix] (Time now, Actions&) {
    const FptEntry* e = m_fpt.find(prefix);
    if (e == nullptr || !e->expiresAt) {
      return;
    }
    if (*e->expiresAt <= now) {
      m_fpt.erase(prefix);
    }
    else {
      armFptPurge(prefix, *e->expiresAt);
    }
  });
}

} // namespace mobndn
