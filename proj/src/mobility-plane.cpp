#include "mobndn/mobility-plane.hpp"

#include <charconv>

namespace mobndn {

namespace {

const char* const NACK = "NACK";

int
parseAsSuffix(std::string_view c)
{
  if (c.rfind("As", 0) != 0 || c.size() < 3) {
    return -1;
  }
  int v = -1;
  auto [p, ec] = std::from_chars(c.data() + 2, c.data() + c.size(), v);
  return (ec == std::errc() && p == c.data() + c.size()) ? v : -1;
}

Data
makeAck(const Name& name, const Name& entity)
{
  Data d;
  d.name = name;
  d.payload = entity.toUri();
  return d;
}

void
append(Actions& out, Actions more)
{
  for (auto& a : more) {
    out.push_back(std::move(a));
  }
}

} // namespace

std::string
LdbEntry::toString() const
{
  std::string s = prefix.toUri() + "::" + locator.toUri();
  if (third) {
    s += "::" + third->toUri();
  }
  return s;
}

LdbEntry
LdbEntry::parse(const std::string& s)
{
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    size_t next = s.find("::", pos);
    parts.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) {
      break;
    }
    pos = next + 2;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw Name::Error("expected prefix::locator[::third], got '" + s + "'");
  }
  LdbEntry e;
  e.prefix = Name::parse(parts[0]);
  e.locator = Name::parse(parts[1]);
  if (parts.size() == 3) {
    e.third = Name::parse(parts[2]);
  }
  return e;
}

Name
controllerPrefix(int as)
{
  return Name({"LocalController:As" + std::to_string(as)});
}

Name
poaRegisterPrefix(int poaIndex)
{
  return Name({"PoA" + std::to_string(poaIndex), "Reg"});
}

int
homeAsOf(const Name& binding)
{
  if (binding.empty()) {
    return -1;
  }
  std::string_view c = binding[0];
  if (c.rfind("Home:", 0) == 0) {
    c.remove_prefix(5);
  }
  return parseAsSuffix(c);
}

Name
homeTag(int as)
{
  return Name({"Home:As" + std::to_string(as)});
}

// ---- ControlPlane ----

void
ControlPlane::log(Time now, const Name& actor, const char* msg, const Name& prefix,
                  const std::optional<Name>& locator, const std::optional<Name>& third)
{
  std::string_view m = msg;
  if (m != "ACK" && m != "NACK") {
    ++m_counters.controlMsgs;
  }
  if (m_sink) {
    m_sink(now, actor, msg, prefix, locator, third);
  }
}

Interest
ControlPlane::makeControl(const Name& base, const char* verb, MsgKind kind, ControlBody body)
{
  Interest i;
  i.name = base;
  i.name.append(verb).append(body.entityPrefix).append("c=" + std::to_string(nextSeq()));
  i.nonce = nextNonce();
  i.kind = kind;
  i.msTag = true;
  i.body = std::move(body);
  return i;
}

// ---- RouterAgent ----

RouterAgent::RouterAgent(Forwarder& fw, int as, ControlPlane& plane)
  : m_fw(fw)
  , m_as(as)
  , m_plane(plane)
{
}

void
RouterAgent::observeInterest(Interest& interest, FaceId inFace, Time)
{
  if (interest.kind != MsgKind::Register || !interest.body) {
    return;
  }
  Role role = m_fw.role();
  if (role != Role::PoA && role != Role::ServiceRouter) {
    return;
  }
  auto peer = m_facePeer.find(inFace);
  if (peer == m_facePeer.end()) {
    return;
  }
  m_pendingReg[interest.name] = {interest.body->entityPrefix, peer->second, interest.msTag};
  if (role == Role::ServiceRouter && !interest.body->locator) {
    interest.body->locator = m_fw.locator();
  }
}

bool
RouterAgent::edgeForward(Interest& interest, Time now)
{
  auto& hops = interest.label->hops;
  int target = domainOf(hops.front());
  if (target == m_as) {
    auto* m = m_fw.fpt().lookup(interest.name, now);
    if (m == nullptr) {
      return false;
    }
    if (isDomainTag(m->second.locator)) {
      // stale label: the entity left this AS; bounce it on and flag the consumer
      ++m_plane.counters().erMislabel;
      if (m->second.resetOnUse) {
        FptEntry refreshed = m->second;
        refreshed.expiresAt = now + refreshed.lifetime;
        // assignment keeps the map node, so m stays valid
        m_fw.installFpt(Name(m->first), refreshed, now);
      }
      hops.front() = m->second.locator;
      interest.muTag = true;
      return true;
    }
    hops.front() = m->second.locator;
    return true;
  }
  const FptEntry* next = m_fw.fpt().find(hops.front());
  if (next == nullptr) {
    return false;
  }
  hops.insert(hops.begin(), next->locator);
  return true;
}

ForwarderHooks::ControlResult
RouterAgent::onControl(Interest& interest, FaceId, Time now, Actions& out)
{
  ControlResult r;
  if (!interest.body) {
    return r;
  }
  const ControlBody& b = *interest.body;
  Role role = m_fw.role();
  switch (interest.kind) {
    case MsgKind::RUpd:
      if (role != Role::EdgeRouter || !b.locator) {
        return r;
      }
      m_fw.installFpt(b.entityPrefix, FptEntry{*b.locator}, now);
      break;
    case MsgKind::RUpdTimeout: {
      if (role != Role::EdgeRouter || !b.locator) {
        return r;
      }
      Time lifetime = b.timeout.value_or(m_plane.timers().rupdTimeout);
      m_fw.installFpt(b.entityPrefix, FptEntry{*b.locator, now + lifetime, lifetime, true}, now);
      break;
    }
    case MsgKind::FReg: {
      if (role == Role::PoA) {
        m_fw.fpt().erase(b.entityPrefix);
        break;
      }
      if (role != Role::ServiceRouter || !b.locator) {
        return r;
      }
      std::optional<FptEntry> old;
      if (const FptEntry* e = m_fw.fpt().find(b.entityPrefix)) {
        old = *e;
      }
      Time expires = now + m_plane.timers().fptFlush;
      m_fw.installFpt(b.entityPrefix, FptEntry{*b.locator, expires}, now);
      redirectPending(b.entityPrefix, *b.locator, now, out);
      if (old && old->locator != *b.locator && !isDomainTag(old->locator)) {
        interest.label = ForwardingLabel{{old->locator}};
        r.kind = ControlResult::Forward;
        return r;
      }
      break;
    }
    default:
      return r;
  }
  m_plane.log(now, m_fw.locator(), "ACK", b.entityPrefix, b.locator);
  r.kind = ControlResult::Reply;
  r.reply = makeAck(interest.name, b.entityPrefix);
  return r;
}

void
RouterAgent::redirectPending(const Name& prefix, const Name& target, Time now, Actions& out)
{
  std::vector<Name> names;
  for (const auto& [name, e] : m_fw.pit()) {
    if (e.interest.kind == MsgKind::DataRequest && !e.labeledHere && prefix.isPrefixOf(name)) {
      names.push_back(name);
    }
  }
  for (const auto& name : names) {
    auto it = m_fw.pit().find(name);
    if (it == m_fw.pit().end()) {
      continue;
    }
    Interest copy = it->second.interest;
    copy.label.reset();
    if (isDomainTag(target)) {
      copy.muTag = true;
    }
    ++m_plane.counters().redirected;
    m_fw.forwardExisting(it->second, std::move(copy), now, out, true);
  }
}

bool
RouterAgent::onResolutionMiss(PitEntry& entry, Time now, Actions& out)
{
  if (entry.name.size() < 2) {
    return false;
  }
  Name prefix = entry.name.getPrefix(-1);
  RwlRecord& rec = m_rwl[prefix];
  if (rec.negativeUntil > now) {
    return false;
  }
  if (std::find(rec.waiting.begin(), rec.waiting.end(), entry.name) == rec.waiting.end()) {
    if (rec.waiting.size() >= m_plane.timers().rwlCapacity) {
      ++m_plane.counters().rwlOverflow;
      return false;
    }
    rec.waiting.push_back(entry.name);
  }
  if (!rec.outstanding) {
    sendRreq(prefix, false, now, out);
  }
  return true;
}

void
RouterAgent::sendRreq(const Name& prefix, bool forced, Time now, Actions& out)
{
  ControlBody body;
  body.entityPrefix = prefix;
  body.locator = m_fw.locator();
  Interest rreq = m_plane.makeControl(controllerPrefix(m_as), "Rreq", MsgKind::RReq, std::move(body));
  rreq.muTag = forced;
  m_rwl[prefix].outstanding = true;
  m_rreqPrefix[rreq.name] = prefix;
  ++m_plane.counters().rreqSent;
  if (forced) {
    ++m_plane.counters().forcedRreq;
  }
  m_plane.log(now, m_fw.locator(), "RREQ", prefix, m_fw.locator());
  append(out, m_fw.onInterest(APP_FACE, std::move(rreq), now));
}

void
RouterAgent::onData(PitEntry& entry, const Data& data, FaceId, Time now, Actions& out)
{
  if (entry.interest.kind == MsgKind::Register) {
    auto it = m_pendingReg.find(entry.name);
    if (it != m_pendingReg.end()) {
      if (it->second.ms && data.payload != NACK) {
        m_fw.installFpt(it->second.entity, FptEntry{it->second.via}, now);
      }
      m_pendingReg.erase(it);
    }
    return;
  }
  if (m_fw.role() != Role::ServiceRouter || entry.interest.kind != MsgKind::DataRequest ||
      !entry.labeledHere || !data.muTag) {
    return;
  }
  ++m_plane.counters().muData;
  maybeForceRreq(entry, now, out);
}

void
RouterAgent::maybeForceRreq(const PitEntry& entry, Time now, Actions& out)
{
  Name prefix = entry.name.getPrefix(-1);
  RwlRecord& rec = m_rwl[prefix];
  if (rec.outstanding || entry.labeledAt < rec.resolvedAt) {
    return;
  }
  const FptEntry* cur = m_fw.fpt().find(prefix);
  if (cur != nullptr && cur->locator != entry.mapping) {
    return;
  }
  sendRreq(prefix, true, now, out);
}

void
RouterAgent::onPitExpiry(PitEntry& entry, Time now, Actions& out)
{
  if (m_fw.role() != Role::ServiceRouter || entry.interest.kind != MsgKind::DataRequest ||
      !entry.labeledHere) {
    return;
  }
  maybeForceRreq(entry, now, out);
}

void
RouterAgent::onLocalData(const Data& data, Time now, Actions& out)
{
  auto it = m_rreqPrefix.find(data.name);
  if (it == m_rreqPrefix.end()) {
    return;
  }
  Name prefix = it->second;
  m_rreqPrefix.erase(it);
  if (data.payload == NACK) {
    resolveFailed(prefix, now, out);
    return;
  }
  LdbEntry mapping;
  try {
    mapping = LdbEntry::parse(data.payload);
  }
  catch (const Name::Error&) {
    resolveFailed(prefix, now, out);
    return;
  }
  Time idle = m_plane.timers().resolvedIdle;
  int as = domainOf(mapping.locator);
  if (as > 0) {
    m_fw.installFpt(prefix, FptEntry{domainTag(as), now + idle, idle, true}, now);
    if (mapping.third) {
      m_fw.installFpt(domainTag(as), FptEntry{*mapping.third}, now);
    }
  }
  else {
    m_fw.installFpt(prefix, FptEntry{mapping.locator, now + idle, idle, true}, now);
  }
  m_rwl[prefix].outstanding = false;
  m_rwl[prefix].resolvedAt = now;
  releaseWaiting(prefix, now, out);
}

void
RouterAgent::onLocalTimeout(const Name& name, Time now, Actions& out)
{
  auto it = m_rreqPrefix.find(name);
  if (it == m_rreqPrefix.end()) {
    return;
  }
  Name prefix = it->second;
  m_rreqPrefix.erase(it);
  resolveFailed(prefix, now, out);
}

void
RouterAgent::resolveFailed(const Name& prefix, Time now, Actions& out)
{
  ++m_plane.counters().nacks;
  RwlRecord& rec = m_rwl[prefix];
  rec.outstanding = false;
  rec.negativeUntil = now + m_plane.timers().negativeCache;
  releaseWaiting(prefix, now, out);
}

void
RouterAgent::releaseWaiting(const Name& prefix, Time now, Actions& out)
{
  std::vector<Name> waiting = std::move(m_rwl[prefix].waiting);
  m_rwl[prefix].waiting.clear();
  for (const auto& name : waiting) {
    auto it = m_fw.pit().find(name);
    if (it == m_fw.pit().end()) {
      continue;
    }
    m_fw.forwardExisting(it->second, it->second.interest, now, out);
  }
}

// ---- LocalController ----

LocalController::LocalController(Forwarder& fw, ControllerSetup setup, ControlPlane& plane)
  : m_fw(fw)
  , m_setup(std::move(setup))
  , m_plane(plane)
  , m_prefix(controllerPrefix(m_setup.as))
{
}

std::vector<std::string>
LocalController::dumpLdb() const
{
  std::vector<std::string> lines;
  for (const auto& [prefix, entry] : m_ldb) {
    lines.push_back(entry.toString());
  }
  return lines;
}

bool
LocalController::isLocalSr(const Name& locator) const
{
  return std::find(m_setup.serviceRouters.begin(), m_setup.serviceRouters.end(), locator) !=
         m_setup.serviceRouters.end();
}

void
LocalController::send(Interest interest, const char* msg, Time now, Actions& out)
{
  const ControlBody& b = *interest.body;
  m_plane.log(now, m_prefix, msg, b.entityPrefix, b.locator,
              b.homeBinding ? b.homeBinding : b.previousDomain);
  append(out, m_fw.onInterest(APP_FACE, std::move(interest), now));
}

void
LocalController::reply(const Name& name, const std::string& payload, bool nack, Time now, Actions& out)
{
  Data d;
  d.name = name;
  d.payload = nack ? NACK : payload;
  std::optional<Name> loc;
  Name entity;
  if (!nack) {
    try {
      auto e = LdbEntry::parse(payload);
      entity = e.prefix;
      loc = e.locator;
    }
    catch (const Name::Error&) {
      entity = Name::parse(payload);
    }
  }
  else {
    ++m_plane.counters().nacks;
  }
  m_plane.log(now, m_prefix, nack ? "NACK" : "ACK", entity, loc);
  append(out, m_fw.onData(APP_FACE, std::move(d), now));
}

void
LocalController::onInterest(const Interest& interest, Time now, Actions& out)
{
  if (!interest.body) {
    return;
  }
  switch (interest.kind) {
    case MsgKind::Register: onRegister(interest, now, out); break;
    case MsgKind::HReg: onHreg(interest, now, out); break;
    case MsgKind::FReg: onFreg(interest, now, out); break;
    case MsgKind::RReq: onRreq(interest, now, out); break;
    default: break;
  }
}

void
LocalController::flushLocal(const Name& entity, const Name& oldSr, const Name& target, bool consumer,
                            Time now, Actions& out)
{
  ControlBody fb;
  fb.entityPrefix = entity;
  fb.locator = target;
  fb.consumer = consumer;
  Interest freg = m_plane.makeControl(m_prefix, "Freg", MsgKind::FReg, fb);
  freg.label = ForwardingLabel{{oldSr}};
  send(std::move(freg), "FREG", now, out);

  if (consumer || !isDomainTag(target)) {
    return;
  }
  for (const auto& er : m_setup.edgeRouters) {
    ControlBody rb;
    rb.entityPrefix = entity;
    rb.locator = target;
    rb.timeout = m_plane.timers().rupdTimeout;
    Interest rupd = m_plane.makeControl(m_prefix, "Rupd", MsgKind::RUpdTimeout, std::move(rb));
    rupd.label = ForwardingLabel{{er}};
    send(std::move(rupd), "RUPD_T", now, out);
  }
}

void
LocalController::onRegister(const Interest& interest, Time now, Actions& out)
{
  const ControlBody& b = *interest.body;
  const Name& entity = b.entityPrefix;
  if (!b.locator) {
    reply(interest.name, "", true, now, out);
    return;
  }
  if (!interest.msTag) {
    reply(interest.name, entity.toUri(), false, now, out);
    return;
  }
  const Name sr = *b.locator;
  int home = b.homeBinding ? homeAsOf(*b.homeBinding) : -1;
  bool homeKnown = home == m_setup.as ||
                   std::find(m_setup.peers.begin(), m_setup.peers.end(), home) != m_setup.peers.end();
  if (!homeKnown) {
    ++m_plane.counters().unknownHome;
  }

  std::optional<LdbEntry> existing;
  if (const LdbEntry* e = m_ldb.find(entity)) {
    existing = *e;
  }
  if (existing && existing->locator == sr) {
    reply(interest.name, entity.toUri(), false, now, out);
    return;
  }
  bool wasLocal = existing && isLocalSr(existing->locator);
  bool wasRemote = existing && isDomainTag(existing->locator);

  LdbEntry fresh{entity, sr, homeKnown ? std::optional<Name>(homeTag(home)) : std::nullopt};
  m_ldb.insert(entity, fresh);
  m_cacheExpiry.erase(entity);

  if (wasLocal) {
    flushLocal(entity, existing->locator, sr, b.consumer, now, out);
  }
  if (!b.consumer) {
    for (const auto& er : m_setup.edgeRouters) {
      ControlBody rb;
      rb.entityPrefix = entity;
      rb.locator = sr;
      Interest rupd = m_plane.makeControl(m_prefix, "Rupd", MsgKind::RUpd, std::move(rb));
      rupd.label = ForwardingLabel{{er}};
      send(std::move(rupd), "RUPD", now, out);
    }
  }
  if (homeKnown && home != m_setup.as && !wasLocal) {
    ControlBody hb;
    hb.entityPrefix = entity;
    hb.homeBinding = b.homeBinding;
    hb.locator = Name({"As" + std::to_string(m_setup.as)});
    hb.consumer = b.consumer;
    send(m_plane.makeControl(controllerPrefix(home), "Hreg", MsgKind::HReg, std::move(hb)), "HREG", now, out);
  }
  if (home == m_setup.as && wasRemote) {
    int previous = domainOf(existing->locator);
    ControlBody fb;
    fb.entityPrefix = entity;
    fb.locator = domainTag(m_setup.as);
    fb.consumer = b.consumer;
    send(m_plane.makeControl(controllerPrefix(previous), "Freg", MsgKind::FReg, std::move(fb)), "FREG", now, out);
  }
  reply(interest.name, entity.toUri(), false, now, out);
}

void
LocalController::onHreg(const Interest& interest, Time now, Actions& out)
{
  const ControlBody& b = *interest.body;
  const Name& entity = b.entityPrefix;
  int newAs = b.locator ? domainOf(*b.locator) : -1;
  if (newAs <= 0) {
    reply(interest.name, "", true, now, out);
    return;
  }
  Name target = domainTag(newAs);
  std::optional<LdbEntry> existing;
  if (const LdbEntry* e = m_ldb.find(entity)) {
    existing = *e;
  }
  if (existing && isDomainTag(existing->locator)) {
    int previous = domainOf(existing->locator);
    if (previous != newAs) {
      m_ldb.insert(entity, LdbEntry{entity, target, existing->locator});
      ControlBody fb;
      fb.entityPrefix = entity;
      fb.locator = target;
      fb.consumer = b.consumer;
      send(m_plane.makeControl(controllerPrefix(previous), "Freg", MsgKind::FReg, std::move(fb)), "FREG", now, out);
    }
  }
  else if (existing && isLocalSr(existing->locator)) {
    m_ldb.insert(entity, LdbEntry{entity, target, Name()});
    flushLocal(entity, existing->locator, target, b.consumer, now, out);
  }
  else {
    m_ldb.insert(entity, LdbEntry{entity, target, Name()});
  }
  m_cacheExpiry.erase(entity);
  reply(interest.name, entity.toUri(), false, now, out);
}

void
LocalController::onFreg(const Interest& interest, Time now, Actions& out)
{
  const ControlBody& b = *interest.body;
  const Name& entity = b.entityPrefix;
  if (b.locator) {
    const LdbEntry* e = m_ldb.find(entity);
    if (e != nullptr && isLocalSr(e->locator)) {
      Name oldSr = e->locator;
      m_ldb.erase(entity);
      flushLocal(entity, oldSr, *b.locator, b.consumer, now, out);
    }
  }
  reply(interest.name, entity.toUri(), false, now, out);
}

std::string
LocalController::replyForRouter(const LdbEntry& entry) const
{
  if (isLocalSr(entry.locator)) {
    return entry.prefix.toUri() + "::" + entry.locator.toUri();
  }
  int as = domainOf(entry.locator);
  std::string s = entry.prefix.toUri() + "::/As" + std::to_string(as);
  auto eg = m_setup.egress.find(as);
  if (eg != m_setup.egress.end()) {
    s += "::" + eg->second.toUri();
  }
  return s;
}

void
LocalController::onRreq(const Interest& interest, Time now, Actions& out)
{
  const ControlBody& b = *interest.body;
  const Name& entity = b.entityPrefix;
  bool fromPeer = b.locator && !b.locator->empty() && (*b.locator)[0].rfind("LocalController:", 0) == 0;

  if (auto exp = m_cacheExpiry.find(entity); exp != m_cacheExpiry.end() && exp->second <= now) {
    m_ldb.erase(entity);
    m_cacheExpiry.erase(exp);
  }
  const LdbEntry* e = m_ldb.find(entity);
  if (e == nullptr) {
    if (auto* m = m_ldb.findLongestPrefixMatch(entity)) {
      e = &m->second;
    }
  }
  bool cached = e != nullptr && m_cacheExpiry.count(e->prefix) > 0;
  bool authoritative = e != nullptr && !cached;

  if (fromPeer) {
    if (!authoritative) {
      reply(interest.name, "", true, now, out);
      return;
    }
    int where = isLocalSr(e->locator) ? m_setup.as : domainOf(e->locator);
    int home = isLocalSr(e->locator) ? (e->third ? homeAsOf(*e->third) : m_setup.as) : m_setup.as;
    reply(interest.name, entity.toUri() + "::/As" + std::to_string(where) + "::" + homeTag(home).toUri(),
          false, now, out);
    return;
  }

  // a cached entry only remembers the home controller; its location may be stale
  if (authoritative) {
    reply(interest.name, replyForRouter(*e), false, now, out);
    return;
  }

  int home = -1;
  if (b.homeBinding) {
    home = homeAsOf(*b.homeBinding);
  }
  else if (e != nullptr && e->third) {
    home = homeAsOf(*e->third);
  }
  if (home == m_setup.as) {
    reply(interest.name, "", true, now, out);
    return;
  }

  RwlRecord& rec = m_rwl[entity];
  rec.waiting.push_back(interest.name);
  if (rec.outstanding) {
    return;
  }
  std::vector<int> targets;
  if (std::find(m_setup.peers.begin(), m_setup.peers.end(), home) != m_setup.peers.end()) {
    targets.push_back(home);
  }
  else {
    targets = m_setup.peers;
  }
  if (targets.empty()) {
    finishQuery(entity, now, out);
    return;
  }
  rec.outstanding = true;
  rec.expected = targets.size();
  rec.negatives = 0;
  for (int peer : targets) {
    ControlBody qb;
    qb.entityPrefix = entity;
    qb.locator = m_prefix;
    Interest q = m_plane.makeControl(controllerPrefix(peer), "Rreq", MsgKind::RReq, std::move(qb));
    m_queryPrefix[q.name] = entity;
    send(std::move(q), "RREQ", now, out);
  }
}

void
LocalController::finishQuery(const Name& entity, Time now, Actions& out)
{
  RwlRecord& rec = m_rwl[entity];
  std::vector<Name> waiting = std::move(rec.waiting);
  rec = RwlRecord{};
  const LdbEntry* e = m_ldb.find(entity);
  for (const auto& name : waiting) {
    if (e != nullptr) {
      reply(name, replyForRouter(*e), false, now, out);
    }
    else {
      reply(name, "", true, now, out);
    }
  }
}

void
LocalController::onLocalData(const Data& data, Time now, Actions& out)
{
  auto it = m_queryPrefix.find(data.name);
  if (it == m_queryPrefix.end()) {
    return;
  }
  Name entity = it->second;
  m_queryPrefix.erase(it);
  RwlRecord& rec = m_rwl[entity];

  if (data.payload != NACK) {
    try {
      LdbEntry answer = LdbEntry::parse(data.payload);
      int as = domainOf(answer.locator);
      const LdbEntry* mine = m_ldb.find(entity);
      bool authoritative = mine != nullptr && m_cacheExpiry.count(entity) == 0;
      if (as > 0 && !authoritative) {
        m_ldb.insert(entity, LdbEntry{entity, Name({"As" + std::to_string(as)}), answer.third});
        m_cacheExpiry[entity] = now + m_plane.timers().homeCache;
      }
      if (rec.outstanding) {
        finishQuery(entity, now, out);
      }
      return;
    }
    catch (const Name::Error&) {
      // treated as a negative answer
    }
  }
  if (rec.outstanding && ++rec.negatives >= rec.expected) {
    if (m_cacheExpiry.count(entity) > 0) {
      m_ldb.erase(entity);
      m_cacheExpiry.erase(entity);
    }
    finishQuery(entity, now, out);
  }
}

void
LocalController::onLocalTimeout(const Name& name, Time now, Actions& out)
{
  auto it = m_queryPrefix.find(name);
  if (it == m_queryPrefix.end()) {
    return;
  }
  Name entity = it->second;
  m_queryPrefix.erase(it);
  RwlRecord& rec = m_rwl[entity];
  if (rec.outstanding && ++rec.negatives >= rec.expected) {
    if (m_cacheExpiry.count(entity) > 0) {
      m_ldb.erase(entity);
      m_cacheExpiry.erase(entity);
    }
    finishQuery(entity, now, out);
  }
}

} // namespace mobndn
