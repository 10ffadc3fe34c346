#include "mobndn/pdu.hpp"

#include <sstream>

namespace mobndn {

const char*
toString(MsgKind k)
{
  switch (k) {
    case MsgKind::DataRequest: return "DataRequest";
    case MsgKind::Register: return "Register";
    case MsgKind::HReg: return "HReg";
    case MsgKind::RReq: return "RReq";
    case MsgKind::RUpd: return "RUpd";
    case MsgKind::RUpdTimeout: return "RUpdTimeout";
    case MsgKind::FReg: return "FReg";
  }
  return "?";
}

namespace {

MsgKind
parseKind(const std::string& s)
{
  for (int i = 0; i <= static_cast<int>(MsgKind::FReg); ++i) {
    auto k = static_cast<MsgKind>(i);
    if (s == toString(k)) {
      return k;
    }
  }
  throw DecodeError("unknown msg kind '" + s + "'");
}

std::string
escapeBytes(const std::string& in)
{
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : in) {
    if (c == '%' || c <= 0x20 || c >= 0x7f) {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
    else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out.empty() ? "-" : out;
}

std::string
unescapeBytes(const std::string& in)
{
  if (in == "-") {
    return {};
  }
  std::string out;
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '%') {
      if (i + 2 >= in.size()) {
        throw DecodeError("truncated escape");
      }
      out.push_back(static_cast<char>(std::stoi(in.substr(i + 1, 2), nullptr, 16)));
      i += 2;
    }
    else {
      out.push_back(in[i]);
    }
  }
  return out;
}

class FieldWriter
{
public:
  void
  put(const char* key, const std::string& value)
  {
    m_os << key << ' ' << value << '\n';
  }

  std::string
  str() const
  {
    return m_os.str();
  }

private:
  std::ostringstream m_os;
};

class FieldReader
{
public:
  explicit
  FieldReader(const std::string& wire)
    : m_is(wire)
  {
  }

  std::string
  get(const char* key)
  {
    std::string line;
    if (!std::getline(m_is, line)) {
      throw DecodeError(std::string("missing field ") + key);
    }
    auto sp = line.find(' ');
    if (sp == std::string::npos || line.compare(0, sp, key) != 0) {
      throw DecodeError(std::string("expected field ") + key + ", got '" + line + "'");
    }
    return line.substr(sp + 1);
  }

  void
  finish()
  {
    std::string rest;
    if (std::getline(m_is, rest) && !rest.empty()) {
      throw DecodeError("trailing content");
    }
  }

private:
  std::istringstream m_is;
};

std::string
optName(const std::optional<Name>& n)
{
  return n ? n->toUri() : "-";
}

std::optional<Name>
parseOptName(const std::string& s)
{
  if (s == "-") {
    return std::nullopt;
  }
  return Name::parse(s);
}

bool
parseFlag(const std::string& s)
{
  if (s == "1") return true;
  if (s == "0") return false;
  throw DecodeError("bad flag '" + s + "'");
}

} // namespace

std::string
encode(const Interest& interest)
{
  FieldWriter w;
  w.put("type", "interest");
  w.put("name", interest.name.toUri());
  w.put("nonce", std::to_string(interest.nonce));
  if (interest.label) {
    std::string hops = std::to_string(interest.label->hops.size());
    for (const auto& h : interest.label->hops) {
      hops += ' ' + h.toUri();
    }
    w.put("label", hops);
  }
  else {
    w.put("label", "-");
  }
  w.put("ms", interest.msTag ? "1" : "0");
  w.put("mu", interest.muTag ? "1" : "0");
  w.put("kind", toString(interest.kind));
  if (interest.body) {
    const auto& b = *interest.body;
    w.put("body", "1");
    w.put("entity", b.entityPrefix.toUri());
    w.put("home", optName(b.homeBinding));
    w.put("locator", optName(b.locator));
    w.put("prev", optName(b.previousDomain));
    w.put("timeout", b.timeout ? std::to_string(b.timeout->count()) : "-");
    w.put("consumer", b.consumer ? "1" : "0");
  }
  else {
    w.put("body", "0");
  }
  return w.str();
}

std::string
encode(const Data& data)
{
  FieldWriter w;
  w.put("type", "data");
  w.put("name", data.name.toUri());
  w.put("mu", data.muTag ? "1" : "0");
  w.put("payload", escapeBytes(data.payload));
  w.put("sig", escapeBytes(data.signature));
  return w.str();
}

Interest
decodeInterest(const std::string& wire)
{
  try {
    FieldReader r(wire);
    if (r.get("type") != "interest") {
      throw DecodeError("not an interest");
    }
    Interest i;
    i.name = Name::parse(r.get("name"));
    i.nonce = std::stoull(r.get("nonce"));
    std::string label = r.get("label");
    if (label != "-") {
      std::istringstream ls(label);
      size_t n = 0;
      if (!(ls >> n)) {
        throw DecodeError("bad label");
      }
      ForwardingLabel fl;
      for (size_t k = 0; k < n; ++k) {
        std::string hop;
        if (!(ls >> hop)) {
          throw DecodeError("short label");
        }
        fl.hops.push_back(Name::parse(hop));
      }
      i.label = std::move(fl);
    }
    i.msTag = parseFlag(r.get("ms"));
    i.muTag = parseFlag(r.get("mu"));
    i.kind = parseKind(r.get("kind"));
    if (parseFlag(r.get("body"))) {
      ControlBody b;
      b.entityPrefix = Name::parse(r.get("entity"));
      b.homeBinding = parseOptName(r.get("home"));
      b.locator = parseOptName(r.get("locator"));
      b.previousDomain = parseOptName(r.get("prev"));
      std::string t = r.get("timeout");
      if (t != "-") {
        b.timeout = Time(std::stoll(t));
      }
      b.consumer = parseFlag(r.get("consumer"));
      i.body = std::move(b);
    }
    r.finish();
    return i;
  }
  catch (const Name::Error& e) {
    throw DecodeError(e.what());
  }
  catch (const std::logic_error& e) {
    // std::stoull and friends
    throw DecodeError(e.what());
  }
}

Data
decodeData(const std::string& wire)
{
  try {
    FieldReader r(wire);
    if (r.get("type") != "data") {
      throw DecodeError("not a data packet");
    }
    Data d;
    d.name = Name::parse(r.get("name"));
    d.muTag = parseFlag(r.get("mu"));
    d.payload = unescapeBytes(r.get("payload"));
    d.signature = unescapeBytes(r.get("sig"));
    r.finish();
    return d;
  }
  catch (const Name::Error& e) {
    throw DecodeError(e.what());
  }
  catch (const std::logic_error& e) {
    throw DecodeError(e.what());
  }
}

Interest
makeRegister(const Name& entityPrefix, const Name& homeBinding, bool msTag,
             const Name& poaControlPrefix, std::mt19937_64& rng, uint64_t seq)
{
  Interest i;
  i.name = poaControlPrefix;
  i.name.append(entityPrefix).append("c=" + std::to_string(seq));
  i.nonce = rng();
  i.msTag = msTag;
  i.kind = MsgKind::Register;
  ControlBody b;
  b.entityPrefix = entityPrefix;
  b.homeBinding = homeBinding;
  i.body = std::move(b);
  return i;
}

std::pair<Name, Interest>
popLabelHop(Interest interest)
{
  if (!interest.hasLabel()) {
    throw NoLabel("interest carries no forwarding label");
  }
  Name head = std::move(interest.label->hops.front());
  interest.label->hops.erase(interest.label->hops.begin());
  if (interest.label->hops.empty()) {
    interest.label.reset();
  }
  return {std::move(head), std::move(interest)};
}

Interest
rewriteLabel(Interest interest, std::vector<Name> hops, bool setMu)
{
  if (hops.empty()) {
    interest.label.reset();
  }
  else {
    interest.label = ForwardingLabel{std::move(hops)};
  }
  if (setMu) {
    interest.muTag = true;
  }
  return interest;
}

} // namespace mobndn
