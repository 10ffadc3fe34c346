#ifndef MOBNDN_PDU_HPP
#define MOBNDN_PDU_HPP

#include "mobndn/common.hpp"
#include "mobndn/name.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mobndn {

enum class MsgKind {
  DataRequest,
  Register,
  HReg,
  RReq,
  RUpd,
  RUpdTimeout,
  FReg,
};

const char*
toString(MsgKind k);

/// Ordered list of locator hops; the head is the next routing target.
struct ForwardingLabel
{
  std::vector<Name> hops;

  friend bool
  operator==(const ForwardingLabel&, const ForwardingLabel&) = default;
};

/// Payload of a control Interest. Which fields are set depends on the kind.
struct ControlBody
{
  Name entityPrefix;
  std::optional<Name> homeBinding;
  std::optional<Name> locator;
  std::optional<Name> previousDomain;
  std::optional<Time> timeout;
  /// Registration originates from a consumer; no edge-router updates follow.
  bool consumer = false;

  friend bool
  operator==(const ControlBody&, const ControlBody&) = default;
};

struct Interest
{
  Name name;
  uint64_t nonce = 0;
  std::optional<ForwardingLabel> label;
  bool msTag = false;
  bool muTag = false;
  MsgKind kind = MsgKind::DataRequest;
  std::optional<ControlBody> body;

  bool
  hasLabel() const noexcept
  {
    return label && !label->hops.empty();
  }

  friend bool
  operator==(const Interest&, const Interest&) = default;
};

struct Data
{
  Name name;
  bool muTag = false;
  std::string payload;
  std::string signature;

  friend bool
  operator==(const Data&, const Data&) = default;
};

constexpr size_t INTEREST_SIZE = 64;
constexpr size_t DATA_SIZE = 1024;
constexpr size_t CONTROL_DATA_SIZE = 128;

class DecodeError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class NoLabel : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Canonical text encoding with a fixed field order.
std::string
encode(const Interest& interest);

std::string
encode(const Data& data);

Interest
decodeInterest(const std::string& wire);

Data
decodeData(const std::string& wire);

/// Register Interest sent by a mobile endpoint on attachment.
Interest
makeRegister(const Name& entityPrefix, const Name& homeBinding, bool msTag,
             const Name& poaControlPrefix, std::mt19937_64& rng, uint64_t seq);

/// Removes and returns the head hop.
std::pair<Name, Interest>
popLabelHop(Interest interest);

Interest
rewriteLabel(Interest interest, std::vector<Name> hops, bool setMu);

} // namespace mobndn

#endif // MOBNDN_PDU_HPP
