#include "mobndn/common.hpp"

#include <cstdio>

namespace mobndn {

std::string
formatTime(Time t)
{
  int64_t ns = t.count();
  const char* sign = ns < 0 ? "-" : "";
  if (ns < 0) {
    ns = -ns;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%s%lld.%09lld", sign,
                static_cast<long long>(ns / 1000000000), static_cast<long long>(ns % 1000000000));
  return buf;
}

const char*
toString(Role r)
{
  switch (r) {
    case Role::PoA: return "poa";
    case Role::ServiceRouter: return "sr";
    case Role::EdgeRouter: return "er";
    case Role::Core: return "core";
    case Role::Controller: return "lc";
    case Role::Endpoint: return "endpoint";
  }
  return "?";
}

} // namespace mobndn
