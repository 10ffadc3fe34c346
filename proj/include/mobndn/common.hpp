#ifndef MOBNDN_COMMON_HPP
#define MOBNDN_COMMON_HPP

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mobndn {

/// Simulated time, integer nanoseconds.
using Time = std::chrono::nanoseconds;

constexpr Time
fromSeconds(double s)
{
  return Time(static_cast<int64_t>(s * 1e9 + (s >= 0 ? 0.5 : -0.5)));
}

constexpr double
toSeconds(Time t)
{
  return static_cast<double>(t.count()) / 1e9;
}

/// Fixed nine-decimal rendering of a time value; exact for integer nanoseconds.
std::string
formatTime(Time t);

using FaceId = uint32_t;

/// Face 0 at every node is the local application or agent.
constexpr FaceId APP_FACE = 0;
constexpr FaceId INVALID_FACE = 0xFFFFFFFF;

enum class Role {
  PoA,
  ServiceRouter,
  EdgeRouter,
  Core,
  Controller,
  Endpoint,
};

const char*
toString(Role r);

} // namespace mobndn

#endif // MOBNDN_COMMON_HPP
