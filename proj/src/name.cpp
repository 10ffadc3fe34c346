#include "mobndn/name.hpp"

#include <algorithm>
#include <ostream>

namespace mobndn {

namespace {

bool
needsEscape(unsigned char c)
{
  return c == '/' || c == '%' || c <= 0x20 || c >= 0x7f;
}

int
hexValue(char c)
{
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string
decodeComponent(std::string_view raw)
{
  std::string out;
  out.reserve(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    unsigned char c = raw[i];
    if (c == '%') {
      if (i + 2 >= raw.size()) {
        throw Name::Error("truncated percent escape");
      }
      int hi = hexValue(raw[i + 1]);
      int lo = hexValue(raw[i + 2]);
      if (hi < 0 || lo < 0) {
        throw Name::Error("bad percent escape");
      }
      out.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    }
    else if (c <= 0x20 || c >= 0x7f) {
      throw Name::Error("illegal character in name");
    }
    else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

int
compareComponents(const std::string& a, const std::string& b) noexcept
{
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int
compareRange(const Name& a, size_t aLen, const Name& b, size_t bLen) noexcept
{
  size_t n = std::min(aLen, bLen);
  for (size_t i = 0; i < n; ++i) {
    int c = compareComponents(a[i], b[i]);
    if (c != 0) {
      return c;
    }
  }
  return aLen < bLen ? -1 : (aLen > bLen ? 1 : 0);
}

} // namespace

Name::Name(std::vector<std::string> components)
  : m_comps(std::move(components))
{
  for (const auto& c : m_comps) {
    if (c.empty()) {
      throw Error("empty name component");
    }
  }
}

Name::Name(std::initializer_list<std::string> components)
  : Name(std::vector<std::string>(components))
{
}

Name
Name::parse(std::string_view uri)
{
  if (uri.empty() || uri.front() != '/') {
    throw Error("name must start with '/': '" + std::string(uri) + "'");
  }
  Name n;
  if (uri.size() == 1) {
    return n;
  }
  size_t pos = 1;
  while (true) {
    size_t next = uri.find('/', pos);
    std::string_view raw = uri.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (raw.empty()) {
      throw Error("empty component in '" + std::string(uri) + "'");
    }
    n.m_comps.push_back(decodeComponent(raw));
    if (next == std::string_view::npos) {
      break;
    }
    pos = next + 1;
  }
  return n;
}

std::string
Name::toUri() const
{
  if (m_comps.empty()) {
    return "/";
  }
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (const auto& c : m_comps) {
    out.push_back('/');
    for (unsigned char ch : c) {
      if (needsEscape(ch)) {
        out.push_back('%');
        out.push_back(hex[ch >> 4]);
        out.push_back(hex[ch & 0xF]);
      }
      else {
        out.push_back(static_cast<char>(ch));
      }
    }
  }
  return out;
}

const std::string&
Name::at(ptrdiff_t i) const
{
  ptrdiff_t idx = i < 0 ? static_cast<ptrdiff_t>(m_comps.size()) + i : i;
  if (idx < 0 || idx >= static_cast<ptrdiff_t>(m_comps.size())) {
    throw std::out_of_range("name component index out of range");
  }
  return m_comps[static_cast<size_t>(idx)];
}

Name
Name::getPrefix(ptrdiff_t n) const
{
  ptrdiff_t len = n < 0 ? static_cast<ptrdiff_t>(m_comps.size()) + n : n;
  len = std::clamp<ptrdiff_t>(len, 0, static_cast<ptrdiff_t>(m_comps.size()));
  Name p;
  p.m_comps.assign(m_comps.begin(), m_comps.begin() + len);
  return p;
}

Name&
Name::append(std::string component)
{
  if (component.empty()) {
    throw Error("empty name component");
  }
  m_comps.push_back(std::move(component));
  return *this;
}

Name&
Name::append(const Name& other)
{
  m_comps.insert(m_comps.end(), other.m_comps.begin(), other.m_comps.end());
  return *this;
}

bool
Name::isPrefixOf(const Name& other) const noexcept
{
  if (m_comps.size() > other.m_comps.size()) {
    return false;
  }
  return std::equal(m_comps.begin(), m_comps.end(), other.m_comps.begin());
}

std::strong_ordering
operator<=>(const Name& a, const Name& b) noexcept
{
  return compareRange(a, a.size(), b, b.size()) <=> 0;
}

std::ostream&
operator<<(std::ostream& os, const Name& name)
{
  return os << name.toUri();
}

bool
NameLess::operator()(const Name& a, const NamePrefixView& b) const noexcept
{
  return compareRange(a, a.size(), *b.name, b.len) < 0;
}

bool
NameLess::operator()(const NamePrefixView& a, const Name& b) const noexcept
{
  return compareRange(*a.name, a.len, b, b.size()) < 0;
}

} // namespace mobndn
