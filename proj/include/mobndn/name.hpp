#ifndef MOBNDN_NAME_HPP
#define MOBNDN_NAME_HPP

#include <compare>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mobndn {

/** \brief Hierarchical name: an ordered sequence of non-empty components.
 *
 *  URI form is "/" followed by components joined by "/". The empty name is "/".
 *  Bytes that would break the URI form ('/', '%', whitespace, non-printable)
 *  are percent-encoded.
 */
class Name
{
public:
  class Error : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  Name() = default;

  explicit
  Name(std::vector<std::string> components);

  Name(std::initializer_list<std::string> components);

  /// Parse a URI. Throws Name::Error on malformed input.
  static Name
  parse(std::string_view uri);

  std::string
  toUri() const;

  size_t
  size() const noexcept
  {
    return m_comps.size();
  }

  bool
  empty() const noexcept
  {
    return m_comps.empty();
  }

  const std::string&
  operator[](size_t i) const
  {
    return m_comps[i];
  }

  const std::string&
  at(ptrdiff_t i) const;

  /// First n components; negative n drops -n components from the end.
  Name
  getPrefix(ptrdiff_t n) const;

  Name&
  append(std::string component);

  Name&
  append(const Name& other);

  bool
  isPrefixOf(const Name& other) const noexcept;

  auto
  begin() const noexcept
  {
    return m_comps.begin();
  }

  auto
  end() const noexcept
  {
    return m_comps.end();
  }

  const std::vector<std::string>&
  components() const noexcept
  {
    return m_comps;
  }

  friend bool
  operator==(const Name&, const Name&) = default;

  friend std::strong_ordering
  operator<=>(const Name& a, const Name& b) noexcept;

private:
  std::vector<std::string> m_comps;
};

std::ostream&
operator<<(std::ostream& os, const Name& name);

/// Non-owning view of the first \p len components of a name.
struct NamePrefixView
{
  const Name* name;
  size_t len;
};

struct NameLess
{
  using is_transparent = void;

  bool
  operator()(const Name& a, const Name& b) const noexcept
  {
    return a < b;
  }

  bool
  operator()(const Name& a, const NamePrefixView& b) const noexcept;

  bool
  operator()(const NamePrefixView& a, const Name& b) const noexcept;
};

} // namespace mobndn

#endif // MOBNDN_NAME_HPP
