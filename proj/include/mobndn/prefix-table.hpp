#ifndef MOBNDN_PREFIX_TABLE_HPP
#define MOBNDN_PREFIX_TABLE_HPP

#include "mobndn/name.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace mobndn {

/** \brief Map from name prefixes to values with longest-prefix-match lookup.
 *
 *  Lookup probes from the longest candidate prefix down to the root, so its
 *  cost is bounded by the query length, not by the table size.
 */
template<typename V>
class PrefixTable
{
public:
  using Map = std::map<Name, V, NameLess>;
  using value_type = typename Map::value_type;

  /// Insert or overwrite. Returns true if the prefix was new.
  bool
  insert(const Name& prefix, V value)
  {
    auto [it, isNew] = m_entries.insert_or_assign(prefix, std::move(value));
    if (prefix.size() > m_maxLen) {
      m_maxLen = prefix.size();
    }
    return isNew;
  }

  bool
  erase(const Name& prefix)
  {
    return m_entries.erase(prefix) > 0;
  }

  V*
  find(const Name& prefix)
  {
    auto it = m_entries.find(prefix);
    return it == m_entries.end() ? nullptr : &it->second;
  }

  const V*
  find(const Name& prefix) const
  {
    auto it = m_entries.find(prefix);
    return it == m_entries.end() ? nullptr : &it->second;
  }

  value_type*
  findLongestPrefixMatch(const Name& name)
  {
    ++m_lookups;
    size_t len = std::min(name.size(), m_maxLen);
    for (size_t i = len + 1; i-- > 0;) {
      auto it = m_entries.find(NamePrefixView{&name, i});
      if (it != m_entries.end()) {
        return &*it;
      }
    }
    return nullptr;
  }

  template<typename Pred>
  size_t
  eraseIf(Pred pred)
  {
    return std::erase_if(m_entries, pred);
  }

  size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  bool
  empty() const noexcept
  {
    return m_entries.empty();
  }

  void
  clear()
  {
    m_entries.clear();
    m_maxLen = 0;
  }

  auto
  begin() const
  {
    return m_entries.begin();
  }

  auto
  end() const
  {
    return m_entries.end();
  }

  /// Number of longest-prefix lookups performed so far.
  uint64_t
  lookupCount() const noexcept
  {
    return m_lookups;
  }

private:
  Map m_entries;
  size_t m_maxLen = 0;
  uint64_t m_lookups = 0;
};

} // namespace mobndn

#endif // MOBNDN_PREFIX_TABLE_HPP
