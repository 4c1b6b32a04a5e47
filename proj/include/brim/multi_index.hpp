#ifndef BRIM_MULTI_INDEX_HPP
#define BRIM_MULTI_INDEX_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <numeric>
#include <span>
#include <vector>

namespace brim {

/// A vector in Z_{>=0}^r indexing the summands of C.
class MultiIndex {
 public:
  using value_type = std::uint32_t;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<value_type> entries) : entries_(std::move(entries)) {}
  MultiIndex(std::initializer_list<value_type> entries) : entries_(entries) {}
  static MultiIndex zero(std::size_t r) { return MultiIndex(std::vector<value_type>(r, 0)); }

  std::size_t size() const noexcept { return entries_.size(); }
  value_type operator[](std::size_t j) const { return entries_[j]; }
  value_type& operator[](std::size_t j) { return entries_[j]; }
  std::span<const value_type> entries() const noexcept { return entries_; }

  /// |n|
  std::uint64_t total() const {
    return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
  }

  /// Componentwise <=.
  bool le(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<value_type> entries_;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& n);

/// Visits every n in Z_{>=0}^r with |n| = total and n <= bound (when given),
/// in lexicographically decreasing order of the leading entries. Stops early
/// when the visitor returns false.
template <class Visitor>
void for_each_composition(std::size_t r, std::uint64_t total, Visitor&& visit,
                          const MultiIndex* bound = nullptr);

/// All compositions of `total` into r parts, materialized.
std::vector<MultiIndex> compositions(std::size_t r, std::uint64_t total);

namespace detail {

template <class Visitor>
bool compose(MultiIndex& cur, std::size_t pos, std::uint64_t remaining, Visitor& visit,
             const MultiIndex* bound) {
  const std::size_t r = cur.size();
  if (pos + 1 == r) {
    if (bound && remaining > (*bound)[pos]) return true;
    cur[pos] = static_cast<MultiIndex::value_type>(remaining);
    return visit(static_cast<const MultiIndex&>(cur));
  }
  std::uint64_t top = remaining;
  if (bound && top > (*bound)[pos]) top = (*bound)[pos];
  for (std::uint64_t v = top + 1; v-- > 0;) {
    cur[pos] = static_cast<MultiIndex::value_type>(v);
    if (!compose(cur, pos + 1, remaining - v, visit, bound)) return false;
  }
  return true;
}

}  // namespace detail

template <class Visitor>
void for_each_composition(std::size_t r, std::uint64_t total, Visitor&& visit,
                          const MultiIndex* bound) {
  if (r == 0) return;
  MultiIndex cur = MultiIndex::zero(r);
  detail::compose(cur, 0, total, visit, bound);
}

}  // namespace brim

#endif  // BRIM_MULTI_INDEX_HPP
