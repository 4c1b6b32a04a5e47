#include "brim/multi_index.hpp"

#include <ostream>

#include "brim/errors.hpp"

namespace brim {

bool MultiIndex::le(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionMismatch("MultiIndex::le: length mismatch");
  for (std::size_t j = 0; j < size(); ++j) {
    if (entries_[j] > other.entries_[j]) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& n) {
  os << '(';
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (j) os << ',';
    os << n[j];
  }
  return os << ')';
}

std::vector<MultiIndex> compositions(std::size_t r, std::uint64_t total) {
  std::vector<MultiIndex> out;
  for_each_composition(r, total, [&](const MultiIndex& n) {
    out.push_back(n);
    return true;
  });
  return out;
}

}  // namespace brim
