#ifndef BRIM_BR_FUNCTION_HPP
#define BRIM_BR_FUNCTION_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "brim/integer.hpp"
#include "brim/monomial.hpp"
#include "brim/multi_index.hpp"

namespace brim {

/// Subsets of the summand indices {0, ..., r-1}, as bit masks.
using SubsetMask = std::uint32_t;
inline constexpr std::size_t kMaxSummands = 24;

std::vector<std::size_t> subset_members(SubsetMask mask);
SubsetMask full_mask(std::size_t r);

/// Where n sits in the stratification of {|n| = p + q}.
///
/// k counts the entries exceeding p; `small` is the set A of entries <= p;
/// `plus_cell` says whether the entries of A sum beyond p.
struct Stratum {
  std::size_t k = 0;
  SubsetMask small = 0;
  bool plus_cell = false;

  std::vector<std::size_t> small_members() const { return subset_members(small); }
  friend bool operator==(const Stratum&, const Stratum&) = default;
};

/// q >= (p + 1) r.
bool in_region(std::uint64_t p, std::uint64_t q, std::size_t r);

/// Throws RegionViolation when no entry exceeds p.
Stratum classify(const MultiIndex& n, std::uint64_t p);

/// J_p(n) = sum of I^i over |i| = p, 0 <= i <= n, straight from the definition.
MonomialIdeal j_ideal_bruteforce(const IdealFamily& family, std::uint64_t p, const MultiIndex& n);

/// With B the complement of A:
///   (sum_B I)^{p - |n_A|} * prod_{j in A} (sum_B I + I_j)^{n_j}.
/// Only valid off the plus cells.
MonomialIdeal j_ideal_closed_form(const IdealFamily& family, std::uint64_t p,
                                  const MultiIndex& n, const Stratum& stratum);

/// sum over i_A <= n_A with |i_A| <= p of (sum_B I)^{p - |i_A|} prod_{j in A} I_j^{i_j}.
/// Valid on every stratum with k >= 1.
MonomialIdeal j_ideal_reduced(const IdealFamily& family, std::uint64_t p, const MultiIndex& n,
                              const Stratum& stratum);

/// lambda_C(p) = sum over |n| = p of colength(I^n).
BigInt lambda_br(const IdealFamily& family, std::uint64_t p, unsigned threads = 1);

/// Lambda(p, q) = sum over |n| = p + q of colength(J_p(n)), brute force.
BigInt big_lambda_brute(const IdealFamily& family, std::uint64_t p, std::uint64_t q,
                        unsigned threads = 1);

/// Lambda(p, q) through the stratification. Requires in_region(p, q, r).
BigInt big_lambda_fast(const IdealFamily& family, std::uint64_t p, std::uint64_t q,
                       unsigned threads = 1);

/// Selects strata by any combination of k, A and the plus flag.
struct StrataFilter {
  std::optional<std::size_t> k;
  std::optional<SubsetMask> small;
  std::optional<bool> plus_cell;

  bool matches(const Stratum& s) const {
    return (!k || *k == s.k) && (!small || *small == s.small) &&
           (!plus_cell || *plus_cell == s.plus_cell);
  }
};

/// Sum of colength(J_p(n)) over the n of H_{p,q} selected by `filter`,
/// using brute-force J. Requires in_region(p, q, r).
BigInt lambda_region(const IdealFamily& family, std::uint64_t p, std::uint64_t q,
                     const StrataFilter& filter, unsigned threads = 1);

/// Number of (n_1, ..., n_k), all > p, summing to p + q - m:
/// binom(q - (k-1) p - 1 - m, k - 1). Requires k >= 1 and m <= p + q.
BigInt count_fiber(std::uint64_t p, std::uint64_t q, std::size_t k, std::uint64_t m);

/// For fixed p, Lambda(p, .) on the region is
///   sum_{k, m} count_fiber(p, q, k, m) * sums[k-1][m],
/// where sums[k-1][m] adds colength(J) over every A with |A| = r - k and every
/// n_A <= p with |n_A| = m. J does not depend on q there.
struct FiberProfile {
  std::uint64_t p = 0;
  std::size_t r = 0;
  std::vector<std::vector<BigInt>> sums;

  BigInt evaluate(std::uint64_t q) const;
};

FiberProfile fiber_profile(const IdealFamily& family, std::uint64_t p, unsigned threads = 1);

enum class Method { brute, stratified };

/// Memoized Lambda(p, q) values of one family, tagged by evaluator. Storing
/// a value that contradicts the other evaluator throws EvaluatorMismatch.
class LambdaTable {
 public:
  struct Entry {
    std::optional<BigInt> brute;
    std::optional<BigInt> stratified;
  };

  explicit LambdaTable(IdealFamily family, unsigned threads = 1);

  const IdealFamily& family() const noexcept { return family_; }
  BigInt value(std::uint64_t p, std::uint64_t q, Method method);
  std::optional<BigInt> lookup(std::uint64_t p, std::uint64_t q, Method method) const;
  const std::map<std::pair<std::uint64_t, std::uint64_t>, Entry>& entries() const noexcept {
    return entries_;
  }

 private:
  IdealFamily family_;
  unsigned threads_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Entry> entries_;
  std::map<std::uint64_t, FiberProfile> profiles_;
};

}  // namespace brim

#endif  // BRIM_BR_FUNCTION_HPP
