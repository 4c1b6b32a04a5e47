#include "brim/br_function.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "brim/errors.hpp"
#include "brim/parallel.hpp"

namespace brim {

std::vector<std::size_t> subset_members(SubsetMask mask) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; mask != 0; ++j, mask >>= 1) {
    if (mask & 1u) out.push_back(j);
  }
  return out;
}

SubsetMask full_mask(std::size_t r) {
  if (r > kMaxSummands) throw std::invalid_argument("too many summands");
  return r == 0 ? 0 : static_cast<SubsetMask>((SubsetMask{1} << r) - 1);
}

bool in_region(std::uint64_t p, std::uint64_t q, std::size_t r) { return q >= (p + 1) * r; }

namespace {

void require_region(std::uint64_t p, std::uint64_t q, std::size_t r, const char* who) {
  if (!in_region(p, q, r)) {
    throw RegionViolation(std::string(who) + ": (p, q) = (" + std::to_string(p) + ", " +
                          std::to_string(q) + ") violates q >= (p + 1) r with r = " +
                          std::to_string(r));
  }
}

void require_length(const IdealFamily& family, const MultiIndex& n, const char* who) {
  if (n.size() != family.count()) {
    throw DimensionMismatch(std::string(who) + ": index of length " + std::to_string(n.size()) +
                            " for " + std::to_string(family.count()) + " ideals");
  }
  if (family.count() > kMaxSummands) throw std::invalid_argument("too many summands");
}

std::vector<MonomialIdeal> power_ladder(const MonomialIdeal& ideal, std::uint64_t top) {
  std::vector<MonomialIdeal> out;
  out.reserve(top + 1);
  out.push_back(MonomialIdeal::unit(ideal.dim()));
  for (std::uint64_t e = 1; e <= top; ++e) out.push_back(ideal_product(out.back(), ideal));
  return out;
}

// Powers up to `top` of sum_B I, of (sum_B I + I_j) and of I_j for j in A.
struct CellLadders {
  SubsetMask small = 0;
  std::vector<std::size_t> members;
  std::vector<MonomialIdeal> base;
  std::vector<std::vector<MonomialIdeal>> extended;
  std::vector<std::vector<MonomialIdeal>> single;

  CellLadders(const IdealFamily& family, SubsetMask small_set, std::uint64_t top)
      : small(small_set), members(subset_members(small_set)) {
    const SubsetMask big = full_mask(family.count()) & ~small_set;
    if (big == 0) throw std::invalid_argument("stratum has k = 0");
    std::optional<MonomialIdeal> sum_big;
    for (std::size_t i : subset_members(big)) {
      sum_big = sum_big ? ideal_sum(*sum_big, family[i]) : family[i];
    }
    base = power_ladder(*sum_big, top);
    for (std::size_t j : members) {
      extended.push_back(power_ladder(ideal_sum(*sum_big, family[j]), top));
      single.push_back(power_ladder(family[j], top));
    }
  }
};

// n_small lists n_j for the members of A, in order.
MonomialIdeal closed_form_cell(const CellLadders& ladders, std::uint64_t p,
                               const std::vector<std::uint64_t>& n_small) {
  const std::uint64_t m = std::accumulate(n_small.begin(), n_small.end(), std::uint64_t{0});
  MonomialIdeal acc = ladders.base.at(p - m);
  for (std::size_t t = 0; t < n_small.size(); ++t) {
    if (n_small[t] > 0) acc = ideal_product(acc, ladders.extended[t].at(n_small[t]));
  }
  return acc;
}

void reduced_terms(const CellLadders& ladders, std::uint64_t p,
                   const std::vector<std::uint64_t>& n_small, std::size_t pos, std::uint64_t used,
                   const MonomialIdeal& prefix, std::optional<MonomialIdeal>& acc) {
  if (pos == n_small.size()) {
    MonomialIdeal term = ideal_product(ladders.base.at(p - used), prefix);
    acc = acc ? ideal_sum(*acc, term) : std::move(term);
    return;
  }
  const std::uint64_t top = std::min(n_small[pos], p - used);
  for (std::uint64_t i = 0; i <= top; ++i) {
    if (i == 0) {
      reduced_terms(ladders, p, n_small, pos + 1, used, prefix, acc);
    } else {
      reduced_terms(ladders, p, n_small, pos + 1, used + i,
                    ideal_product(prefix, ladders.single[pos].at(i)), acc);
    }
  }
}

MonomialIdeal reduced_cell(const CellLadders& ladders, std::uint64_t p,
                           const std::vector<std::uint64_t>& n_small, std::size_t dim) {
  std::optional<MonomialIdeal> acc;
  reduced_terms(ladders, p, n_small, 0, 0, MonomialIdeal::unit(dim), acc);
  return *acc;
}

std::vector<std::uint64_t> small_entries(const MultiIndex& n, const std::vector<std::size_t>& members) {
  std::vector<std::uint64_t> out;
  out.reserve(members.size());
  for (std::size_t j : members) out.push_back(n[j]);
  return out;
}

void require_stratum(const MultiIndex& n, std::uint64_t p, const Stratum& stratum, const char* who) {
  if (classify(n, p) != stratum) {
    throw std::invalid_argument(std::string(who) + ": stratum does not describe n");
  }
}

// Recursion behind the brute-force J: i_0 .. i_{r-1} with |i| = p, i <= n.
void brute_terms(const std::vector<std::vector<MonomialIdeal>>& singles, const MultiIndex& n,
                 std::size_t pos, std::uint64_t remaining, const MonomialIdeal& prefix,
                 std::optional<MonomialIdeal>& acc) {
  const std::size_t r = n.size();
  if (pos + 1 == r) {
    if (remaining > n[pos]) return;
    MonomialIdeal term =
        remaining == 0 ? prefix : ideal_product(prefix, singles[pos].at(remaining));
    acc = acc ? ideal_sum(*acc, term) : std::move(term);
    return;
  }
  const std::uint64_t top = std::min<std::uint64_t>(n[pos], remaining);
  for (std::uint64_t i = 0; i <= top; ++i) {
    if (i == 0) {
      brute_terms(singles, n, pos + 1, remaining, prefix, acc);
    } else {
      brute_terms(singles, n, pos + 1, remaining - i, ideal_product(prefix, singles[pos].at(i)),
                  acc);
    }
  }
}

std::vector<std::vector<MonomialIdeal>> family_ladders(const IdealFamily& family, std::uint64_t top) {
  std::vector<std::vector<MonomialIdeal>> out;
  out.reserve(family.count());
  for (const auto& ideal : family.ideals()) out.push_back(power_ladder(ideal, top));
  return out;
}

MonomialIdeal brute_j(const IdealFamily& family,
                      const std::vector<std::vector<MonomialIdeal>>& singles, std::uint64_t p,
                      const MultiIndex& n) {
  if (n.total() < p) {
    std::ostringstream msg;
    msg << "j_ideal_bruteforce: |n| = " << n.total() << " < p = " << p
        << " leaves no admissible index";
    throw std::invalid_argument(msg.str());
  }
  std::optional<MonomialIdeal> acc;
  brute_terms(singles, n, 0, p, MonomialIdeal::unit(family.dim()), acc);
  return *acc;
}

// Sums term(n) over {|n| = total} in r parts. Slices by n_0 run in parallel;
// each slice streams its compositions.
template <class Term>
BigInt sum_over_simplex(std::size_t r, std::uint64_t total, unsigned threads, Term&& term) {
  if (r == 1) return term(MultiIndex{static_cast<MultiIndex::value_type>(total)});
  std::vector<BigInt> partial(total + 1);
  parallel_for(total + 1, threads, [&](std::size_t v) {
    MultiIndex n = MultiIndex::zero(r);
    n[0] = static_cast<MultiIndex::value_type>(v);
    BigInt local = 0;
    for_each_composition(r - 1, total - v, [&](const MultiIndex& rest) {
      for (std::size_t j = 1; j < r; ++j) n[j] = rest[j - 1];
      local += term(static_cast<const MultiIndex&>(n));
      return true;
    });
    partial[v] = std::move(local);
  });
  BigInt acc = 0;
  for (const auto& v : partial) acc += v;
  return acc;
}

}  // namespace

Stratum classify(const MultiIndex& n, std::uint64_t p) {
  if (n.size() > kMaxSummands) throw std::invalid_argument("classify: too many summands");
  Stratum s;
  std::uint64_t small_sum = 0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (n[j] > p) {
      ++s.k;
    } else {
      s.small |= SubsetMask{1} << j;
      small_sum += n[j];
    }
  }
  if (s.k == 0) {
    std::ostringstream msg;
    msg << "classify: no entry of " << n << " exceeds p = " << p
        << "; (p, q) lies outside q >= (p + 1) r";
    throw RegionViolation(msg.str());
  }
  s.plus_cell = small_sum > p;
  return s;
}

MonomialIdeal j_ideal_bruteforce(const IdealFamily& family, std::uint64_t p, const MultiIndex& n) {
  require_length(family, n, "j_ideal_bruteforce");
  return brute_j(family, family_ladders(family, p), p, n);
}

MonomialIdeal j_ideal_closed_form(const IdealFamily& family, std::uint64_t p,
                                  const MultiIndex& n, const Stratum& stratum) {
  require_length(family, n, "j_ideal_closed_form");
  require_stratum(n, p, stratum, "j_ideal_closed_form");
  if (stratum.plus_cell) {
    throw std::invalid_argument("j_ideal_closed_form: n lies in a plus cell (small entries sum beyond p)");
  }
  const CellLadders ladders(family, stratum.small, p);
  return closed_form_cell(ladders, p, small_entries(n, ladders.members));
}

MonomialIdeal j_ideal_reduced(const IdealFamily& family, std::uint64_t p, const MultiIndex& n,
                              const Stratum& stratum) {
  require_length(family, n, "j_ideal_reduced");
  require_stratum(n, p, stratum, "j_ideal_reduced");
  const CellLadders ladders(family, stratum.small, p);
  return reduced_cell(ladders, p, small_entries(n, ladders.members), family.dim());
}

BigInt lambda_br(const IdealFamily& family, std::uint64_t p, unsigned threads) {
  const auto singles = family_ladders(family, p);
  return sum_over_simplex(family.count(), p, threads, [&](const MultiIndex& n) {
    MonomialIdeal prod = MonomialIdeal::unit(family.dim());
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (n[j] > 0) prod = ideal_product(prod, singles[j][n[j]]);
    }
    return colength_box(prod);
  });
}

BigInt big_lambda_brute(const IdealFamily& family, std::uint64_t p, std::uint64_t q,
                        unsigned threads) {
  const auto singles = family_ladders(family, p);
  return sum_over_simplex(family.count(), p + q, threads, [&](const MultiIndex& n) {
    return colength_box(brute_j(family, singles, p, n));
  });
}

BigInt lambda_region(const IdealFamily& family, std::uint64_t p, std::uint64_t q,
                     const StrataFilter& filter, unsigned threads) {
  require_region(p, q, family.count(), "lambda_region");
  const auto singles = family_ladders(family, p);
  return sum_over_simplex(family.count(), p + q, threads, [&](const MultiIndex& n) -> BigInt {
    if (!filter.matches(classify(n, p))) return 0;
    return colength_box(brute_j(family, singles, p, n));
  });
}

BigInt count_fiber(std::uint64_t p, std::uint64_t q, std::size_t k, std::uint64_t m) {
  if (k == 0) throw std::invalid_argument("count_fiber: k must be at least 1");
  if (m > p + q) throw std::invalid_argument("count_fiber: m exceeds p + q");
  const auto sp = static_cast<std::int64_t>(p);
  const auto sq = static_cast<std::int64_t>(q);
  const auto sk = static_cast<std::int64_t>(k);
  const auto sm = static_cast<std::int64_t>(m);
  return binomial(sq - (sk - 1) * sp - 1 - sm, sk - 1);
}

BigInt FiberProfile::evaluate(std::uint64_t q) const {
  require_region(p, q, r, "FiberProfile::evaluate");
  BigInt acc = 0;
  for (std::size_t k = 1; k <= r; ++k) {
    const auto& row = sums[k - 1];
    for (std::uint64_t m = 0; m < row.size(); ++m) {
      if (row[m] != 0) acc += count_fiber(p, q, k, m) * row[m];
    }
  }
  return acc;
}

FiberProfile fiber_profile(const IdealFamily& family, std::uint64_t p, unsigned threads) {
  const std::size_t r = family.count();
  const SubsetMask full = full_mask(r);

  std::vector<SubsetMask> masks;
  for (SubsetMask a = 0; a < full; ++a) masks.push_back(a);
  std::vector<std::optional<CellLadders>> ladders(masks.size());
  parallel_for(masks.size(), threads, [&](std::size_t i) { ladders[i].emplace(family, masks[i], p); });

  struct Task {
    std::size_t cell;
    std::vector<std::uint64_t> n_small;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < masks.size(); ++c) {
    const std::size_t width = ladders[c]->members.size();
    std::vector<std::uint64_t> n_small(width, 0);
    while (true) {
      tasks.push_back({c, n_small});
      std::size_t pos = 0;
      while (pos < width && n_small[pos] == p) n_small[pos++] = 0;
      if (pos == width) break;
      ++n_small[pos];
    }
  }

  std::vector<BigInt> lengths(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t t) {
    const auto& task = tasks[t];
    const CellLadders& cell = *ladders[task.cell];
    const std::uint64_t m = std::accumulate(task.n_small.begin(), task.n_small.end(), std::uint64_t{0});
    const MonomialIdeal j = m > p ? reduced_cell(cell, p, task.n_small, family.dim())
                                  : closed_form_cell(cell, p, task.n_small);
    lengths[t] = colength_box(j);
  });

  FiberProfile profile;
  profile.p = p;
  profile.r = r;
  profile.sums.resize(r);
  for (std::size_t k = 1; k <= r; ++k) profile.sums[k - 1].assign((r - k) * p + 1, 0);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const std::size_t k = r - ladders[tasks[t].cell]->members.size();
    const std::uint64_t m =
        std::accumulate(tasks[t].n_small.begin(), tasks[t].n_small.end(), std::uint64_t{0});
    profile.sums[k - 1][m] += lengths[t];
  }
  return profile;
}

BigInt big_lambda_fast(const IdealFamily& family, std::uint64_t p, std::uint64_t q,
                       unsigned threads) {
  require_region(p, q, family.count(), "big_lambda_fast");
  return fiber_profile(family, p, threads).evaluate(q);
}

LambdaTable::LambdaTable(IdealFamily family, unsigned threads)
    : family_(std::move(family)), threads_(threads) {}

std::optional<BigInt> LambdaTable::lookup(std::uint64_t p, std::uint64_t q, Method method) const {
  auto it = entries_.find({p, q});
  if (it == entries_.end()) return std::nullopt;
  return method == Method::brute ? it->second.brute : it->second.stratified;
}

BigInt LambdaTable::value(std::uint64_t p, std::uint64_t q, Method method) {
  if (auto hit = lookup(p, q, method)) return *hit;
  BigInt v;
  if (method == Method::brute) {
    v = big_lambda_brute(family_, p, q, threads_);
  } else {
    require_region(p, q, family_.count(), "LambdaTable");
    auto it = profiles_.find(p);
    if (it == profiles_.end()) it = profiles_.emplace(p, fiber_profile(family_, p, threads_)).first;
    v = it->second.evaluate(q);
  }
  Entry& e = entries_[{p, q}];
  const auto& other = method == Method::brute ? e.stratified : e.brute;
  if (other && *other != v) {
    throw EvaluatorMismatch("Lambda(" + std::to_string(p) + ", " + std::to_string(q) +
                            "): brute and stratified evaluators disagree");
  }
  (method == Method::brute ? e.brute : e.stratified) = v;
  return v;
}

}  // namespace brim
