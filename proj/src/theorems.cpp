#include "brim/theorems.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "brim/errors.hpp"

namespace brim {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "?";
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "==";
    case Relation::at_most: return "<=";
    case Relation::contained: return "contained";
  }
  return "?";
}

namespace {

constexpr std::size_t kMaxWitnesses = 16;

// Accumulates comparisons into a report. Keeps every failure up to the cap,
// and the first passing comparison when `keep_all` is off.
class Collector {
 public:
  Collector(std::string check, std::string family, bool keep_all)
      : keep_all_(keep_all) {
    report_.check = std::move(check);
    report_.family = std::move(family);
  }

  void add(Comparison c) {
    ++report_.points;
    if (!c.holds) ++report_.failures;
    const bool keep = keep_all_ || (!c.holds && failures_kept_ < kMaxWitnesses) ||
                      (c.holds && !example_kept_);
    if (!keep) return;
    if (!c.holds) ++failures_kept_;
    if (c.holds) example_kept_ = true;
    report_.witnesses.push_back(std::move(c));
  }

  void note(const std::string& text) {
    if (!report_.note.empty()) report_.note += "; ";
    report_.note += text;
  }

  VerificationReport finish() {
    if (report_.failures > 0) report_.verdict = Verdict::fail;
    else if (report_.points > 0) report_.verdict = Verdict::pass;
    else report_.verdict = Verdict::inapplicable;
    return std::move(report_);
  }

 private:
  VerificationReport report_;
  bool keep_all_;
  std::size_t failures_kept_ = 0;
  bool example_kept_ = false;
};

Comparison compare_eq(std::string label, BigInt lhs, BigInt rhs) {
  const bool ok = lhs == rhs;
  return {std::move(label), std::move(lhs), std::move(rhs), Relation::equal, ok};
}

Comparison compare_le(std::string label, BigInt lhs, BigInt rhs) {
  const bool ok = lhs <= rhs;
  return {std::move(label), std::move(lhs), std::move(rhs), Relation::at_most, ok};
}

std::string describe_base(const Extraction& e) {
  std::ostringstream os;
  os << "bases ";
  for (const auto* b : {&e.first_base, &e.second_base}) {
    os << '(';
    for (std::size_t i = 0; i < b->size(); ++i) os << (i ? "," : "") << (*b)[i];
    os << ')';
    if (b == &e.first_base) os << ' ';
  }
  return os.str();
}

std::string at_point(const MultiIndex& n, std::uint64_t p, std::uint64_t q) {
  std::ostringstream os;
  os << "n=" << n << " p=" << p << " q=" << q;
  return os.str();
}

MonomialIdeal sum_over(const IdealFamily& family, SubsetMask mask) {
  std::optional<MonomialIdeal> acc;
  for (std::size_t i : subset_members(mask)) acc = acc ? ideal_sum(*acc, family[i]) : family[i];
  return *acc;
}

// A point of the cell (A = small, n_A), with n_B > p filling up to p + q.
MultiIndex cell_point(std::size_t r, std::uint64_t p, SubsetMask small,
                      const std::vector<std::uint64_t>& n_small, std::uint64_t big_fill) {
  MultiIndex n = MultiIndex::zero(r);
  const auto members = subset_members(small);
  for (std::size_t t = 0; t < members.size(); ++t) {
    n[members[t]] = static_cast<MultiIndex::value_type>(n_small[t]);
  }
  for (std::size_t j = 0; j < r; ++j) {
    if (!(small >> j & 1u)) n[j] = static_cast<MultiIndex::value_type>(p + 1 + big_fill);
  }
  return n;
}

// Visits n_A in N^width with |n_A| <= cap.
template <class Visit>
void for_each_bounded_sum(std::size_t width, std::uint64_t cap, Visit&& visit) {
  if (width == 0) {
    visit(std::vector<std::uint64_t>{});
    return;
  }
  for (std::uint64_t t = 0; t <= cap; ++t) {
    for_each_composition(width, t, [&](const MultiIndex& v) {
      visit(std::vector<std::uint64_t>(v.entries().begin(), v.entries().end()));
      return true;
    });
  }
}

void require_region(std::uint64_t p, std::uint64_t q, std::size_t r, const char* who) {
  if (!in_region(p, q, r)) {
    throw RegionViolation(std::string(who) + ": (p, q) outside q >= (p + 1) r");
  }
}

void merge(VerificationReport& into, VerificationReport part) {
  into.points += part.points;
  into.failures += part.failures;
  std::size_t fails_kept = 0;
  bool example = false;
  for (const auto& w : into.witnesses) {
    if (!w.holds) ++fails_kept;
    else example = true;
  }
  for (auto& w : part.witnesses) {
    if (!w.holds && fails_kept < kMaxWitnesses) {
      ++fails_kept;
      into.witnesses.push_back(std::move(w));
    } else if (w.holds && !example) {
      example = true;
      into.witnesses.push_back(std::move(w));
    }
  }
  if (into.note.empty()) into.note = part.note;
  if (into.failures > 0) into.verdict = Verdict::fail;
  else if (into.points > 0) into.verdict = Verdict::pass;
  else into.verdict = Verdict::inapplicable;
}

}  // namespace

FamilyAnalysis::FamilyAnalysis(IdealFamily family, std::string label, ExtractOptions options)
    : family_(family), label_(std::move(label)), options_(options),
      table_(std::move(family), options.threads) {}

const MultiplicityReport& FamilyAnalysis::sequence() {
  if (!sequence_) sequence_ = br_multiplicity_sequence(table_, options_);
  return *sequence_;
}

const Extraction& FamilyAnalysis::br_multiplicity() {
  if (!br_) br_ = brim::br_multiplicity(family_, options_);
  return *br_;
}

const MixedMultiplicityTable& FamilyAnalysis::mixed() {
  if (!mixed_) mixed_ = mixed_multiplicities(family_, options_);
  return *mixed_;
}

const Extraction& FamilyAnalysis::hs_of_sum() {
  if (!hs_sum_) hs_sum_ = hs_multiplicity(family_.total_sum(), options_);
  return *hs_sum_;
}

VerificationReport check_last_multiplicity(FamilyAnalysis& analysis) {
  Collector c("last-multiplicity", analysis.label(), true);
  const std::size_t r = analysis.family().count();
  const Extraction& last = analysis.sequence().sequence.at(r - 1);
  const Extraction& hs = analysis.hs_of_sum();
  c.add(compare_eq("e^" + std::to_string(r - 1) + " [" + describe_base(last) + "] vs e(sum I) [" +
                       describe_base(hs) + "]",
                   last.value, hs.value));
  return c.finish();
}

VerificationReport check_mixed_sum(FamilyAnalysis& analysis) {
  Collector c("mixed-sum", analysis.label(), true);
  const auto& table = analysis.mixed();
  std::ostringstream terms;
  for (const auto& [i, e] : table.entries) terms << "e_" << i << "=" << e.value << ' ';
  c.note(terms.str());
  const std::size_t expected =
      static_cast<std::size_t>(binomial(static_cast<std::int64_t>(analysis.family().dim() +
                                                                  analysis.family().count() - 1),
                                        static_cast<std::int64_t>(analysis.family().count() - 1)));
  c.add(compare_eq("number of mixed multiplicities", table.entries.size(), expected));
  const Extraction& br = analysis.br_multiplicity();
  c.add(compare_eq("e(C) [" + describe_base(br) + "] vs sum of e_i", br.value, table.total()));
  return c.finish();
}

VerificationReport check_nested_chain(FamilyAnalysis& analysis) {
  Collector c("nested-chain", analysis.label(), true);
  const IdealFamily& family = analysis.family();
  const std::size_t r = family.count();
  if (r == 1) {
    c.note("single ideal, nothing to compare");
    return c.finish();
  }
  for (std::size_t j = 0; j + 1 < r; ++j) {
    if (!is_subideal(family[j], family[j + 1])) {
      c.note("not a chain: I_" + std::to_string(j + 1) + " is not contained in I_" +
             std::to_string(j + 2));
      return c.finish();
    }
  }
  c.note("chain tested with non-strict containment");
  const auto& seq = analysis.sequence();
  for (std::size_t j = 1; j < r; ++j) {
    const Extraction tail = br_multiplicity(family.tail(j), analysis.options());
    c.add(compare_eq("e^" + std::to_string(j) + " vs e(C_{" + std::to_string(j + 1) + ".." +
                         std::to_string(r) + "})",
                     seq.e(j), tail.value));
  }
  return c.finish();
}

VerificationReport check_sequence_shape(FamilyAnalysis& analysis) {
  Collector c("sequence-shape", analysis.label(), true);
  const auto& seq = analysis.sequence();
  const std::size_t r = analysis.family().count();
  c.add(compare_eq("e^0 from Lambda vs e(C) from lambda", seq.e(0), analysis.br_multiplicity().value));
  for (std::size_t j = 1; j < seq.sequence.size(); ++j) {
    c.add(compare_le("e^" + std::to_string(j) + " <= e^" + std::to_string(j - 1), seq.e(j),
                     seq.e(j - 1)));
  }
  for (std::size_t j = r; j < seq.sequence.size(); ++j) {
    c.add(compare_eq("e^" + std::to_string(j) + " = 0", seq.e(j), 0));
  }
  c.add(compare_le("1 <= e^" + std::to_string(r - 1), 1, seq.e(r - 1)));
  if (!seq.chain_holds()) c.note("chain_holds() is false");
  return c.finish();
}

VerificationReport check_j_closed_form(const IdealFamily& family, const std::string& label,
                                       const CheckConfig& config) {
  Collector c("j-closed-form", label, false);
  const std::size_t r = family.count();
  std::mt19937_64 rng(config.seed);
  auto below = [&rng](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };
  const SubsetMask full = full_mask(r);
  const std::uint64_t p_top = std::max<std::uint64_t>(config.p_max, 1);

  std::size_t closed_done = 0;
  std::size_t plus_done = 0;
  const std::size_t want_plus = r >= 3 ? config.samples : 0;
  for (std::size_t attempt = 0;
       attempt < 50 * config.samples + 50 && (closed_done < config.samples || plus_done < want_plus);
       ++attempt) {
    const std::uint64_t p = 1 + below(p_top);
    const std::uint64_t q_lo = (p + 1) * r;
    const std::uint64_t q = q_lo + below(std::max(config.q_max, q_lo) - q_lo + 1);
    const SubsetMask small = static_cast<SubsetMask>(below(full));
    const std::size_t width = subset_members(small).size();
    const std::size_t k = r - width;
    std::vector<std::uint64_t> n_small(width);
    std::uint64_t m = 0;
    for (auto& v : n_small) m += (v = below(p + 1));
    const bool plus = m > p;
    if (plus ? plus_done >= want_plus : closed_done >= config.samples) continue;

    // Split the slack over the k large entries.
    const std::uint64_t slack = p + q - m - k * (p + 1);
    std::vector<std::uint64_t> cuts(k - 1);
    for (auto& cut : cuts) cut = below(slack + 1);
    std::sort(cuts.begin(), cuts.end());
    MultiIndex n = cell_point(r, p, small, n_small, 0);
    std::uint64_t prev = 0;
    std::size_t t = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (small >> j & 1u) continue;
      const std::uint64_t upto = t < cuts.size() ? cuts[t] : slack;
      n[j] = static_cast<MultiIndex::value_type>(n[j] + (upto - prev));
      prev = upto;
      ++t;
    }

    const Stratum s = classify(n, p);
    const MonomialIdeal brute = j_ideal_bruteforce(family, p, n);
    const MonomialIdeal reduced = j_ideal_reduced(family, p, n, s);
    c.add({at_point(n, p, q) + " reduced", colength_box(reduced), colength_box(brute),
           Relation::equal, ideal_equals(reduced, brute)});
    if (!plus) {
      const MonomialIdeal closed = j_ideal_closed_form(family, p, n, s);
      c.add({at_point(n, p, q) + " closed form", colength_box(closed), colength_box(brute),
             Relation::equal, ideal_equals(closed, brute)});
      ++closed_done;
    } else {
      ++plus_done;
    }
  }
  c.note(std::to_string(closed_done) + " points off plus cells, " + std::to_string(plus_done) +
         " on plus cells");
  if (closed_done < config.samples || plus_done < want_plus) {
    c.add({"sample quota", BigInt(closed_done + plus_done), BigInt(config.samples + want_plus),
           Relation::equal, false});
  }
  return c.finish();
}

VerificationReport check_delta_cells(const IdealFamily& family, const std::string& label,
                                     std::uint64_t p, std::uint64_t q, unsigned threads) {
  require_region(p, q, family.count(), "check_delta_cells");
  Collector c("delta-cells", label, false);
  const std::size_t r = family.count();
  const SubsetMask full = full_mask(r);
  for (SubsetMask small = 0; small < full; ++small) {
    const auto members = subset_members(small);
    const std::size_t k = r - members.size();
    const BigInt direct = lambda_region(family, p, q, StrataFilter{k, small, false}, threads);

    BigInt fiber_sum = 0;
    for_each_bounded_sum(members.size(), p, [&](const std::vector<std::uint64_t>& n_small) {
      const MultiIndex n = cell_point(r, p, small, n_small, 0);
      std::uint64_t m = 0;
      for (auto v : n_small) m += v;
      fiber_sum += count_fiber(p, q, k, m) *
                   colength_box(j_ideal_closed_form(family, p, n, classify(n, p)));
    });
    std::ostringstream where;
    where << "k=" << k << " A=" << MultiIndex([&] {
      std::vector<MultiIndex::value_type> v;
      for (auto j : members) v.push_back(static_cast<MultiIndex::value_type>(j + 1));
      return v;
    }()) << " p=" << p << " q=" << q;
    c.add(compare_eq(where.str() + " cell sum vs fiber double sum", direct, fiber_sum));

    const MonomialIdeal big_sum = sum_over(family, full & ~small);
    std::vector<MonomialIdeal> l_ideals{big_sum};
    for (std::size_t j : members) l_ideals.push_back(ideal_sum(big_sum, family[j]));
    const BigInt bound = binomial(static_cast<std::int64_t>(q) -
                                      static_cast<std::int64_t>((k - 1) * p) - 1,
                                  static_cast<std::int64_t>(k - 1)) *
                         lambda_br(IdealFamily(std::move(l_ideals)), p, threads);
    c.add(compare_le(where.str() + " cell sum vs binom * lambda_L(p)", direct, bound));
  }
  return c.finish();
}

VerificationReport check_plus_containment(const IdealFamily& family, const std::string& label,
                                          std::uint64_t p, std::uint64_t q) {
  require_region(p, q, family.count(), "check_plus_containment");
  Collector c("plus-containment", label, false);
  const std::size_t r = family.count();
  if (r < 3) {
    c.note("no plus cells when r < 3");
    return c.finish();
  }
  std::map<SubsetMask, MonomialIdeal> witness_power;
  for_each_composition(r, p + q, [&](const MultiIndex& n) {
    const Stratum s = classify(n, p);
    if (!s.plus_cell) return true;
    auto it = witness_power.find(s.small);
    if (it == witness_power.end()) {
      MonomialIdeal b = MonomialIdeal::unit(family.dim());
      for (std::size_t j : s.small_members()) b = ideal_product(b, family[j]);
      it = witness_power.emplace(s.small, ideal_power(b, p)).first;
    }
    const MonomialIdeal j = j_ideal_bruteforce(family, p, n);
    const BigInt len_j = colength_box(j);
    const BigInt len_b = colength_box(it->second);
    c.add({at_point(n, p, q) + " (prod_A I)^p in J(n)", len_j, len_b, Relation::contained,
           is_subideal(it->second, j) && len_j <= len_b});
    return true;
  });
  return c.finish();
}

VerificationReport check_plus_count(std::uint64_t p, std::uint64_t q, std::size_t k,
                                    std::size_t r) {
  Collector c("plus-count", "r=" + std::to_string(r), false);
  if (k < 1 || k + 2 > r) {
    c.note("needs 1 <= k <= r - 2");
    return c.finish();
  }
  require_region(p, q, r, "check_plus_count");
  std::uint64_t direct = 0;
  for_each_composition(r, p + q, [&](const MultiIndex& n) {
    std::uint64_t small_sum = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (j < k ? n[j] <= p : n[j] > p) return true;
      if (j >= k) small_sum += n[j];
    }
    if (small_sum > p) ++direct;
    return true;
  });
  const auto sp = static_cast<std::int64_t>(p);
  const auto sq = static_cast<std::int64_t>(q);
  const auto sk = static_cast<std::int64_t>(k);
  const auto s = static_cast<std::int64_t>(r - k);
  const BigInt bound = binomial(sq - (sk - 1) * sp - 1, sk - 1) *
                       (binomial(s + s * sp - 1, s) - binomial(s + sp - 1, s));
  std::ostringstream where;
  where << "k=" << k << " p=" << p << " q=" << q << " #plus cell vs bound";
  c.add(compare_le(where.str(), direct, bound));
  return c.finish();
}

VerificationReport check_top_stratum(const IdealFamily& family, const std::string& label,
                                     std::uint64_t p, std::uint64_t q, unsigned threads) {
  require_region(p, q, family.count(), "check_top_stratum");
  Collector c("top-stratum", label, false);
  const std::size_t r = family.count();
  const BigInt direct = lambda_region(family, p, q, StrataFilter{r, std::nullopt, std::nullopt}, threads);
  const BigInt closed = binomial(static_cast<std::int64_t>(q) -
                                     static_cast<std::int64_t>((r - 1) * p) - 1,
                                 static_cast<std::int64_t>(r - 1)) *
                        colength_box(ideal_power(family.total_sum(), p));
  c.add(compare_eq("p=" + std::to_string(p) + " q=" + std::to_string(q), direct, closed));
  return c.finish();
}

VerificationReport check_fiber_count(std::size_t k_max, std::uint64_t p_max, std::uint64_t q_max) {
  Collector c("fiber-count", "-", false);
  for (std::size_t k = 1; k <= k_max; ++k) {
    for (std::uint64_t p = 0; p <= p_max; ++p) {
      for (std::uint64_t q = 0; q <= q_max; ++q) {
        for (std::uint64_t m = 0; m <= p; ++m) {
          std::uint64_t direct = 0;
          for_each_composition(k, p + q - m, [&](const MultiIndex& n) {
            for (std::size_t j = 0; j < k; ++j) {
              if (n[j] <= p) return true;
            }
            ++direct;
            return true;
          });
          std::ostringstream where;
          where << "k=" << k << " p=" << p << " q=" << q << " m=" << m;
          c.add(compare_eq(where.str(), direct, count_fiber(p, q, k, m)));
        }
      }
    }
  }
  return c.finish();
}

VerificationReport check_evaluators(FamilyAnalysis& analysis, const CheckConfig& config) {
  Collector c("evaluators", analysis.label(), false);
  const IdealFamily& family = analysis.family();
  const std::size_t r = family.count();
  const unsigned threads = analysis.options().threads;
  for (std::uint64_t p = 0; p <= config.p_max; ++p) {
    const FiberProfile profile = fiber_profile(family, p, threads);
    for (std::uint64_t q = (p + 1) * r; q <= config.q_max; ++q) {
      c.add(compare_eq("p=" + std::to_string(p) + " q=" + std::to_string(q) + " stratified vs brute",
                       profile.evaluate(q), big_lambda_brute(family, p, q, threads)));
    }
  }
  return c.finish();
}

VerificationReport check_colength_oracle(const IdealFamily& family, const std::string& label) {
  Collector c("colength-oracle", label, false);
  std::vector<std::pair<std::string, MonomialIdeal>> ideals;
  for (std::size_t j = 0; j < family.count(); ++j) {
    ideals.emplace_back("I_" + std::to_string(j + 1), family[j]);
    ideals.emplace_back("I_" + std::to_string(j + 1) + "^2", ideal_power(family[j], 2));
  }
  ideals.emplace_back("sum I", family.total_sum());
  std::size_t skipped = 0;
  for (const auto& [name, ideal] : ideals) {
    if (ideal.size() > kInclExclMaxGens) {
      ++skipped;
      continue;
    }
    c.add(compare_eq(name + " box vs inclusion-exclusion", colength_box(ideal),
                     colength_incl_excl(ideal)));
  }
  if (skipped) c.note(std::to_string(skipped) + " ideals above the generator limit skipped");
  return c.finish();
}

VerificationReport check_lambda_q0(FamilyAnalysis& analysis, const CheckConfig& config) {
  Collector c("lambda-q0", analysis.label(), false);
  const unsigned threads = analysis.options().threads;
  for (std::uint64_t p = 0; p <= config.p_max + 1; ++p) {
    c.add(compare_eq("p=" + std::to_string(p) + " Lambda(p,0) vs lambda(p)",
                     big_lambda_brute(analysis.family(), p, 0, threads),
                     lambda_br(analysis.family(), p, threads)));
  }
  return c.finish();
}

namespace {

MonomialIdeal ideal_of(std::size_t d, std::initializer_list<std::vector<Exponent>> gens) {
  std::vector<Monomial> m;
  for (const auto& g : gens) m.emplace_back(g);
  return MonomialIdeal(d, m);
}

}  // namespace

std::vector<CorpusEntry> builtin_corpus() {
  const auto m2 = MonomialIdeal::maximal_power(2, 1);
  const auto m2sq = MonomialIdeal::maximal_power(2, 2);
  const auto x2_y = ideal_of(2, {{2, 0}, {0, 1}});
  const auto x_y2 = ideal_of(2, {{1, 0}, {0, 2}});
  std::vector<CorpusEntry> corpus;
  corpus.push_back({"line-pair", IdealFamily({ideal_of(1, {{1}}), ideal_of(1, {{1}})})});
  corpus.push_back({"line-nested", IdealFamily({ideal_of(1, {{2}}), ideal_of(1, {{1}})})});
  corpus.push_back({"line-chain",
                    IdealFamily({ideal_of(1, {{3}}), ideal_of(1, {{2}}), ideal_of(1, {{1}})})});
  corpus.push_back({"staircase", IdealFamily({ideal_of(2, {{2, 0}, {1, 1}, {0, 3}})})});
  corpus.push_back({"max-max", IdealFamily({m2, m2})});
  corpus.push_back({"max-maxsq", IdealFamily({m2, m2sq})});
  corpus.push_back({"maxsq-max", IdealFamily({m2sq, m2})});
  corpus.push_back({"swap-pair", IdealFamily({x2_y, x_y2})});
  corpus.push_back({"offset-pair", IdealFamily({ideal_of(2, {{3, 0}, {0, 1}}),
                                                ideal_of(2, {{2, 0}, {0, 3}})})});
  corpus.push_back({"sparse-pair", IdealFamily({ideal_of(2, {{3, 0}, {1, 1}, {0, 3}}),
                                                ideal_of(2, {{2, 0}, {0, 4}})})});
  corpus.push_back({"triple-mixed",
                    IdealFamily({x2_y, x_y2, ideal_of(2, {{2, 0}, {1, 1}, {0, 2}})})});
  corpus.push_back({"triple-chain", IdealFamily({ideal_of(2, {{4, 0}, {0, 2}}),
                                                 ideal_of(2, {{2, 0}, {1, 1}, {0, 2}}), m2})});
  corpus.push_back({"triple-equal", IdealFamily({x2_y, x2_y, x2_y})});
  corpus.push_back({"space-pair", IdealFamily({ideal_of(3, {{2, 0, 0}, {0, 1, 0}, {0, 0, 2}}),
                                               ideal_of(3, {{3, 0, 0}, {0, 2, 0}, {0, 0, 1}})})});
  return corpus;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "last-multiplicity", "mixed-sum",   "nested-chain",     "sequence-shape",
      "j-closed-form",     "delta-cells", "plus-containment", "plus-count",
      "top-stratum",       "fiber-count", "evaluators",       "colength-oracle",
      "lambda-q0"};
  return names;
}

CorpusResult run_corpus(const std::vector<CorpusEntry>& corpus, const CheckConfig& config,
                        const std::set<std::string>& which) {
  for (const auto& name : which) {
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
      throw std::invalid_argument("unknown check '" + name + "'");
    }
  }
  auto wanted = [&](const char* name) { return which.empty() || which.count(name) > 0; };
  const unsigned threads = config.extract.threads;

  CorpusResult result;
  auto push = [&](VerificationReport rep) {
    result.failures += rep.failures;
    result.reports.push_back(std::move(rep));
  };

  for (const auto& entry : corpus) {
    FamilyAnalysis analysis(entry.family, entry.name, config.extract);
    const std::size_t r = entry.family.count();

    // A budget failure is a computation failure, reported as a failing check.
    auto guarded = [&](const char* name, auto&& run) {
      try {
        push(run());
      } catch (const StabilizationFailure& e) {
        VerificationReport rep;
        rep.check = name;
        rep.family = entry.name;
        rep.verdict = Verdict::fail;
        rep.failures = 1;
        rep.note = std::string("stabilization failed: ") + e.what();
        push(std::move(rep));
      }
    };

    if (wanted("last-multiplicity"))
      guarded("last-multiplicity", [&] { return check_last_multiplicity(analysis); });
    if (wanted("mixed-sum")) guarded("mixed-sum", [&] { return check_mixed_sum(analysis); });
    if (wanted("nested-chain"))
      guarded("nested-chain", [&] { return check_nested_chain(analysis); });
    if (wanted("sequence-shape"))
      guarded("sequence-shape", [&] { return check_sequence_shape(analysis); });
    if (wanted("j-closed-form")) push(check_j_closed_form(entry.family, entry.name, config));
    if (wanted("evaluators")) push(check_evaluators(analysis, config));
    if (wanted("colength-oracle")) push(check_colength_oracle(entry.family, entry.name));
    if (wanted("lambda-q0")) push(check_lambda_q0(analysis, config));

    const bool any_sweep = wanted("delta-cells") || wanted("plus-containment") ||
                           wanted("plus-count") || wanted("top-stratum");
    if (!any_sweep) continue;
    std::map<std::string, VerificationReport> folded;
    auto fold = [&](VerificationReport rep) {
      auto it = folded.find(rep.check);
      if (it == folded.end()) {
        rep.family = entry.name;
        folded.emplace(rep.check, std::move(rep));
      } else {
        merge(it->second, std::move(rep));
      }
    };
    for (std::uint64_t p = 1; p <= config.p_max; ++p) {
      for (std::uint64_t q = (p + 1) * r; q <= config.q_max; ++q) {
        if (wanted("delta-cells")) fold(check_delta_cells(entry.family, entry.name, p, q, threads));
        if (wanted("plus-containment")) fold(check_plus_containment(entry.family, entry.name, p, q));
        if (wanted("top-stratum")) fold(check_top_stratum(entry.family, entry.name, p, q, threads));
        if (wanted("plus-count")) {
          for (std::size_t k = 1; k + 2 <= r; ++k) fold(check_plus_count(p, q, k, r));
          if (r < 3) {
            VerificationReport none;
            none.check = "plus-count";
            none.note = "needs 1 <= k <= r - 2";
            fold(std::move(none));
          }
        }
      }
    }
    for (const auto& name : check_names()) {
      auto it = folded.find(name);
      if (it != folded.end()) push(std::move(it->second));
    }
  }
  if (wanted("fiber-count")) {
    push(check_fiber_count(config.fiber_k_max, config.p_max, config.fiber_q_max));
  }
  return result;
}

}  // namespace brim
