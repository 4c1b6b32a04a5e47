#include "brim/multiplicity.hpp"

#include <sstream>

#include "brim/errors.hpp"

namespace brim {

namespace {

std::string format_base(const std::vector<std::uint64_t>& base) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < base.size(); ++i) os << (i ? "," : "") << base[i];
  os << ')';
  return os.str();
}

// Memoizes an evaluator by argument; every extractor revisits stencil points.
Evaluator memoized(Evaluator f) {
  auto cache = std::make_shared<std::map<std::vector<std::uint64_t>, BigInt>>();
  return [f = std::move(f), cache](std::span<const std::uint64_t> x) -> BigInt {
    std::vector<std::uint64_t> key(x.begin(), x.end());
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
    BigInt v = f(x);
    cache->emplace(std::move(key), v);
    return v;
  };
}

}  // namespace

BigInt mixed_difference(const Evaluator& f, std::span<const unsigned> orders,
                        std::span<const std::uint64_t> base) {
  if (orders.size() != base.size()) {
    throw DimensionMismatch("mixed_difference: orders and base differ in length");
  }
  const std::size_t s = orders.size();
  std::vector<std::uint64_t> point(base.begin(), base.end());
  std::vector<unsigned> t(s, 0);
  BigInt acc = 0;
  while (true) {
    BigInt weight = 1;
    unsigned deficit = 0;
    for (std::size_t j = 0; j < s; ++j) {
      weight *= binomial(orders[j], t[j]);
      deficit += orders[j] - t[j];
      point[j] = base[j] + t[j];
    }
    const BigInt value = f(point);
    if (deficit % 2 == 0) acc += weight * value;
    else acc -= weight * value;

    std::size_t j = 0;
    while (j < s && t[j] == orders[j]) t[j++] = 0;
    if (j == s) break;
    ++t[j];
  }
  return acc;
}

Extraction stabilized_extract(const Evaluator& f, std::span<const unsigned> orders,
                              const BasePolicy& base_at, unsigned budget) {
  Extraction out;
  for (std::uint64_t step = 0; step <= budget; ++step) {
    auto base = base_at(step);
    BigInt v = mixed_difference(f, orders, base);
    out.trace.push_back({base, v});
    if (out.trace.size() >= 2) {
      const Attempt& prev = out.trace[out.trace.size() - 2];
      if (prev.value == v) {
        out.value = v;
        out.first_base = prev.base;
        out.second_base = std::move(base);
        return out;
      }
    }
  }
  std::ostringstream msg;
  msg << "no two consecutive bases agreed within " << budget << " advances; tried";
  for (const auto& a : out.trace) msg << ' ' << format_base(a.base) << "->" << a.value;
  throw StabilizationFailure(msg.str(), std::move(out.trace));
}

Extraction hs_multiplicity(const MonomialIdeal& ideal, const ExtractOptions& options) {
  if (!is_m_primary(ideal)) throw NotPrimary("hs_multiplicity: ideal is not m-primary");
  // Consecutive powers come from a growing ladder.
  auto powers = std::make_shared<std::vector<MonomialIdeal>>();
  powers->push_back(MonomialIdeal::unit(ideal.dim()));
  Evaluator f = memoized([powers, ideal](std::span<const std::uint64_t> x) {
    while (powers->size() <= x[0]) powers->push_back(ideal_product(powers->back(), ideal));
    return colength_box((*powers)[x[0]]);
  });
  const std::vector<unsigned> orders{static_cast<unsigned>(ideal.dim())};
  return stabilized_extract(
      f, orders, [](std::uint64_t step) { return std::vector<std::uint64_t>{1 + step}; },
      options.budget);
}

BigInt MixedMultiplicityTable::total() const {
  BigInt acc = 0;
  for (const auto& [i, e] : entries) acc += e.value;
  return acc;
}

MixedMultiplicityTable mixed_multiplicities(const IdealFamily& family,
                                            const ExtractOptions& options) {
  const std::size_t r = family.count();
  Evaluator f = memoized([&family](std::span<const std::uint64_t> x) {
    std::vector<MultiIndex::value_type> n(x.begin(), x.end());
    return colength_box(monomial_power_product(family, MultiIndex(std::move(n))));
  });
  MixedMultiplicityTable table;
  for_each_composition(r, family.dim(), [&](const MultiIndex& i) {
    std::vector<unsigned> orders(i.entries().begin(), i.entries().end());
    table.entries.emplace(i, stabilized_extract(
                                 f, orders,
                                 [r](std::uint64_t step) {
                                   return std::vector<std::uint64_t>(r, 1 + step);
                                 },
                                 options.budget));
    return true;
  });
  return table;
}

Extraction br_multiplicity(const IdealFamily& family, const ExtractOptions& options) {
  Evaluator f = memoized([&family, threads = options.threads](std::span<const std::uint64_t> x) {
    return lambda_br(family, x[0], threads);
  });
  const std::vector<unsigned> orders{static_cast<unsigned>(family.dim() + family.count() - 1)};
  return stabilized_extract(
      f, orders, [](std::uint64_t step) { return std::vector<std::uint64_t>{1 + step}; },
      options.budget);
}

bool MultiplicityReport::chain_holds() const {
  if (sequence.size() != dim + count || count == 0) return false;
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    if (e(j) < 0) return false;
    if (j > 0 && e(j) > e(j - 1)) return false;
    if (j >= count && e(j) != 0) return false;
  }
  return e(count - 1) > 0;
}

std::vector<std::uint64_t> lambda_stencil_base(std::size_t r, unsigned a, std::uint64_t step) {
  const std::uint64_t p0 = 1 + step;
  return {p0, r * (p0 + a + 1) + r};
}

MultiplicityReport br_multiplicity_sequence(LambdaTable& table, const ExtractOptions& options) {
  const IdealFamily& family = table.family();
  const std::size_t d = family.dim();
  const std::size_t r = family.count();
  const Method method = options.force_brute ? Method::brute : Method::stratified;
  Evaluator f = [&table, method](std::span<const std::uint64_t> x) {
    return table.value(x[0], x[1], method);
  };

  MultiplicityReport report;
  report.dim = d;
  report.count = r;
  const unsigned top = static_cast<unsigned>(d + r - 1);
  for (unsigned j = 0; j <= top; ++j) {
    const unsigned a = top - j;
    const std::vector<unsigned> orders{a, j};
    try {
      report.sequence.push_back(stabilized_extract(
          f, orders, [r, a](std::uint64_t step) { return lambda_stencil_base(r, a, step); },
          options.budget));
    } catch (const StabilizationFailure& e) {
      throw StabilizationFailure("e^" + std::to_string(j) + ": " + e.what(), e.trace());
    }
  }
  return report;
}

MultiplicityReport br_multiplicity_sequence(const IdealFamily& family,
                                            const ExtractOptions& options) {
  LambdaTable table(family, options.threads);
  return br_multiplicity_sequence(table, options);
}

}  // namespace brim
