#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "brim/errors.hpp"
#include "brim/multiplicity.hpp"
#include "oracles.hpp"

using namespace brim;

namespace {

MonomialIdeal ideal2(std::initializer_list<std::pair<Exponent, Exponent>> gens) {
  std::vector<Monomial> ms;
  for (auto [a, b] : gens) ms.push_back(Monomial{a, b});
  return MonomialIdeal(2, ms);
}

MonomialIdeal x_power(Exponent e) { return MonomialIdeal(1, {Monomial{e}}); }

const MonomialIdeal kM = ideal2({{1, 0}, {0, 1}});
const MonomialIdeal kA = ideal2({{2, 0}, {0, 1}});
const MonomialIdeal kB = ideal2({{1, 0}, {0, 2}});

// Twice the area under the Newton polygon of a plane monomial ideal. For
// monomial ideals this is e(I), read off the convex hull alone.
BigInt twice_covolume(const std::vector<std::vector<Exponent>>& gens) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (const auto& g : gens) pts.emplace_back(g[0], g[1]);
  std::sort(pts.begin(), pts.end());
  // Lower-left hull: x increasing, y strictly decreasing, convex.
  std::vector<std::pair<std::int64_t, std::int64_t>> hull;
  for (auto pt : pts) {
    if (!hull.empty() && pt.second >= hull.back().second) continue;
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      const std::int64_t cross = (x2 - x1) * (pt.second - y1) - (y2 - y1) * (pt.first - x1);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  // The polygon starts on the y-axis and ends on the x-axis for m-primary I.
  std::int64_t twice = 0;
  for (std::size_t i = 1; i < hull.size(); ++i)
    twice += (hull[i].first - hull[i - 1].first) * (hull[i].second + hull[i - 1].second);
  return twice;
}

BigInt newton_multiplicity(const MonomialIdeal& i) { return twice_covolume(oracle::rows(i)); }

}  // namespace

TEST(MixedDifference, Polynomials) {
  Evaluator sq = [](std::span<const std::uint64_t> x) { return BigInt(x[0] * x[0]); };
  Evaluator pq = [](std::span<const std::uint64_t> x) { return BigInt(x[0] * x[1]); };
  Evaluator sq_lin = [](std::span<const std::uint64_t> x) { return BigInt(x[0] * x[0] + x[0]); };
  const std::vector<unsigned> two{2}, one_one{1, 1};
  for (std::uint64_t b = 0; b < 5; ++b) {
    const std::vector<std::uint64_t> base{b}, base2{b, b + 3};
    EXPECT_EQ(mixed_difference(sq, two, base), 2);
    EXPECT_EQ(mixed_difference(pq, one_one, base2), 1);
  }
  EXPECT_EQ(mixed_difference(sq_lin, two, std::vector<std::uint64_t>{0}), 2);
  EXPECT_THROW(mixed_difference(sq, one_one, std::vector<std::uint64_t>{0}), DimensionMismatch);
}

TEST(MixedDifference, CoefficientTimesFactorial) {
  // 3 p^2 q^3 + lower terms: Delta_p^2 Delta_q^3 = 3 * 2! * 3! = 36.
  Evaluator f = [](std::span<const std::uint64_t> x) -> BigInt {
    const BigInt p = x[0], q = x[1];
    return 3 * p * p * q * q * q + 7 * p * q * q - 5 * q + 11;
  };
  const std::vector<unsigned> orders{2, 3};
  EXPECT_EQ(mixed_difference(f, orders, std::vector<std::uint64_t>{4, 9}), 36);
}

TEST(StabilizedExtract, EventuallyConstant) {
  Evaluator f = [](std::span<const std::uint64_t> x) { return BigInt(x[0] >= 3 ? 5 : x[0]); };
  const std::vector<unsigned> none{0};
  const Extraction e = stabilized_extract(
      f, none, [](std::uint64_t s) { return std::vector<std::uint64_t>{s}; });
  EXPECT_EQ(e.value, 5);
  EXPECT_EQ(e.first_base, std::vector<std::uint64_t>{3});
  EXPECT_EQ(e.second_base, std::vector<std::uint64_t>{4});
  EXPECT_EQ(e.trace.size(), 5u);
}

TEST(StabilizedExtract, BudgetExhaustion) {
  Evaluator f = [](std::span<const std::uint64_t> x) { return BigInt(x[0]); };
  const std::vector<unsigned> none{0};
  try {
    stabilized_extract(f, none, [](std::uint64_t s) { return std::vector<std::uint64_t>{s}; }, 4);
    FAIL() << "expected StabilizationFailure";
  } catch (const StabilizationFailure& e) {
    EXPECT_EQ(e.trace().size(), 5u);
  }
}

TEST(StabilizedExtract, PolynomialStabilizesImmediately) {
  Evaluator f = [](std::span<const std::uint64_t> x) {
    return colength_box(MonomialIdeal::maximal_power(2, static_cast<Exponent>(x[0])));
  };
  const std::vector<unsigned> two{2};
  const Extraction e = stabilized_extract(
      f, two, [](std::uint64_t s) { return std::vector<std::uint64_t>{1 + s}; });
  EXPECT_EQ(e.value, 1);
  EXPECT_EQ(e.first_base, std::vector<std::uint64_t>{1});
  EXPECT_EQ(e.second_base, std::vector<std::uint64_t>{2});
}

TEST(HilbertSamuel, Examples) {
  EXPECT_EQ(hs_multiplicity(kM).value, 1);
  EXPECT_EQ(hs_multiplicity(kA).value, 2);
  EXPECT_EQ(hs_multiplicity(ideal_power(kM, 2)).value, 4);
  EXPECT_EQ(hs_multiplicity(x_power(5)).value, 5);
  EXPECT_EQ(hs_multiplicity(MonomialIdeal::maximal_power(3, 2)).value, 8);
  EXPECT_THROW(hs_multiplicity(ideal2({{1, 1}, {2, 0}})), NotPrimary);
}

TEST(HilbertSamuel, ScalesUnderPowers) {
  const MonomialIdeal c = ideal2({{3, 0}, {1, 1}, {0, 2}});
  const BigInt e = hs_multiplicity(c).value;
  for (std::uint64_t a = 1; a <= 3; ++a) EXPECT_EQ(hs_multiplicity(ideal_power(c, a)).value, a * a * e);
}

TEST(HilbertSamuel, MatchesNewtonPolygonOnRandomPlaneIdeals) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const MonomialIdeal i = oracle::random_primary(rng, 2, 5, 3);
    EXPECT_EQ(hs_multiplicity(i).value, newton_multiplicity(i)) << i;
  }
}

TEST(HilbertSamuel, DiagonalIdealsInThreeVariables) {
  // e((x^a, y^b, z^c)) = abc.
  const MonomialIdeal i(3, {Monomial{2, 0, 0}, Monomial{0, 3, 0}, Monomial{0, 0, 1}});
  EXPECT_EQ(hs_multiplicity(i).value, 6);
}

TEST(Mixed, Examples) {
  const auto mm = mixed_multiplicities(IdealFamily({kM, kM}));
  EXPECT_EQ(mm.at({2, 0}), 1);
  EXPECT_EQ(mm.at({1, 1}), 1);
  EXPECT_EQ(mm.at({0, 2}), 1);
  const auto msq = mixed_multiplicities(IdealFamily({kM, ideal_power(kM, 2)}));
  EXPECT_EQ(msq.at({2, 0}), 1);
  EXPECT_EQ(msq.at({1, 1}), 2);
  EXPECT_EQ(msq.at({0, 2}), 4);
  EXPECT_EQ(msq.total(), 7);
  const auto single = mixed_multiplicities(IdealFamily({kA}));
  ASSERT_EQ(single.entries.size(), 1u);
  EXPECT_EQ(single.at({2}), hs_multiplicity(kA).value);
}

TEST(Mixed, MatchesNewtonPolygonsOnRandomPairs) {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 12; ++trial) {
    const MonomialIdeal a = oracle::random_primary(rng, 2, 4, 2);
    const MonomialIdeal b = oracle::random_primary(rng, 2, 4, 2);
    const auto t = mixed_multiplicities(IdealFamily({a, b}));
    const BigInt ea = newton_multiplicity(a), eb = newton_multiplicity(b);
    const BigInt eab = twice_covolume(oracle::product_rows(oracle::rows(a), oracle::rows(b)));
    EXPECT_EQ(t.at({2, 0}), ea);
    EXPECT_EQ(t.at({0, 2}), eb);
    EXPECT_EQ(2 * t.at({1, 1}), eab - ea - eb) << a << " " << b;
  }
}

TEST(BuchsbaumRim, Examples) {
  EXPECT_EQ(br_multiplicity(IdealFamily({x_power(1), x_power(1)})).value, 2);
  EXPECT_EQ(br_multiplicity(IdealFamily({kM, kM})).value, 3);
  EXPECT_EQ(br_multiplicity(IdealFamily({kM, ideal_power(kM, 2)})).value, 7);
  EXPECT_EQ(br_multiplicity(IdealFamily({kA})).value, hs_multiplicity(kA).value);
}

TEST(Sequence, LineClosedForm) {
  const auto rep = br_multiplicity_sequence(IdealFamily({x_power(1), x_power(1)}));
  ASSERT_EQ(rep.sequence.size(), 3u);
  EXPECT_EQ(rep.e(0), 2);
  EXPECT_EQ(rep.e(1), 1);
  EXPECT_EQ(rep.e(2), 0);
  EXPECT_TRUE(rep.chain_holds());
}

TEST(Sequence, SingleIdealHasOnlyLeadingTerm) {
  const auto rep = br_multiplicity_sequence(IdealFamily({kA}));
  ASSERT_EQ(rep.sequence.size(), 3u);
  EXPECT_EQ(rep.e(0), 2);
  EXPECT_EQ(rep.e(1), 0);
  EXPECT_EQ(rep.e(2), 0);
}

TEST(Sequence, NonNestedPair) {
  const auto rep = br_multiplicity_sequence(IdealFamily({kA, kB}));
  EXPECT_EQ(rep.e(1), 1);
  EXPECT_EQ(rep.e(0), 5);
  EXPECT_TRUE(rep.chain_holds());
}

TEST(Sequence, LinePowersAreTailSums) {
  // In one variable the sequence of (x^{a_1}), ..., (x^{a_r}) with a sorted
  // decreasingly is e^j = a_{j+1} + ... + a_r.
  const std::vector<std::vector<Exponent>> cases{{1, 1}, {2, 1}, {1, 3}, {3, 1, 2}, {2, 2, 2}};
  for (auto a : cases) {
    std::vector<MonomialIdeal> ideals;
    for (auto v : a) ideals.push_back(x_power(v));
    const auto rep = br_multiplicity_sequence(IdealFamily(ideals));
    std::sort(a.begin(), a.end(), std::greater<>());
    for (std::size_t j = 0; j < a.size(); ++j) {
      EXPECT_EQ(rep.e(j), std::accumulate(a.begin() + j, a.end(), 0u)) << j;
    }
    EXPECT_EQ(rep.e(a.size()), 0);
  }
}

TEST(Sequence, ForcedBruteForceAgrees) {
  const IdealFamily f({kA, kB});
  const auto fast = br_multiplicity_sequence(f);
  const auto brute = br_multiplicity_sequence(f, {kDefaultBudget, 1, true});
  for (std::size_t j = 0; j < fast.sequence.size(); ++j) EXPECT_EQ(fast.e(j), brute.e(j));
}

TEST(Sequence, StencilsStayInRegion) {
  for (std::size_t r = 1; r <= 3; ++r)
    for (unsigned a = 0; a <= 4; ++a)
      for (std::uint64_t step = 0; step <= 8; ++step) {
        const auto base = lambda_stencil_base(r, a, step);
        for (unsigned s = 0; s <= a; ++s) EXPECT_TRUE(in_region(base[0] + s, base[1], r));
      }
}

TEST(Sequence, TinyBudgetFails) {
  EXPECT_THROW(br_multiplicity_sequence(IdealFamily({kA, kB}), {0, 1, false}), StabilizationFailure);
}
