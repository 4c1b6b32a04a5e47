#include <gtest/gtest.h>

#include <random>

#include "brim/errors.hpp"
#include "brim/family_file.hpp"
#include "oracles.hpp"

using namespace brim;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_family_file(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return 0;
}

}  // namespace

TEST(FamilyFile, Examples) {
  const IdealFamily a = parse_family("vars 2\nideal\ngen 2 0\ngen 0 1\n");
  ASSERT_EQ(a.count(), 1u);
  EXPECT_TRUE(ideal_equals(a[0], MonomialIdeal(2, {Monomial{2, 0}, Monomial{0, 1}})));
  const IdealFamily b = parse_family("vars 1\nideal\ngen 1\nideal\ngen 1\n");
  ASSERT_EQ(b.count(), 2u);
  EXPECT_EQ(b.dim(), 1u);
  EXPECT_THROW(parse_family("vars 2\nideal\ngen 1 1\n"), ParseError);
}

TEST(FamilyFile, CommentsNamesAndRedundantGenerators) {
  const FamilyFile f = parse_family_file(
      "# header comment\n\nvars 2   # two variables\nideal first\n  gen 3 0\n gen 2 0\ngen 0 1\n"
      "ideal\ngen 1 0\ngen 0 2\n");
  ASSERT_EQ(f.ideals.size(), 2u);
  EXPECT_EQ(f.names[0], "first");
  EXPECT_EQ(f.names[1], "");
  EXPECT_EQ(f.ideals[0].size(), 2u);
  EXPECT_EQ(f.lines, (std::vector<std::size_t>{4, 8}));
}

TEST(FamilyFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("ideal\ngen 1\n"), 1u);
  EXPECT_EQ(error_line("vars 2\nideal\ngen 2 0\ngen 0\n"), 4u);
  EXPECT_EQ(error_line("vars 2\nideal\ngen 2 x\n"), 3u);
  EXPECT_EQ(error_line("vars 2\nvars 2\n"), 2u);
  EXPECT_EQ(error_line("vars 0\n"), 1u);
  EXPECT_EQ(error_line("vars 1\nideal\nideal\ngen 1\n"), 2u);
  EXPECT_EQ(error_line("vars 1\ngen 1\n"), 2u);
  EXPECT_EQ(error_line("vars 1\nideal\ngen 1\nfrobnicate\n"), 4u);
  EXPECT_EQ(error_line("vars 2\nideal\ngen 0 0\n"), 2u);
  EXPECT_EQ(error_line("vars 2\nideal\ngen 1 0\ngen 1 1\n"), 2u);
  EXPECT_EQ(error_line("vars 1\n"), 1u);
  EXPECT_EQ(error_line("vars 1\nideal\ngen -1\n"), 3u);
}

TEST(FamilyFile, NonPrimaryAllowedOnRequest) {
  const FamilyFile f = parse_family_file("vars 2\nideal\ngen 1 1\n", true);
  EXPECT_FALSE(is_m_primary(f.ideals[0]));
  EXPECT_THROW(f.family(), NotPrimary);
}

TEST(FamilyFile, MissingFile) {
  EXPECT_ANY_THROW(load_family_file("/nonexistent/family.txt"));
}

TEST(FamilyFile, RenderRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + trial % 3;
    std::vector<MonomialIdeal> ideals;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(trial % 4); ++j)
      ideals.push_back(oracle::random_primary(rng, d, 4, 3));
    const IdealFamily f(ideals);
    EXPECT_EQ(parse_family(render_family(f)), f);
    std::vector<std::string> names(f.count());
    for (std::size_t j = 0; j < names.size(); ++j) names[j] = "n" + std::to_string(j);
    const FamilyFile back = parse_family_file(render_family(f, names));
    EXPECT_EQ(back.names, names);
    EXPECT_EQ(back.family(), f);
  }
}
