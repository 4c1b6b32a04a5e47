#ifndef BRIM_MONOMIAL_HPP
#define BRIM_MONOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "brim/errors.hpp"
#include "brim/integer.hpp"
#include "brim/multi_index.hpp"

namespace brim {

/// Exponent of a single variable. Addition is overflow checked.
using Exponent = std::uint32_t;

/// x_1^{a_1} ... x_d^{a_d}, stored as its exponent vector.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Exponent> exponents) : exps_(std::move(exponents)) {}
  Monomial(std::initializer_list<Exponent> exponents) : exps_(exponents) {}

  /// The monomial 1 in d variables.
  static Monomial one(std::size_t dim) { return Monomial(std::vector<Exponent>(dim, 0)); }
  /// x_axis^degree in d variables.
  static Monomial pure_power(std::size_t dim, std::size_t axis, Exponent degree);

  std::size_t dim() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t j) const { return exps_[j]; }
  std::span<const Exponent> exponents() const noexcept { return exps_; }

  /// Componentwise <=.
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> exps_;
};

std::ostream& operator<<(std::ostream& os, const Monomial& m);

/// A monomial ideal held by its minimal generators.
///
/// Generators are stored row-major in a flat buffer, form a divisibility
/// antichain and are sorted lexicographically, so two ideals are equal
/// exactly when their buffers are. Instances are immutable.
class MonomialIdeal {
 public:
  /// Unit ideal (1) in d variables.
  static MonomialIdeal unit(std::size_t dim);
  /// (x_1, ..., x_d)^t.
  static MonomialIdeal maximal_power(std::size_t dim, Exponent t);

  /// Minimalizes `gens`; all must have `dim` exponents.
  MonomialIdeal(std::size_t dim, const std::vector<Monomial>& gens);
  /// Same, dimension taken from the first generator.
  explicit MonomialIdeal(const std::vector<Monomial>& gens);
  MonomialIdeal(std::initializer_list<Monomial> gens)
      : MonomialIdeal(std::vector<Monomial>(gens)) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : flat_.size() / dim_; }
  std::span<const Exponent> generator(std::size_t i) const {
    return {flat_.data() + i * dim_, dim_};
  }
  std::vector<Monomial> generators() const;
  std::span<const Exponent> flat() const noexcept { return flat_; }

  bool is_unit() const;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  MonomialIdeal(std::size_t dim, std::vector<Exponent> minimal_flat)
      : dim_(dim), flat_(std::move(minimal_flat)) {}
  friend MonomialIdeal minimalize_flat(std::size_t dim, std::vector<Exponent> rows);

  std::size_t dim_ = 0;
  std::vector<Exponent> flat_;
};

std::ostream& operator<<(std::ostream& os, const MonomialIdeal& ideal);

/// Minimal generators of the ideal generated by `gens`.
MonomialIdeal minimalize(const std::vector<Monomial>& gens, std::size_t dim);
/// Same, from row-major exponent rows of width `dim`.
MonomialIdeal minimalize_flat(std::size_t dim, std::vector<Exponent> rows);

bool contains(const MonomialIdeal& ideal, const Monomial& m);
bool contains(const MonomialIdeal& ideal, std::span<const Exponent> m);
/// I is a subset of J: every generator of I lies in J.
bool is_subideal(const MonomialIdeal& inner, const MonomialIdeal& outer);
/// Some pure power of every variable is a generator.
bool is_m_primary(const MonomialIdeal& ideal);

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b);
/// Repeated squaring; a = 0 gives the unit ideal.
MonomialIdeal ideal_power(const MonomialIdeal& ideal, std::uint64_t a);
bool ideal_equals(const MonomialIdeal& a, const MonomialIdeal& b);

/// Smallest degree of a pure power of x_axis among the generators, if any.
std::optional<Exponent> pure_power_degree(const MonomialIdeal& ideal, std::size_t axis);

/// Number of standard monomials, counted column by column over the box
/// spanned by the pure-power degrees.
BigInt colength_box(const MonomialIdeal& ideal);
/// Number of standard monomials by inclusion-exclusion over lcm-cones of
/// generator subsets. Limited to kInclExclMaxGens generators.
BigInt colength_incl_excl(const MonomialIdeal& ideal);
inline constexpr std::size_t kInclExclMaxGens = 20;

/// The r ideals I_1, ..., I_r defining C = R/I_1 + ... + R/I_r (direct sum).
class IdealFamily {
 public:
  /// Every ideal must be m-primary, proper and of the same dimension.
  explicit IdealFamily(std::vector<MonomialIdeal> ideals);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t count() const noexcept { return ideals_.size(); }
  const MonomialIdeal& operator[](std::size_t j) const { return ideals_[j]; }
  const std::vector<MonomialIdeal>& ideals() const noexcept { return ideals_; }

  /// I_1 + ... + I_r.
  MonomialIdeal total_sum() const;
  /// The family (I_first, ..., I_r), zero based.
  IdealFamily tail(std::size_t first) const;

  friend bool operator==(const IdealFamily&, const IdealFamily&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<MonomialIdeal> ideals_;
};

std::ostream& operator<<(std::ostream& os, const IdealFamily& family);

/// I_1^{i_1} ... I_r^{i_r}.
MonomialIdeal monomial_power_product(const IdealFamily& family, const MultiIndex& i);

}  // namespace brim

#endif  // BRIM_MONOMIAL_HPP
