#include "brim/monomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace brim {

namespace {

Exponent checked_add(Exponent a, Exponent b) {
  Exponent out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("exponent overflow");
  return out;
}

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw DimensionMismatch(std::string(where) + ": dimensions " + std::to_string(a) +
                            " and " + std::to_string(b));
  }
}

bool row_divides(const Exponent* a, const Exponent* b, std::size_t dim) {
  for (std::size_t j = 0; j < dim; ++j) {
    if (a[j] > b[j]) return false;
  }
  return true;
}

}  // namespace

Monomial Monomial::pure_power(std::size_t dim, std::size_t axis, Exponent degree) {
  std::vector<Exponent> e(dim, 0);
  e.at(axis) = degree;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  require_same_dim(dim(), other.dim(), "divides");
  return row_divides(exps_.data(), other.exps_.data(), dim());
}

Monomial Monomial::operator*(const Monomial& other) const {
  require_same_dim(dim(), other.dim(), "monomial product");
  std::vector<Exponent> e(dim());
  for (std::size_t j = 0; j < dim(); ++j) e[j] = checked_add(exps_[j], other.exps_[j]);
  return Monomial(std::move(e));
}

std::ostream& operator<<(std::ostream& os, const Monomial& m) {
  bool any = false;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    if (m[j] == 0) continue;
    if (any) os << '*';
    os << 'x' << (j + 1);
    if (m[j] > 1) os << '^' << m[j];
    any = true;
  }
  if (!any) os << '1';
  return os;
}

MonomialIdeal minimalize_flat(std::size_t dim, std::vector<Exponent> rows) {
  if (dim == 0) throw std::invalid_argument("minimalize: dimension must be positive");
  if (rows.empty()) throw std::invalid_argument("minimalize: empty generator set");
  if (rows.size() % dim != 0) throw DimensionMismatch("minimalize: ragged exponent rows");
  const std::size_t n = rows.size() / dim;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row = [&](std::size_t i) { return rows.data() + i * dim; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + dim, row(b), row(b) + dim);
  });

  // A divisor is lexicographically <= its multiple, so scanning in lex order
  // only needs to test against generators already kept.
  std::vector<Exponent> kept;
  kept.reserve(rows.size());
  if (dim == 2) {
    Exponent min_y = std::numeric_limits<Exponent>::max();
    bool first = true;
    for (std::size_t i : order) {
      const Exponent* g = row(i);
      if (first || g[1] < min_y) {
        kept.insert(kept.end(), g, g + 2);
        min_y = g[1];
        first = false;
      }
    }
  } else {
    for (std::size_t i : order) {
      const Exponent* g = row(i);
      bool redundant = false;
      for (std::size_t k = 0; k < kept.size(); k += dim) {
        if (row_divides(kept.data() + k, g, dim)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) kept.insert(kept.end(), g, g + dim);
    }
  }
  return MonomialIdeal(dim, std::move(kept));
}

MonomialIdeal minimalize(const std::vector<Monomial>& gens, std::size_t dim) {
  if (gens.empty()) throw std::invalid_argument("minimalize: empty generator set");
  std::vector<Exponent> rows;
  rows.reserve(gens.size() * dim);
  for (const auto& g : gens) {
    require_same_dim(g.dim(), dim, "minimalize");
    rows.insert(rows.end(), g.exponents().begin(), g.exponents().end());
  }
  return minimalize_flat(dim, std::move(rows));
}

MonomialIdeal::MonomialIdeal(std::size_t dim, const std::vector<Monomial>& gens)
    : MonomialIdeal(minimalize(gens, dim)) {}

MonomialIdeal::MonomialIdeal(const std::vector<Monomial>& gens)
    : MonomialIdeal(minimalize(gens, gens.empty() ? 0 : gens.front().dim())) {}

MonomialIdeal MonomialIdeal::unit(std::size_t dim) {
  return minimalize_flat(dim, std::vector<Exponent>(dim, 0));
}

MonomialIdeal MonomialIdeal::maximal_power(std::size_t dim, Exponent t) {
  std::vector<Monomial> vars;
  for (std::size_t j = 0; j < dim; ++j) vars.push_back(Monomial::pure_power(dim, j, 1));
  return ideal_power(MonomialIdeal(dim, vars), t);
}

std::vector<Monomial> MonomialIdeal::generators() const {
  std::vector<Monomial> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto g = generator(i);
    out.emplace_back(std::vector<Exponent>(g.begin(), g.end()));
  }
  return out;
}

bool MonomialIdeal::is_unit() const {
  return size() == 1 && std::all_of(flat_.begin(), flat_.end(), [](Exponent e) { return e == 0; });
}

std::ostream& operator<<(std::ostream& os, const MonomialIdeal& ideal) {
  os << '(';
  const auto gens = ideal.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) os << ", ";
    os << gens[i];
  }
  return os << ')';
}

bool contains(const MonomialIdeal& ideal, std::span<const Exponent> m) {
  require_same_dim(ideal.dim(), m.size(), "contains");
  const std::size_t d = ideal.dim();
  const Exponent* flat = ideal.flat().data();
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    if (row_divides(flat + i * d, m.data(), d)) return true;
  }
  return false;
}

bool contains(const MonomialIdeal& ideal, const Monomial& m) {
  return contains(ideal, m.exponents());
}

bool is_subideal(const MonomialIdeal& inner, const MonomialIdeal& outer) {
  require_same_dim(inner.dim(), outer.dim(), "is_subideal");
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!contains(outer, inner.generator(i))) return false;
  }
  return true;
}

std::optional<Exponent> pure_power_degree(const MonomialIdeal& ideal, std::size_t axis) {
  std::optional<Exponent> best;
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    auto g = ideal.generator(i);
    bool pure = true;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (j != axis && g[j] != 0) {
        pure = false;
        break;
      }
    }
    if (pure && (!best || g[axis] < *best)) best = g[axis];
  }
  return best;
}

bool is_m_primary(const MonomialIdeal& ideal) {
  for (std::size_t j = 0; j < ideal.dim(); ++j) {
    if (!pure_power_degree(ideal, j)) return false;
  }
  return true;
}

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a.dim(), b.dim(), "ideal_sum");
  std::vector<Exponent> rows(a.flat().begin(), a.flat().end());
  rows.insert(rows.end(), b.flat().begin(), b.flat().end());
  return minimalize_flat(a.dim(), std::move(rows));
}

MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a.dim(), b.dim(), "ideal_product");
  const std::size_t d = a.dim();
  std::vector<Exponent> rows;
  rows.reserve(a.size() * b.size() * d);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ga = a.generator(i);
    for (std::size_t k = 0; k < b.size(); ++k) {
      auto gb = b.generator(k);
      for (std::size_t j = 0; j < d; ++j) rows.push_back(checked_add(ga[j], gb[j]));
    }
  }
  return minimalize_flat(d, std::move(rows));
}

MonomialIdeal ideal_power(const MonomialIdeal& ideal, std::uint64_t a) {
  MonomialIdeal result = MonomialIdeal::unit(ideal.dim());
  MonomialIdeal base = ideal;
  while (a > 0) {
    if (a & 1u) result = ideal_product(result, base);
    a >>= 1;
    if (a > 0) base = ideal_product(base, base);
  }
  return result;
}

bool ideal_equals(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a.dim(), b.dim(), "ideal_equals");
  return a == b;
}

namespace {

std::vector<Exponent> primary_box(const MonomialIdeal& ideal, const char* who) {
  std::vector<Exponent> box(ideal.dim());
  for (std::size_t j = 0; j < ideal.dim(); ++j) {
    auto deg = pure_power_degree(ideal, j);
    if (!deg) {
      throw NotPrimary(std::string(who) + ": ideal has no pure power of x" +
                       std::to_string(j + 1) + " (infinite colength)");
    }
    box[j] = *deg;
  }
  return box;
}

constexpr std::uint64_t kMaxColumns = std::uint64_t{1} << 31;

}  // namespace

BigInt colength_box(const MonomialIdeal& ideal) {
  const auto box = primary_box(ideal, "colength_box");
  const std::size_t d = ideal.dim();
  if (d == 1) return BigInt(box[0]);

  // Columns are indexed by the first d-1 exponents; each holds the height of
  // the staircase along the last axis.
  const std::size_t base_dims = d - 1;
  std::uint64_t columns = 1;
  std::vector<std::uint64_t> stride(base_dims);
  for (std::size_t j = base_dims; j-- > 0;) {
    stride[j] = columns;
    columns *= box[j];
    if (columns > kMaxColumns) throw std::length_error("colength_box: box too large");
  }
  if (columns == 0) return 0;

  const Exponent last_cap = box[d - 1];
  std::vector<Exponent> height(columns, last_cap);
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    auto g = ideal.generator(i);
    std::uint64_t idx = 0;
    bool inside = true;
    for (std::size_t j = 0; j < base_dims; ++j) {
      if (g[j] >= box[j]) {
        inside = false;
        break;
      }
      idx += g[j] * stride[j];
    }
    if (inside) height[idx] = std::min(height[idx], g[d - 1]);
  }

  // Row-major order visits every predecessor a - e_j before a.
  std::vector<Exponent> coord(base_dims, 0);
  std::uint64_t total = 0;
  for (std::uint64_t idx = 0; idx < columns; ++idx) {
    Exponent h = height[idx];
    for (std::size_t j = 0; j < base_dims; ++j) {
      if (coord[j] > 0) h = std::min(h, height[idx - stride[j]]);
    }
    height[idx] = h;
    if (__builtin_add_overflow(total, std::uint64_t{h}, &total)) {
      throw std::overflow_error("colength_box: count overflow");
    }
    for (std::size_t j = base_dims; j-- > 0;) {
      if (++coord[j] < box[j]) break;
      coord[j] = 0;
    }
  }
  return BigInt(total);
}

namespace {

// Adds the signed cone counts of every subset extending `lcm` with generators
// from index `next` on. A cone that misses the box kills all its supersets.
void incl_excl(const MonomialIdeal& ideal, const std::vector<Exponent>& box,
               std::vector<Exponent>& lcm, std::size_t next, bool odd, BigInt& in_ideal) {
  const std::size_t d = ideal.dim();
  for (std::size_t i = next; i < ideal.size(); ++i) {
    auto g = ideal.generator(i);
    std::vector<Exponent> saved = lcm;
    bool empty = false;
    for (std::size_t j = 0; j < d; ++j) {
      lcm[j] = std::max(lcm[j], g[j]);
      if (lcm[j] >= box[j]) empty = true;
    }
    if (!empty) {
      BigInt cone = 1;
      for (std::size_t j = 0; j < d; ++j) cone *= (box[j] - lcm[j]);
      // Subset parity flips when generator i joins.
      if (!odd) in_ideal += cone;
      else in_ideal -= cone;
      incl_excl(ideal, box, lcm, i + 1, !odd, in_ideal);
    }
    lcm = std::move(saved);
  }
}

}  // namespace

BigInt colength_incl_excl(const MonomialIdeal& ideal) {
  const auto box = primary_box(ideal, "colength_incl_excl");
  if (ideal.size() > kInclExclMaxGens) {
    throw std::length_error("colength_incl_excl: more than " +
                            std::to_string(kInclExclMaxGens) + " generators");
  }
  BigInt volume = 1;
  for (Exponent n : box) volume *= n;
  if (volume == 0) return 0;
  BigInt in_ideal = 0;
  std::vector<Exponent> lcm(ideal.dim(), 0);
  incl_excl(ideal, box, lcm, 0, false, in_ideal);
  return volume - in_ideal;
}

IdealFamily::IdealFamily(std::vector<MonomialIdeal> ideals) : ideals_(std::move(ideals)) {
  if (ideals_.empty()) throw std::invalid_argument("IdealFamily: needs at least one ideal");
  dim_ = ideals_.front().dim();
  if (dim_ == 0) throw std::invalid_argument("IdealFamily: dimension must be positive");
  for (std::size_t j = 0; j < ideals_.size(); ++j) {
    require_same_dim(ideals_[j].dim(), dim_, "IdealFamily");
    if (!is_m_primary(ideals_[j])) {
      throw NotPrimary("IdealFamily: ideal " + std::to_string(j + 1) + " is not m-primary");
    }
    if (ideals_[j].is_unit()) {
      throw std::invalid_argument("IdealFamily: ideal " + std::to_string(j + 1) +
                                  " is the unit ideal");
    }
  }
}

MonomialIdeal IdealFamily::total_sum() const {
  MonomialIdeal acc = ideals_.front();
  for (std::size_t j = 1; j < ideals_.size(); ++j) acc = ideal_sum(acc, ideals_[j]);
  return acc;
}

IdealFamily IdealFamily::tail(std::size_t first) const {
  if (first >= ideals_.size()) throw std::out_of_range("IdealFamily::tail: empty tail");
  return IdealFamily(std::vector<MonomialIdeal>(ideals_.begin() + first, ideals_.end()));
}

std::ostream& operator<<(std::ostream& os, const IdealFamily& family) {
  os << '[';
  for (std::size_t j = 0; j < family.count(); ++j) {
    if (j) os << ", ";
    os << family[j];
  }
  return os << ']';
}

MonomialIdeal monomial_power_product(const IdealFamily& family, const MultiIndex& i) {
  if (i.size() != family.count()) {
    throw DimensionMismatch("monomial_power_product: index length " + std::to_string(i.size()) +
                            " for " + std::to_string(family.count()) + " ideals");
  }
  MonomialIdeal acc = MonomialIdeal::unit(family.dim());
  for (std::size_t j = 0; j < i.size(); ++j) {
    if (i[j] > 0) acc = ideal_product(acc, ideal_power(family[j], i[j]));
  }
  return acc;
}

}  // namespace brim
