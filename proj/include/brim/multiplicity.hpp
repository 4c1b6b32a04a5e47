#ifndef BRIM_MULTIPLICITY_HPP
#define BRIM_MULTIPLICITY_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "brim/br_function.hpp"
#include "brim/integer.hpp"
#include "brim/monomial.hpp"

namespace brim {

/// Integer-valued function on Z_{>=0}^s.
using Evaluator = std::function<BigInt(std::span<const std::uint64_t>)>;

/// Forward difference Delta_1^{o_1} ... Delta_s^{o_s} f at `base`:
///   sum_{t <= o} (-1)^{|o - t|} prod_j binom(o_j, t_j) f(base + t).
/// For a polynomial of total degree |o| this is o! times the coefficient of x^o.
BigInt mixed_difference(const Evaluator& f, std::span<const unsigned> orders,
                        std::span<const std::uint64_t> base);

struct Attempt {
  std::vector<std::uint64_t> base;
  BigInt value;
};

/// A stabilized difference together with the two agreeing bases and every
/// base tried on the way.
struct Extraction {
  BigInt value;
  std::vector<std::uint64_t> first_base;
  std::vector<std::uint64_t> second_base;
  std::vector<Attempt> trace;
};

class StabilizationFailure : public std::runtime_error {
 public:
  StabilizationFailure(const std::string& what, std::vector<Attempt> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<Attempt>& trace() const noexcept { return trace_; }

 private:
  std::vector<Attempt> trace_;
};

/// Base point for advance number `step` (0, 1, ...).
using BasePolicy = std::function<std::vector<std::uint64_t>(std::uint64_t step)>;

inline constexpr unsigned kDefaultBudget = 8;

/// Evaluates the difference at base_at(0), base_at(1), ... and returns the
/// first value seen at two consecutive bases. At most `budget` advances.
Extraction stabilized_extract(const Evaluator& f, std::span<const unsigned> orders,
                              const BasePolicy& base_at, unsigned budget = kDefaultBudget);

struct ExtractOptions {
  unsigned budget = kDefaultBudget;
  unsigned threads = 1;
  /// Evaluate Lambda by brute force even inside the stratified region.
  bool force_brute = false;
};

/// e(I): stabilized Delta^d of p -> colength(I^p), bases p = 1, 2, ...
Extraction hs_multiplicity(const MonomialIdeal& ideal, const ExtractOptions& options = {});

/// e_i(I_1, ..., I_r) for every |i| = d.
struct MixedMultiplicityTable {
  std::map<MultiIndex, Extraction> entries;

  BigInt total() const;
  const BigInt& at(const MultiIndex& i) const { return entries.at(i).value; }
};

/// Each e_i is the order-i mixed difference of n -> colength(I^n), stabilized
/// along the bases (1, ..., 1), (2, ..., 2), ...
MixedMultiplicityTable mixed_multiplicities(const IdealFamily& family,
                                            const ExtractOptions& options = {});

/// e(C): stabilized Delta^{d+r-1} of lambda_C, bases p = 1, 2, ...
Extraction br_multiplicity(const IdealFamily& family, const ExtractOptions& options = {});

/// e^0(C), ..., e^{d+r-1}(C).
struct MultiplicityReport {
  std::size_t dim = 0;
  std::size_t count = 0;
  std::vector<Extraction> sequence;

  const BigInt& e(std::size_t j) const { return sequence.at(j).value; }
  /// e^0 >= e^1 >= ... >= 0, e^j = 0 for j >= r and e^{r-1} > 0.
  bool chain_holds() const;
};

/// Base for a Lambda stencil of orders (a, b) at advance `step`:
/// p0 = 1 + step, q0 = r (p0 + a + 1) + r, so every stencil point has q >= (p+1) r.
std::vector<std::uint64_t> lambda_stencil_base(std::size_t r, unsigned a, std::uint64_t step);

/// e^j is the stabilized Delta_p^{d+r-1-j} Delta_q^j of Lambda.
MultiplicityReport br_multiplicity_sequence(LambdaTable& table, const ExtractOptions& options = {});
MultiplicityReport br_multiplicity_sequence(const IdealFamily& family,
                                            const ExtractOptions& options = {});

}  // namespace brim

#endif  // BRIM_MULTIPLICITY_HPP
