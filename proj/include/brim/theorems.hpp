#ifndef BRIM_THEOREMS_HPP
#define BRIM_THEOREMS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "brim/br_function.hpp"
#include "brim/integer.hpp"
#include "brim/monomial.hpp"
#include "brim/multiplicity.hpp"

namespace brim {

enum class Verdict { pass, fail, inapplicable };
enum class Relation { equal, at_most, contained };

const char* to_string(Verdict v);
const char* to_string(Relation r);

/// One concrete comparison lhs (relation) rhs. For containment checks lhs and
/// rhs hold the two colengths and the label names the ideals.
struct Comparison {
  std::string label;
  BigInt lhs;
  BigInt rhs;
  Relation relation = Relation::equal;
  bool holds = false;
};

struct VerificationReport {
  std::string check;
  std::string family;
  Verdict verdict = Verdict::inapplicable;
  std::uint64_t points = 0;
  std::uint64_t failures = 0;
  /// Every comparison for single-identity checks; for sweeps, the failing
  /// points (capped) plus one passing example.
  std::vector<Comparison> witnesses;
  std::string note;
};

/// Shared, lazily computed pipelines for one family so the checks that need
/// the same multiplicities do not recompute them.
class FamilyAnalysis {
 public:
  FamilyAnalysis(IdealFamily family, std::string label, ExtractOptions options = {});

  const IdealFamily& family() const noexcept { return family_; }
  const std::string& label() const noexcept { return label_; }
  const ExtractOptions& options() const noexcept { return options_; }

  LambdaTable& table() { return table_; }
  const MultiplicityReport& sequence();
  const Extraction& br_multiplicity();
  const MixedMultiplicityTable& mixed();
  const Extraction& hs_of_sum();

 private:
  IdealFamily family_;
  std::string label_;
  ExtractOptions options_;
  LambdaTable table_;
  std::optional<MultiplicityReport> sequence_;
  std::optional<Extraction> br_;
  std::optional<MixedMultiplicityTable> mixed_;
  std::optional<Extraction> hs_sum_;
};

/// Sweep parameters. The (p, q) grid is 1 <= p <= p_max, (p+1) r <= q <= q_max.
struct CheckConfig {
  std::uint64_t p_max = 3;
  std::uint64_t q_max = 18;
  std::uint64_t fiber_q_max = 20;
  std::size_t fiber_k_max = 3;
  std::size_t samples = 200;
  std::uint64_t seed = 20240611;
  ExtractOptions extract;
};

/// e^{r-1}(C) equals e(I_1 + ... + I_r).
VerificationReport check_last_multiplicity(FamilyAnalysis& analysis);
/// e(C) equals the sum of the mixed multiplicities e_i, |i| = d.
VerificationReport check_mixed_sum(FamilyAnalysis& analysis);
/// For I_1 in ... in I_r: e^j(C) = e(R/I_{j+1} + ... + R/I_r) for j = 1..r-1.
VerificationReport check_nested_chain(FamilyAnalysis& analysis);
/// Sequence shape (non-increasing, zero from r on, e^{r-1} > 0) and e^0 from
/// Lambda equal to e(C) from lambda.
VerificationReport check_sequence_shape(FamilyAnalysis& analysis);

/// Closed-form and reduced J equal brute-force J on sampled n.
VerificationReport check_j_closed_form(const IdealFamily& family, const std::string& label,
                                       const CheckConfig& config);
/// Off the plus cells, Lambda restricted to a cell equals its fiber double sum
/// and is bounded by binom(q - (k-1) p - 1, k-1) lambda_L(p).
VerificationReport check_delta_cells(const IdealFamily& family, const std::string& label,
                                     std::uint64_t p, std::uint64_t q, unsigned threads = 1);
/// For n in a plus cell with small set A: (prod_{j in A} I_j)^p lies in J(n).
VerificationReport check_plus_containment(const IdealFamily& family, const std::string& label,
                                          std::uint64_t p, std::uint64_t q);
/// Direct count of the plus cell for A = {k+1..r} against its binomial bound.
VerificationReport check_plus_count(std::uint64_t p, std::uint64_t q, std::size_t k,
                                    std::size_t r);
/// Lambda on the top stratum k = r equals binom(q-(r-1)p-1, r-1) colength((sum I)^p).
VerificationReport check_top_stratum(const IdealFamily& family, const std::string& label,
                                     std::uint64_t p, std::uint64_t q, unsigned threads = 1);
/// count_fiber against enumeration for k <= k_max, p <= p_max, q <= q_max, m <= p.
VerificationReport check_fiber_count(std::size_t k_max, std::uint64_t p_max, std::uint64_t q_max);
/// Stratified and brute-force Lambda agree on the whole grid.
VerificationReport check_evaluators(FamilyAnalysis& analysis, const CheckConfig& config);
/// colength_box = colength_incl_excl on the family's ideals, their sum and squares.
VerificationReport check_colength_oracle(const IdealFamily& family, const std::string& label);
/// Lambda(p, 0) = lambda(p) for p <= p_max + 1.
VerificationReport check_lambda_q0(FamilyAnalysis& analysis, const CheckConfig& config);

struct CorpusEntry {
  std::string name;
  IdealFamily family;
};

/// Fourteen families over d in {1, 2, 3}, r in {1, 2, 3}.
std::vector<CorpusEntry> builtin_corpus();

/// Names accepted by run_corpus.
const std::vector<std::string>& check_names();

struct CorpusResult {
  std::vector<VerificationReport> reports;
  std::uint64_t failures = 0;
};

/// Runs the selected checks (empty set = all) on every family. Sweep checks
/// are folded into one report per family and check.
CorpusResult run_corpus(const std::vector<CorpusEntry>& corpus, const CheckConfig& config,
                        const std::set<std::string>& which = {});

}  // namespace brim

#endif  // BRIM_THEOREMS_HPP
