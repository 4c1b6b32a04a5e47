#include "brim/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "brim/br_function.hpp"
#include "brim/errors.hpp"
#include "brim/family_file.hpp"
#include "brim/multiplicity.hpp"
#include "brim/theorems.hpp"

namespace brim {

namespace {

using nlohmann::ordered_json;

// Integers go out as decimal strings so consumers never truncate them.
ordered_json big(const BigInt& v) { return v.str(); }

ordered_json bases_json(const Extraction& e) {
  return ordered_json::array({e.first_base, e.second_base});
}

ordered_json extraction_json(const Extraction& e) {
  ordered_json trace = ordered_json::array();
  for (const auto& a : e.trace) trace.push_back({{"base", a.base}, {"value", big(a.value)}});
  return {{"value", big(e.value)}, {"bases", bases_json(e)}, {"trace", trace}};
}

std::string bases_text(const Extraction& e) {
  std::ostringstream os;
  auto one = [&](const std::vector<std::uint64_t>& b) {
    os << '(';
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << ')';
  };
  os << "bases ";
  one(e.first_base);
  os << ' ';
  one(e.second_base);
  return os.str();
}

ordered_json generators_json(const MonomialIdeal& ideal) {
  ordered_json gens = ordered_json::array();
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    auto g = ideal.generator(i);
    gens.push_back(std::vector<Exponent>(g.begin(), g.end()));
  }
  return gens;
}

std::string ideal_name(const FamilyFile& file, std::size_t j) {
  return file.names[j].empty() ? "I_" + std::to_string(j + 1) : file.names[j];
}

struct Common {
  unsigned threads = 1;
  unsigned budget = kDefaultBudget;
  bool json = false;

  ExtractOptions extract(bool force_brute = false) const {
    return {budget, threads, force_brute};
  }
};

int cmd_colength(const FamilyFile& file, const Common& common, std::ostream& out) {
  ordered_json doc{{"command", "colength"}, {"dim", file.dim}, {"ideals", ordered_json::array()}};
  for (std::size_t j = 0; j < file.ideals.size(); ++j) {
    const MonomialIdeal& ideal = file.ideals[j];
    ordered_json item{{"name", ideal_name(file, j)}, {"generators", generators_json(ideal)}};
    const bool primary = is_m_primary(ideal);
    item["m_primary"] = primary;
    std::ostringstream line;
    line << ideal_name(file, j) << " = " << ideal << ": ";
    if (!primary) {
      item["colength_box"] = nullptr;
      item["colength_incl_excl"] = nullptr;
      line << "not m-primary, colength infinite";
    } else {
      const BigInt box = colength_box(ideal);
      item["colength_box"] = big(box);
      line << "colength " << box;
      if (ideal.size() <= kInclExclMaxGens) {
        const BigInt ie = colength_incl_excl(ideal);
        item["colength_incl_excl"] = big(ie);
        line << " (inclusion-exclusion " << ie << ")";
        if (ie != box) {
          if (!common.json) out << line.str() << '\n';
          throw EvaluatorMismatch("colength algorithms disagree on " + ideal_name(file, j));
        }
      } else {
        item["colength_incl_excl"] = nullptr;
      }
    }
    doc["ideals"].push_back(item);
    if (!common.json) out << line.str() << '\n';
  }
  if (common.json) out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_multiplicity(const FamilyFile& file, const Common& common, std::ostream& out) {
  const IdealFamily family = file.family();
  ordered_json doc{{"command", "multiplicity"}, {"dim", family.dim()}, {"ideals", ordered_json::array()}};
  for (std::size_t j = 0; j < family.count(); ++j) {
    const Extraction e = hs_multiplicity(family[j], common.extract());
    ordered_json item = extraction_json(e);
    item["name"] = ideal_name(file, j);
    doc["ideals"].push_back(item);
    if (!common.json) {
      out << "e(" << ideal_name(file, j) << ") = " << e.value << "   " << bases_text(e) << '\n';
    }
  }
  if (family.count() > 1) {
    const Extraction e = hs_multiplicity(family.total_sum(), common.extract());
    doc["sum"] = extraction_json(e);
    if (!common.json) out << "e(sum) = " << e.value << "   " << bases_text(e) << '\n';
  }
  if (common.json) out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_mixed(const FamilyFile& file, const Common& common, std::ostream& out) {
  const IdealFamily family = file.family();
  const MixedMultiplicityTable table = mixed_multiplicities(family, common.extract());
  ordered_json doc{{"command", "mixed"}, {"dim", family.dim()}, {"count", family.count()},
                   {"entries", ordered_json::array()}};
  for (const auto& [i, e] : table.entries) {
    ordered_json item{{"index", std::vector<MultiIndex::value_type>(i.entries().begin(), i.entries().end())}};
    item.update(extraction_json(e));
    doc["entries"].push_back(item);
    if (!common.json) out << "e_" << i << " = " << e.value << "   " << bases_text(e) << '\n';
  }
  doc["total"] = big(table.total());
  if (common.json) out << doc.dump(2) << '\n';
  else out << "sum = " << table.total() << '\n';
  return kExitOk;
}

int cmd_br_function(const FamilyFile& file, const Common& common, std::uint64_t p_max,
                    std::uint64_t q_max, const std::string& method, std::ostream& out) {
  const IdealFamily family = file.family();
  const std::size_t r = family.count();
  const bool want_brute = method != "fast";
  const bool want_fast = method != "brute";
  ordered_json doc{{"command", "br-function"}, {"method", method}, {"p_max", p_max},
                   {"q_max", q_max}, {"rows", ordered_json::array()}};

  std::vector<std::vector<std::optional<BigInt>>> brute(p_max + 1), fast(p_max + 1);
  std::uint64_t compared = 0;
  std::uint64_t mismatches = 0;
  for (std::uint64_t p = 0; p <= p_max; ++p) {
    std::optional<FiberProfile> profile;
    if (want_fast) profile = fiber_profile(family, p, common.threads);
    for (std::uint64_t q = 0; q <= q_max; ++q) {
      std::optional<BigInt> b, f;
      if (want_brute) b = big_lambda_brute(family, p, q, common.threads);
      if (want_fast && in_region(p, q, r)) f = profile->evaluate(q);
      if (b && f) {
        ++compared;
        if (*b != *f) ++mismatches;
      }
      ordered_json row{{"p", p}, {"q", q}};
      row["brute"] = b ? big(*b) : ordered_json(nullptr);
      row["stratified"] = f ? big(*f) : ordered_json(nullptr);
      doc["rows"].push_back(row);
      brute[p].push_back(b);
      fast[p].push_back(f);
    }
  }
  doc["compared"] = compared;
  doc["mismatches"] = mismatches;

  if (common.json) {
    out << doc.dump(2) << '\n';
  } else {
    auto print_table = [&](const char* title,
                           const std::vector<std::vector<std::optional<BigInt>>>& cells) {
      std::size_t width = 4;
      for (const auto& row : cells)
        for (const auto& c : row)
          if (c) width = std::max(width, c->str().size() + 1);
      out << "Lambda(p,q) [" << title << "]\n" << std::setw(4) << "p\\q";
      for (std::uint64_t q = 0; q <= q_max; ++q) out << std::setw(static_cast<int>(width)) << q;
      out << '\n';
      for (std::uint64_t p = 0; p <= p_max; ++p) {
        out << std::setw(4) << p;
        for (const auto& c : cells[p]) {
          out << std::setw(static_cast<int>(width)) << (c ? c->str() : std::string("-"));
        }
        out << '\n';
      }
    };
    if (want_brute) print_table("brute", brute);
    if (want_fast) print_table("stratified, q >= (p+1)r", fast);
    if (want_brute && want_fast) {
      out << "cross-check: " << compared << " cells compared, " << mismatches << " mismatches\n";
    }
  }
  return mismatches == 0 ? kExitOk : kExitVerification;
}

int cmd_br_sequence(const FamilyFile& file, const Common& common, bool force_brute,
                    std::ostream& out) {
  const IdealFamily family = file.family();
  const MultiplicityReport report = br_multiplicity_sequence(family, common.extract(force_brute));
  ordered_json doc{{"command", "br-sequence"},
                   {"dim", family.dim()},
                   {"count", family.count()},
                   {"evaluator", force_brute ? "brute" : "stratified"},
                   {"stabilization", "two consecutive agreeing base points"},
                   {"sequence", ordered_json::array()}};
  for (std::size_t j = 0; j < report.sequence.size(); ++j) {
    ordered_json item{{"j", j}};
    item.update(extraction_json(report.sequence[j]));
    doc["sequence"].push_back(item);
  }
  doc["chain_holds"] = report.chain_holds();
  if (common.json) {
    out << doc.dump(2) << '\n';
  } else {
    out << "d = " << family.dim() << ", r = " << family.count() << '\n';
    for (std::size_t j = 0; j < report.sequence.size(); ++j) {
      out << "e^" << j << " = " << report.e(j) << "   " << bases_text(report.sequence[j])
          << " (p,q)\n";
    }
    out << "chain " << (report.chain_holds() ? "holds" : "VIOLATED") << '\n';
  }
  return kExitOk;
}

ordered_json report_json(const VerificationReport& rep) {
  ordered_json w = ordered_json::array();
  for (const auto& c : rep.witnesses) {
    w.push_back({{"label", c.label},
                 {"lhs", big(c.lhs)},
                 {"relation", to_string(c.relation)},
                 {"rhs", big(c.rhs)},
                 {"holds", c.holds}});
  }
  return {{"check", rep.check},   {"family", rep.family},     {"verdict", to_string(rep.verdict)},
          {"points", rep.points}, {"failures", rep.failures}, {"witnesses", w},
          {"note", rep.note}};
}

int cmd_verify(const std::vector<CorpusEntry>& corpus, const std::set<std::string>& which,
               const CheckConfig& config, const Common& common, std::ostream& out) {
  const CorpusResult result = run_corpus(corpus, config, which);
  if (common.json) {
    ordered_json doc{{"command", "verify"}, {"reports", ordered_json::array()}};
    for (const auto& rep : result.reports) doc["reports"].push_back(report_json(rep));
    doc["failures"] = result.failures;
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& rep : result.reports) {
      out << '[' << to_string(rep.verdict) << "] " << rep.check << "  " << rep.family << "  ("
          << rep.points << " points";
      if (rep.failures) out << ", " << rep.failures << " failed";
      out << ')';
      if (!rep.note.empty()) out << "  " << rep.note;
      out << '\n';
      for (const auto& c : rep.witnesses) {
        if (c.holds && rep.verdict != Verdict::fail) continue;
        out << "    " << (c.holds ? "ok  " : "FAIL") << ' ' << c.label << ": " << c.lhs << ' '
            << to_string(c.relation) << ' ' << c.rhs << '\n';
      }
    }
    out << result.reports.size() << " reports, " << result.failures << " failures\n";
  }
  return result.failures == 0 ? kExitOk : kExitVerification;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Buchsbaum-Rim functions and multiplicities of direct sums of cyclic modules "
               "defined by monomial ideals.",
               "brim"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "worker threads, 0 = one per core")
      ->capture_default_str();
  app.add_option("--budget", common.budget, "maximum base-point advances while stabilizing")
      ->capture_default_str();
  app.add_flag("--json", common.json, "machine-readable output");

  std::string path;
  bool allow_non_primary = false;

  auto* colength = app.add_subcommand("colength", "colength of every ideal, by both algorithms");
  colength->add_option("file", path, "family file")->required();
  colength->add_flag("--allow-non-primary", allow_non_primary, "accept ideals of infinite colength");

  auto* multiplicity = app.add_subcommand("multiplicity", "Hilbert-Samuel multiplicity of each ideal and of their sum");
  multiplicity->add_option("file", path, "family file")->required();

  auto* mixed = app.add_subcommand("mixed", "mixed multiplicities e_i, |i| = d");
  mixed->add_option("file", path, "family file")->required();

  std::uint64_t p_max = 3;
  std::uint64_t q_max = 12;
  bool use_brute = false, use_fast = false, use_both = false;
  auto* br_function = app.add_subcommand("br-function", "table of Lambda(p, q)");
  br_function->add_option("file", path, "family file")->required();
  br_function->add_option("--p-max", p_max)->capture_default_str();
  br_function->add_option("--q-max", q_max)->capture_default_str();
  auto* f_brute = br_function->add_flag("--brute", use_brute, "brute-force evaluator (default)");
  auto* f_fast = br_function->add_flag("--fast", use_fast, "stratified evaluator, q >= (p+1) r only");
  auto* f_both = br_function->add_flag("--both", use_both, "both, failing on any mismatch");
  f_brute->excludes(f_fast)->excludes(f_both);
  f_fast->excludes(f_both);

  bool force_brute = false;
  auto* br_sequence = app.add_subcommand("br-sequence", "multiplicity sequence e^0 .. e^{d+r-1}");
  br_sequence->add_option("file", path, "family file")->required();
  br_sequence->add_flag("--force-brute", force_brute, "evaluate Lambda by brute force");

  std::vector<std::string> positional;
  bool builtin = false;
  CheckConfig config;
  auto* verify = app.add_subcommand("verify", "run identity and inequality checks");
  verify->add_option("args", positional, "[FILE] [CHECK...]; CHECK is 'all' or a check name");
  verify->add_flag("--builtin-corpus", builtin, "use the built-in corpus instead of a file");
  verify->add_option("--p-max", config.p_max, "sweep bound on p")->capture_default_str();
  verify->add_option("--q-max", config.q_max, "sweep bound on q")->capture_default_str();
  verify->add_option("--samples", config.samples, "sampled points per family")->capture_default_str();
  verify->add_option("--seed", config.seed)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      std::vector<CorpusEntry> corpus;
      std::size_t first_check = 0;
      if (builtin) {
        corpus = builtin_corpus();
      } else {
        if (positional.empty()) throw CLI::ValidationError("verify", "needs FILE or --builtin-corpus");
        const FamilyFile file = load_family_file(positional[0]);
        corpus.push_back({file.path, file.family()});
        first_check = 1;
      }
      std::set<std::string> which;
      for (std::size_t i = first_check; i < positional.size(); ++i) {
        if (positional[i] == "all") continue;
        if (std::find(check_names().begin(), check_names().end(), positional[i]) ==
            check_names().end()) {
          throw CLI::ValidationError("verify", "unknown check '" + positional[i] + "'");
        }
        which.insert(positional[i]);
      }
      config.extract = common.extract();
      return cmd_verify(corpus, which, config, common, out);
    }

    const FamilyFile file = load_family_file(path, colength->parsed() && allow_non_primary);
    if (colength->parsed()) return cmd_colength(file, common, out);
    if (multiplicity->parsed()) return cmd_multiplicity(file, common, out);
    if (mixed->parsed()) return cmd_mixed(file, common, out);
    if (br_sequence->parsed()) return cmd_br_sequence(file, common, force_brute, out);
    if (br_function->parsed()) {
      const std::string method = use_both ? "both" : use_fast ? "fast" : "brute";
      return cmd_br_function(file, common, p_max, q_max, method, out);
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << path << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const StabilizationFailure& e) {
    err << "computation failed: " << e.what() << '\n';
    return kExitComputation;
  } catch (const EvaluatorMismatch& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const NotPrimary& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitUsage;
}

}  // namespace brim
