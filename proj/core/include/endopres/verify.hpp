#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "endopres/catalog.hpp"

namespace endo {

enum class Status { pass, fail, skip };

std::string_view to_string(Status s);

struct Check {
  std::string id;
  Status status = Status::pass;
  std::string detail;                  // what was checked, or why it was skipped
  std::vector<std::string> witness;    // offending words for a failure
  std::vector<std::pair<std::string, std::string>> evidence;
  std::vector<std::pair<std::string, std::string>> params;
};

struct VerificationReport {
  std::string entry;
  std::vector<Check> checks;

  bool failed() const;
};

/// Up to this many witnesses are kept per failing check.
inline constexpr std::size_t kMaxWitnesses = 8;

/// Elements of Z/2 wr Z: lit lamps and the lamplighter position.
struct LamplighterElement {
  std::set<long> lamps;
  long position = 0;

  bool is_identity() const noexcept { return lamps.empty() && position == 0; }
  bool operator==(const LamplighterElement&) const = default;
};

/// Evaluates a word over generators named a, b (lamp at the current
/// position) and t (move right).
LamplighterElement evaluate_lamplighter(const Word& w, const Alphabet& alphabet);

/// Images of the L-presentation generators in the tree model of the entry.
std::vector<Word> model_images(const CatalogEntry& e);

VerificationReport verify_relators_act_trivially(const CatalogEntry& e, std::size_t depth,
                                                 unsigned level);
/// Section claims, the conjugation table, and the relator families, all at `level`.
VerificationReport verify_conjugation_table(const CatalogEntry& e, unsigned level = 8);
VerificationReport cross_check_word_problem(const CatalogEntry& e, std::size_t samples,
                                            std::size_t max_length, std::uint64_t seed);
VerificationReport verify_abelianization(const CatalogEntry& e, std::size_t max_depth);
VerificationReport verify_level_orders(const CatalogEntry& e);
/// Shape of the enumerated relators where the source states it exactly:
/// lamplighter relators become a^2 and [a, a^(t^i)] once b = a, and zn(n)
/// relators are exactly the commutators of distinct generators.
VerificationReport verify_relator_form(const CatalogEntry& e, std::size_t depth);
VerificationReport verify_group_order(const CatalogEntry& e, std::size_t max_depth,
                                      std::size_t max_cosets);

/// Overrides for the per-entry defaults.
struct SuiteConfig {
  std::optional<std::size_t> depth;
  std::optional<unsigned> level;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> max_length;
  std::optional<std::size_t> max_cosets;
};

/// Every applicable check for each named entry, merged in entry order.
std::vector<VerificationReport> run_suite(const std::vector<std::string>& names,
                                          const SuiteConfig& config = {});

struct Mutation {
  std::string entry;
  std::string description;
  CatalogEntry mutated;
};

/// Fixed single-token faults: one generator appended to a relator or to an
/// endomorphism image, or one letter of a relator deleted.
std::vector<Mutation> catalog_mutations(const std::vector<std::string>& names);

struct MutationOutcome {
  std::string entry;
  std::string description;
  bool caught = false;
  std::string caught_by;
};

/// Runs the suite on each mutant with small parameters.
std::vector<MutationOutcome> run_mutation_harness(const std::vector<std::string>& names);

/// JSON array of {entry, check, status, witness?, detail, evidence, params}.
std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_text(const std::vector<VerificationReport>& reports);

}  // namespace endo
