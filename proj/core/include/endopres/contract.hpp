#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "endopres/treeauto.hpp"

namespace endo {

enum class Flag { trivial, nontrivial };

/// Triviality flags of every reduced word of length <= D.
struct FlagTable {
  unsigned D = 0;
  std::unordered_map<Word, Flag> flags;

  /// Throws InputError for words outside the table.
  Flag at(const Word& w) const;
};

/// Fixpoint flagging of the short words: moving the first level or having a
/// nontrivial section makes a word nontrivial, all-trivial sections make it
/// trivial, and whatever is still unknown at the end is trivial.
/// `sweep_seed` shuffles the order in which words are revisited.
FlagTable build_flag_table(const SelfSimilarSpec& spec, unsigned D,
                           std::optional<std::uint64_t> sweep_seed = std::nullopt);

/// Recursive word-problem solver for a contracting group. Memoizes verdicts
/// across calls.
class WordProblemSolver {
 public:
  WordProblemSolver(const SelfSimilarSpec& spec, FlagTable table, unsigned max_depth = 256);
  /// Uses spec.contraction_D; throws InputError if it is missing.
  explicit WordProblemSolver(const SelfSimilarSpec& spec);

  bool is_trivial(const Word& w);
  const FlagTable& table() const noexcept { return table_; }

 private:
  struct Verdict {
    bool trivial;
    std::size_t assumed;  // shallowest in-progress depth relied on, or npos
  };
  Verdict decide(const Word& w, std::size_t depth);

  const SelfSimilarSpec* spec_;
  FlagTable table_;
  unsigned max_depth_;
  std::unordered_map<Word, bool> memo_;
  std::unordered_map<Word, std::size_t> active_;
};

bool is_trivial(const SelfSimilarSpec& spec, const FlagTable& table, const Word& w);

struct ContractionCertificate {
  unsigned D = 0;
  unsigned checked_length = 0;
  std::size_t words_checked = 0;
  std::vector<Word> violations;
  /// Exhaustive up to checked_length only; this is evidence, not a proof.
  bool passed() const noexcept { return violations.empty(); }
};

/// Checks |normalize(w_i)| < |w| for every level-1 stabilizing normal-form
/// word w with D < |w| <= max_length.
ContractionCertificate check_contraction(const SelfSimilarSpec& spec, unsigned D,
                                         unsigned max_length, std::size_t max_violations = 16);

}  // namespace endo
