#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "endopres/words.hpp"

namespace endo {

/// Endomorphic presentation <S | Q | Phi | R>: F_S modulo the normal closure
/// of Q together with phi(R) for every phi in the monoid generated by Phi.
struct LPresentation {
  Alphabet alphabet;
  std::vector<Word> fixed;             // Q
  std::vector<Endomorphism> endos;     // Phi
  std::vector<Word> iterated;          // R

  bool ascending() const noexcept { return fixed.empty(); }
  bool is_finite_presentation() const noexcept { return endos.empty(); }

  /// Throws InputError if any word or image leaves the alphabet.
  void validate() const;

  bool operator==(const LPresentation&) const = default;
};

struct FinitePresentation {
  Alphabet alphabet;
  std::vector<Word> relators;

  bool operator==(const FinitePresentation&) const = default;
};

/// <S | R> viewed as an L-presentation with R fixed.
LPresentation as_lpresentation(const FinitePresentation& p);

enum class DedupMode { exact, cyclic };

/// Breadth-first walk over Phi^*, one composition length per step.
class RelatorEnumerator {
 public:
  RelatorEnumerator(const LPresentation& L, DedupMode mode);

  /// Depth reached so far; 0 after construction (Q and R emitted).
  std::size_t depth() const noexcept { return depth_; }
  /// Applies every endomorphism to the current frontier.
  void advance();
  bool exhausted() const noexcept { return frontier_.empty(); }
  /// Emitted relators in emission order.
  const std::vector<Word>& emitted() const noexcept { return emitted_; }
  /// Number of relators emitted up to each depth (index = depth).
  const std::vector<std::size_t>& counts_by_depth() const noexcept { return counts_; }

 private:
  bool emit(const Word& w);
  bool queue(const Word& w);

  const LPresentation* L_;
  DedupMode mode_;
  std::size_t depth_ = 0;
  std::vector<Word> frontier_;
  std::vector<Word> emitted_;
  std::unordered_set<Word> seen_;
  std::unordered_set<Word> expanded_;
  std::vector<std::size_t> counts_;
};

/// Q together with phi(r) for r in R and phi a composition of at most `depth`
/// endomorphisms, deduplicated, trivial words dropped.
std::vector<Word> enumerate_relators(const LPresentation& L, std::size_t depth,
                                     DedupMode mode = DedupMode::exact);

FinitePresentation truncate(const LPresentation& L, std::size_t depth,
                            DedupMode mode = DedupMode::exact);

// ---------------------------------------------------------------- Tietze moves

/// Replace generator `gen` by new_name := gen * other^sign.
struct SubstituteMove {
  std::string gen;
  std::string other;
  int sign = 1;
  std::string new_name;
};
/// Add a generator together with the relator `name`.
struct AddGeneratorMove {
  std::string name;
};
/// Delete a generator that appears as a relator.
struct RemoveGeneratorMove {
  std::string name;
};
using TietzeMove = std::variant<SubstituteMove, AddGeneratorMove, RemoveGeneratorMove>;

LPresentation change_generators(const LPresentation& L, const std::vector<TietzeMove>& moves);

// ---------------------------------------------------------------- combinators

/// Alphabet of `right` renamed away from `left` by numeric suffixes; returns
/// the new names in order.
std::vector<std::string> disjoint_names(const Alphabet& left, const Alphabet& right);

LPresentation free_product(const LPresentation& L1, const LPresentation& L2);

struct HnnGenerator {
  Word word;   // subgroup generator t, over S
  Word image;  // psi(t), over S
};

/// Adds the stable letter `stable` with fixed relators psi(t)^-1 t^stable.
LPresentation hnn_extension(const LPresentation& L, const std::vector<HnnGenerator>& gens,
                            const std::string& stable = "p");

/// Lift data for an extension 1 -> G -> X -> H -> 1.
struct ExtensionData {
  std::vector<Word> relator_lifts;  // g_p over S, one per fixed relator p of H
  /// g_{s,t} over S keyed by (s index in G, t index in H)
  std::map<std::pair<std::uint32_t, std::uint32_t>, Word> conjugates;
};

LPresentation group_extension(const LPresentation& G, const LPresentation& H,
                              const ExtensionData& lifts, bool split);

/// G wr H for abelian G (not checked): generators S, T, and a copy sb of each s.
LPresentation wreath_product(const LPresentation& G, const LPresentation& H);

LPresentation quotient(const LPresentation& L, const std::vector<Word>& extra);

/// Generator permutations on cosets: action[g][i] = coset of (coset i) * g.
using CosetAction = std::vector<std::vector<std::uint32_t>>;

struct SubgroupPresentation {
  LPresentation lpres;
  std::vector<Word> generator_words;  // each Schreier generator as a word over S
  /// (coset, generator) -> Schreier generator index, absent for tree edges
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> schreier_index;
};

/// Reidemeister-Schreier rewriting over a Schreier (prefix-closed) transversal.
SubgroupPresentation subgroup_presentation(const LPresentation& L, const CosetAction& action,
                                           const std::vector<Word>& transversal);

/// Finite presentation of the ascending HNN extension by one stable letter
/// per endomorphism: R together with phi^-1 s phi phi(s)^-1.
FinitePresentation hnn_embed(const LPresentation& L);

/// Relatively free group on X in the variety of `identity` (a word over Y).
LPresentation relatively_free(const Alphabet& X, const Alphabet& Y, const Word& identity);

}  // namespace endo
