#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "endopres/bigint.hpp"
#include "endopres/words.hpp"

namespace endo {

/// Image array of a permutation of {0..n-1}: p[x] is the image of x.
using Permutation = std::vector<std::uint32_t>;

Permutation identity_permutation(std::size_t n);
bool is_identity(const Permutation& p);
Permutation inverse(const Permutation& p);
/// Right-action product: x^(pq) = q[p[x]].
Permutation compose(const Permutation& p, const Permutation& q);

/// Wreath recursion of one generator: x = i.rest is sent to top[i].(rest^sections[i]).
struct GeneratorRecursion {
  std::vector<Word> sections;
  Permutation top;

  bool operator==(const GeneratorRecursion&) const = default;
};

/// Rewriting rule lhs -> rhs, valid in the acting group, used to measure
/// word length in the group's word metric.
struct ReductionRule {
  Word lhs;
  Word rhs;

  bool operator==(const ReductionRule&) const = default;
};

/// A self-similar group on the rooted tree of the given degree.
struct SelfSimilarSpec {
  unsigned degree = 2;
  Alphabet alphabet;
  std::vector<GeneratorRecursion> recursion;  // one per generator
  std::optional<unsigned> contraction_D;
  std::vector<Word> branching;  // generators of the branching subgroup K
  std::vector<ReductionRule> reductions;

  void validate() const;
  bool operator==(const SelfSimilarSpec&) const = default;
};

/// Vertex of the tree as a path of 0-based digits.
struct TreeVertex {
  std::vector<std::uint32_t> path;

  std::size_t level() const noexcept { return path.size(); }
  bool operator==(const TreeVertex&) const = default;
};

TreeVertex act(const SelfSimilarSpec& spec, const Word& w, const TreeVertex& v);

struct WreathForm {
  std::vector<Word> sections;
  Permutation top;

  bool operator==(const WreathForm&) const = default;
};

/// Sections and top permutation of a word, composed by
/// (uv)_i = u_i v_{top_u(i)},  top_uv = top_u then top_v.
WreathForm wreath_decompose(const SelfSimilarSpec& spec, const Word& w);

/// Top permutation only (cheaper than the full decomposition).
Permutation top_permutation(const SelfSimilarSpec& spec, const Word& w);

struct LevelPermutation {
  unsigned level = 0;
  Permutation images;  // over lexicographically ordered vertices, big-endian base d

  bool is_identity() const { return endo::is_identity(images); }
  bool operator==(const LevelPermutation&) const = default;
};

/// Generator permutations on one level, cached for repeated word evaluation.
class LevelAction {
 public:
  LevelAction(const SelfSimilarSpec& spec, unsigned level, std::size_t max_points = std::size_t{1} << 24);

  unsigned level() const noexcept { return level_; }
  std::size_t points() const noexcept { return points_; }
  const Permutation& generator(std::uint32_t g, int sign = 1) const {
    return sign > 0 ? gens_[g] : inverses_[g];
  }
  LevelPermutation of(const Word& w) const;
  bool fixes_level(const Word& w) const;

 private:
  unsigned level_;
  std::size_t points_;
  std::vector<Permutation> gens_;
  std::vector<Permutation> inverses_;
};

LevelPermutation level_permutation(const SelfSimilarSpec& spec, const Word& w, unsigned n);

/// Recursive section walk deciding action on the first levels of the tree.
/// Independent of level permutation arrays; memoized across queries.
class SectionOracle {
 public:
  explicit SectionOracle(const SelfSimilarSpec& spec) : spec_(&spec) {}
  /// Least level <= max_level on which w acts nontrivially.
  std::optional<unsigned> first_nontrivial_level(const Word& w, unsigned max_level);
  bool acts_trivially_to(const Word& w, unsigned level) {
    return !first_nontrivial_level(w, level).has_value();
  }

 private:
  struct Entry {
    unsigned bound = 0;             // verified trivial on levels <= bound when value is empty
    std::optional<unsigned> value;  // exact least nontrivial level
  };
  const SelfSimilarSpec* spec_;
  std::unordered_map<Word, Entry> memo_;
};

std::optional<unsigned> first_nontrivial_level(const SelfSimilarSpec& spec, const Word& w,
                                               unsigned max_level);

/// Order of the permutation group generated by `gens` on n points, by a
/// deterministic stabilizer-chain (Schreier-Sims) computation.
BigInt permutation_group_order(std::span<const Permutation> gens, std::size_t n);

/// |G / stab_G(n)| as a permutation group on level n.
BigInt level_quotient_order(const SelfSimilarSpec& spec, unsigned n, std::size_t max_points = 59049);

/// Word-metric normal form: free reduction plus spec.reductions to a fixpoint.
Word normalize(const SelfSimilarSpec& spec, const Word& w);

}  // namespace endo
