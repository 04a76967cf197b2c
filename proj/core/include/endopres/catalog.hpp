#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "endopres/bigint.hpp"
#include "endopres/coset.hpp"
#include "endopres/dsl.hpp"

namespace endo {

/// Where a fixture value comes from: read off the source theorem, or computed
/// here by an oracle and frozen.
enum class Origin { stated, derived };

std::string_view to_string(Origin o);

struct NamedWord {
  std::string name;
  Word word;
};

/// Claimed first-level decomposition (w_1, ..., w_d) with trivial top.
struct SectionClaim {
  std::string element;
  std::vector<Word> sections;
};

/// k^s = expected, with k one of the table elements and s a signed generator.
struct ConjugationIdentity {
  std::string element;
  Word conjugator;  // over the L-presentation alphabet
  Word expected;    // over the table alphabet
  Origin origin = Origin::stated;
};

/// Normal generators of a level-1 stabilizer and of its derived subgroup,
/// with the conjugation table and Schreier relator families over them.
struct ConjugationData {
  std::vector<NamedWord> stabilizer;  // alpha..delta over the L alphabet
  std::vector<NamedWord> elements;    // e..h over the L alphabet
  std::vector<SectionClaim> sections;
  Alphabet table_alphabet;            // names of `elements`
  Alphabet family_alphabet;           // names of `stabilizer`
  std::vector<ConjugationIdentity> table;
  /// k^s is evaluated as s k s^-1 when true.
  bool conjugate_left = false;

  /// k^s rewritten as a word over the L alphabet.
  Word table_relator(const ConjugationIdentity& id) const;
  /// Relators over family_alphabet for |n| <= max_n and w over the table.
  std::vector<Word> schreier_relators(long max_n) const;
};

enum class DirectModel { lamplighter };

struct LevelOrder {
  unsigned level = 0;
  BigInt order;
  Origin origin = Origin::derived;
};

struct Fixtures {
  std::optional<AbelianInvariants> abelianization;  // derived by SNF
  std::vector<LevelOrder> level_orders;
  std::optional<std::size_t> group_order;
};

/// Per-entry parameters sized for a fast full suite.
struct Defaults {
  std::size_t depth = 4;
  unsigned level = 8;
  std::size_t abelian_depth = 5;
  std::size_t wp_samples = 200;
  std::size_t wp_max_length = 15;
  std::uint64_t seed = 20240601;
  std::size_t max_cosets = 100000;
};

struct CatalogEntry {
  std::string name;
  std::string title;
  GroupFile group;
  std::optional<DirectModel> direct_model;
  bool enumeration_only = false;
  Fixtures fixtures;
  Defaults defaults;
  std::optional<ConjugationData> conjugation;
  std::vector<std::string> notes;

  const LPresentation& lpres() const noexcept { return group.lpres; }
  const std::optional<SelfSimilarSpec>& recursion() const noexcept { return group.recursion; }
  std::optional<unsigned> contraction_D() const {
    return group.recursion ? group.recursion->contraction_D : std::nullopt;
  }
};

/// Entry by name: fixed names, or sym(n), sym-transpositions(n), zn(n) for
/// n >= 2. Throws InputError on unknown names.
const CatalogEntry& get_entry(std::string_view name);

/// Fixed entries followed by the default instances of parameterized ones.
const std::vector<std::string>& entry_names();

/// DSL text of a fixed entry as stored in the catalog.
std::optional<std::string_view> entry_source(std::string_view name);

/// DSL group identifier for a catalog name: sym(4) -> sym_4.
std::string dsl_name(std::string_view name);

CatalogEntry make_sym(unsigned n);
CatalogEntry make_sym_transpositions(unsigned n);
CatalogEntry make_zn(unsigned n);

/// Shortlex-least minimal-length word over the Coxeter generators
/// (i, i+1) of Sym(n) representing each transposition (i, j); keyed by
/// i * n + j with 0-based i < j.
std::vector<Word> sym_transposition_words(unsigned n);

}  // namespace endo
