#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "endopres/lpres.hpp"
#include "endopres/treeauto.hpp"

namespace endo {

/// Named word over the recursion alphabet, e.g. u := t^a.
struct Alias {
  std::string name;
  Word word;

  bool operator==(const Alias&) const = default;
};

/// Contents of one `group NAME { ... }` block.
struct GroupFile {
  std::string name;
  LPresentation lpres;
  std::optional<SelfSimilarSpec> recursion;
  std::vector<Alias> aliases;

  bool operator==(const GroupFile&) const = default;
};

/// Parses the presentation language; throws SyntaxError with a position.
GroupFile parse_dsl(std::string_view text);

/// Canonical text form; parse_dsl(print_dsl(g)) == g.
std::string print_dsl(const GroupFile& g);

/// Parses a word over `alphabet`, with optional named words usable as
/// generators. Juxtaposed single-letter names may be written without spaces.
Word parse_word(std::string_view text, const Alphabet& alphabet,
                const std::vector<Alias>& aliases = {});

/// Image of every L-presentation generator as a word over the recursion
/// alphabet, matched by name against generators and aliases.
std::vector<Word> model_map(const GroupFile& g);

/// Canonical JSON form: {"alphabet": [...], "fixed": [...], "endos": {name:
/// {gen: word}}, "iterated": [...]} with words in printed text form and keys
/// sorted.
std::string lpres_to_json(const LPresentation& L);
LPresentation lpres_from_json(std::string_view text);

}  // namespace endo
