#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "endopres/bigint.hpp"
#include "endopres/lpres.hpp"

namespace endo {

enum class CosetStatus { closed, overflow };

/// Coset table; column 2g is generator g, column 2g+1 its inverse.
/// Coset 0 is the subgroup itself and generators act on the right.
struct CosetTable {
  CosetStatus status = CosetStatus::overflow;
  std::vector<std::vector<std::uint32_t>> rows;  // filled only when closed
  std::size_t defined = 0;                       // cosets defined during the run

  bool closed() const noexcept { return status == CosetStatus::closed; }
  std::size_t size() const noexcept { return rows.size(); }
  /// Permutation of each generator on the cosets.
  CosetAction action() const;
};

/// Todd-Coxeter coset enumeration (HLT strategy). Returns an overflow table
/// rather than throwing when more than max_cosets cosets get defined.
CosetTable todd_coxeter(const FinitePresentation& p, const std::vector<Word>& subgroup,
                        std::size_t max_cosets);

/// Checks that a closed table is a permutation action in which every relator
/// closes at every coset and every subgroup generator closes at coset 0.
bool validate_coset_table(const CosetTable& t, const FinitePresentation& p,
                          const std::vector<Word>& subgroup);

/// Order of the group given by the relators enumerated to `depth`, or empty
/// on overflow.
std::optional<std::size_t> order_from_presentation(const LPresentation& L, std::size_t depth,
                                                   std::size_t max_cosets);

/// Abelian group Z^free_rank + Z/d1 + ... with d1 | d2 | ..., each d_i >= 2.
struct AbelianInvariants {
  std::vector<BigInt> torsion;
  std::size_t free_rank = 0;

  bool operator==(const AbelianInvariants&) const = default;
};

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Abelian invariants of Z^cols modulo the row lattice of m.
AbelianInvariants smith_normal_form(IntMatrix m, std::size_t cols);
inline AbelianInvariants smith_normal_form(const IntMatrix& m) {
  return smith_normal_form(m, m.empty() ? 0 : m.front().size());
}

struct Abelianization {
  AbelianInvariants invariants;
  std::size_t depth = 0;
  std::size_t relators = 0;
  /// Same invariants at depth - 1 (false at depth 0).
  bool stabilized = false;
};

IntMatrix exponent_matrix(const std::vector<Word>& relators, std::size_t alphabet_size);
Abelianization abelianization(const LPresentation& L, std::size_t depth);

std::string to_string(const AbelianInvariants& a);

}  // namespace endo
