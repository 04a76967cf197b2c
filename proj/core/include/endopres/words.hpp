#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace endo {

/// A generator or its formal inverse.
struct Letter {
  std::uint32_t gen = 0;
  std::int8_t sign = 1;  // +1 or -1

  constexpr Letter inverse() const noexcept { return {gen, static_cast<std::int8_t>(-sign)}; }
  constexpr bool cancels(Letter other) const noexcept {
    return gen == other.gen && sign == -other.sign;
  }
  // positive letters sort before their inverses
  constexpr auto operator<=>(const Letter& o) const noexcept {
    if (auto c = gen <=> o.gen; c != 0) return c;
    return o.sign <=> sign;
  }
  constexpr bool operator==(const Letter&) const noexcept = default;
};

constexpr Letter gen_letter(std::uint32_t g, int sign = 1) {
  return {g, static_cast<std::int8_t>(sign < 0 ? -1 : 1)};
}

/// Ordered list of distinct generator names.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::uint32_t> find(std::string_view name) const;
  /// Throws InputError on unknown names.
  std::uint32_t index(std::string_view name) const;

  /// Names start with a letter or underscore, continue with letters, digits, '_'.
  static bool is_identifier(std::string_view s);

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
};

/// A freely reduced word. Construction always reduces, so equality is
/// equality of group elements of the free group.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);

  /// Freely reduces an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> letters);
  static Word generator(std::uint32_t gen, int sign = 1) { return Word{gen_letter(gen, sign)}; }

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  /// Largest generator index used plus one (0 for the empty word).
  std::uint32_t generator_bound() const noexcept;

  bool operator==(const Word&) const = default;
  /// Shortlex order.
  std::strong_ordering operator<=>(const Word& o) const noexcept;

 private:
  std::vector<Letter> letters_;
  friend class WordBuilder;
};

/// Accumulates letters with on-the-fly free cancellation.
class WordBuilder {
 public:
  WordBuilder() = default;
  explicit WordBuilder(Word start) : letters_(std::move(start.letters_)) {}
  void push(Letter l);
  void append(const Word& w);
  void append_inverse(const Word& w);
  std::size_t size() const noexcept { return letters_.size(); }
  Word take() &&;

 private:
  std::vector<Letter> letters_;
};

/// Reduces `letters`, rejecting generator indices >= alphabet_size.
Word reduce(std::span<const Letter> letters, std::size_t alphabet_size);
Word multiply(const Word& u, const Word& v);
Word invert(const Word& w);
Word power(const Word& w, long n);
/// by^-1 * w * by
Word conjugate(const Word& w, const Word& by);
/// u^-1 v^-1 u v
Word commutator(const Word& u, const Word& v);
/// Exponent sum of every generator, indexed by generator.
std::vector<long> exponent_sums(const Word& w, std::size_t alphabet_size);
void check_alphabet(const Word& w, std::size_t alphabet_size);

struct CyclicReduction {
  Word core;
  Word conjugator;  // w == conjugator^-1 * core * conjugator
};
CyclicReduction cyclic_reduce(const Word& w);

/// Representative of the class of w under cyclic permutation and inversion:
/// the shortlex-least rotation of the cyclic core or of its inverse.
Word cyclic_canonical(const Word& w);

/// Generator -> word map extended multiplicatively.
struct Endomorphism {
  std::string name;
  std::vector<Word> images;  // one per generator

  std::size_t size() const noexcept { return images.size(); }
  bool operator==(const Endomorphism&) const = default;
};

Endomorphism identity_endomorphism(std::size_t alphabet_size, std::string name = "id");

/// Substitutes images[g] for each letter g (its inverse for g^-1) and reduces.
/// Works between different alphabets; `images` is indexed by the source alphabet.
Word apply_substitution(std::span<const Word> images, const Word& w);
Word apply_endomorphism(const Endomorphism& phi, const Word& w);
/// (outer o inner)(s) = outer(inner(s)).
Endomorphism compose_endomorphisms(const Endomorphism& outer, const Endomorphism& inner);

/// Word-valued expression with conjugation, commutators, powers, and the
/// exponent-sum notation g^(n1 h1 + n2 h2 + ...) = prod h_i^-1 g^n_i h_i.
struct WordExpr {
  enum class Kind { generator, identity, product, power, conjugate, commutator, exponent_sum };

  Kind kind = Kind::identity;
  Letter letter{};
  long exponent = 1;
  std::vector<WordExpr> children;
  std::vector<long> coefficients;  // exponent_sum: one per conjugator

  static WordExpr gen(std::uint32_t g, int sign = 1);
  static WordExpr one();
  static WordExpr product(std::vector<WordExpr> factors);
  static WordExpr pow(WordExpr base, long n);
  static WordExpr conj(WordExpr base, WordExpr by);
  static WordExpr comm(WordExpr left, WordExpr right);
  /// terms are (n_i, h_i); use one() for a bare integer term.
  static WordExpr exp_sum(WordExpr base, std::vector<std::pair<long, WordExpr>> terms);
};

/// Expands an expression into a reduced word, checking generator indices.
Word build(const WordExpr& expr, std::size_t alphabet_size);

struct Rational {
  long num = 1;
  long den = 6;
};

struct Piece {
  Word piece;
  Word first;
  Word second;
};

struct SmallCancellationResult {
  bool holds = true;
  std::optional<Piece> witness;
};

/// All cyclic permutations of the cyclic cores of ws and of their inverses,
/// deduplicated and sorted.
std::vector<Word> symmetrized_closure(std::span<const Word> ws);

/// Metric small-cancellation condition C'(lambda): every piece between two
/// distinct members u, v of the symmetrized closure is shorter than
/// lambda * min(|u|, |v|).
SmallCancellationResult check_small_cancellation(std::span<const Word> ws, Rational lambda);

/// Canonical text form: space-separated letters, runs written as x^n, "1" for
/// the identity.
std::string to_string(const Word& w, const Alphabet& alphabet);

}  // namespace endo

template <>
struct std::hash<endo::Word> {
  std::size_t operator()(const endo::Word& w) const noexcept;
};
