#include "endopres/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "endopres/errors.hpp"

namespace endo {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw InputError("invalid generator name '" + n + "'");
    if (!seen.insert(n).second) throw InputError("duplicate generator name '" + n + "'");
  }
}

std::optional<std::uint32_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

std::uint32_t Alphabet::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown generator '" + std::string(name) + "'");
}

bool Alphabet::is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto c0 = static_cast<unsigned char>(s.front());
  if (!std::isalpha(c0) && c0 != '_') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

// ---------------------------------------------------------------- Word

Word::Word(std::initializer_list<Letter> letters) {
  *this = reduce(std::span<const Letter>(letters.begin(), letters.size()));
}

Word Word::reduce(std::span<const Letter> letters) {
  WordBuilder b;
  for (auto l : letters) b.push(l);
  return std::move(b).take();
}

std::uint32_t Word::generator_bound() const noexcept {
  std::uint32_t m = 0;
  for (auto l : letters_) m = std::max(m, l.gen + 1);
  return m;
}

std::strong_ordering Word::operator<=>(const Word& o) const noexcept {
  if (auto c = letters_.size() <=> o.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(letters_.begin(), letters_.end(),
                                                o.letters_.begin(), o.letters_.end());
}

void WordBuilder::push(Letter l) {
  if (!letters_.empty() && letters_.back().cancels(l))
    letters_.pop_back();
  else
    letters_.push_back(l);
}

void WordBuilder::append(const Word& w) {
  for (auto l : w) push(l);
}

void WordBuilder::append_inverse(const Word& w) {
  for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it) push(it->inverse());
}

Word WordBuilder::take() && {
  Word w;
  w.letters_ = std::move(letters_);
  return w;
}

// ---------------------------------------------------------------- arithmetic

void check_alphabet(const Word& w, std::size_t alphabet_size) {
  if (w.generator_bound() > alphabet_size)
    throw InputError("word uses generator index " + std::to_string(w.generator_bound() - 1) +
                     " outside an alphabet of size " + std::to_string(alphabet_size));
}

Word reduce(std::span<const Letter> letters, std::size_t alphabet_size) {
  for (auto l : letters) {
    if (l.gen >= alphabet_size)
      throw InputError("unknown generator index " + std::to_string(l.gen));
    if (l.sign != 1 && l.sign != -1) throw InputError("letter sign must be +1 or -1");
  }
  return Word::reduce(letters);
}

Word multiply(const Word& u, const Word& v) {
  WordBuilder b(u);
  b.append(v);
  return std::move(b).take();
}

Word invert(const Word& w) {
  WordBuilder b;
  b.append_inverse(w);
  return std::move(b).take();
}

Word power(const Word& w, long n) {
  WordBuilder b;
  if (n >= 0) {
    for (long i = 0; i < n; ++i) b.append(w);
  } else {
    for (long i = 0; i < -n; ++i) b.append_inverse(w);
  }
  return std::move(b).take();
}

Word conjugate(const Word& w, const Word& by) {
  WordBuilder b;
  b.append_inverse(by);
  b.append(w);
  b.append(by);
  return std::move(b).take();
}

Word commutator(const Word& u, const Word& v) {
  WordBuilder b;
  b.append_inverse(u);
  b.append_inverse(v);
  b.append(u);
  b.append(v);
  return std::move(b).take();
}

std::vector<long> exponent_sums(const Word& w, std::size_t alphabet_size) {
  check_alphabet(w, alphabet_size);
  std::vector<long> sums(alphabet_size, 0);
  for (auto l : w) sums[l.gen] += l.sign;
  return sums;
}

CyclicReduction cyclic_reduce(const Word& w) {
  auto ls = w.letters();
  std::size_t i = 0, j = ls.size();
  while (j - i >= 2 && ls[i].cancels(ls[j - 1])) {
    ++i;
    --j;
  }
  // w = p core p^-1 with p = ls[0..i); conjugator = p^-1
  Word core = Word::reduce(ls.subspan(i, j - i));
  Word conj = invert(Word::reduce(ls.subspan(0, i)));
  return {std::move(core), std::move(conj)};
}

namespace {

Word least_rotation(const Word& w) {
  Word best = w;
  auto ls = w.letters();
  std::vector<Letter> buf(ls.size());
  for (std::size_t r = 1; r < ls.size(); ++r) {
    std::rotate_copy(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(r), ls.end(), buf.begin());
    Word cand = Word::reduce(buf);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

}  // namespace

Word cyclic_canonical(const Word& w) {
  Word core = cyclic_reduce(w).core;
  Word a = least_rotation(core);
  Word b = least_rotation(invert(core));
  return a < b ? a : b;
}

// ---------------------------------------------------------------- endomorphisms

Endomorphism identity_endomorphism(std::size_t alphabet_size, std::string name) {
  Endomorphism id{std::move(name), {}};
  id.images.reserve(alphabet_size);
  for (std::size_t g = 0; g < alphabet_size; ++g)
    id.images.push_back(Word::generator(static_cast<std::uint32_t>(g)));
  return id;
}

Word apply_substitution(std::span<const Word> images, const Word& w) {
  check_alphabet(w, images.size());
  WordBuilder b;
  for (auto l : w) {
    if (l.sign > 0)
      b.append(images[l.gen]);
    else
      b.append_inverse(images[l.gen]);
  }
  return std::move(b).take();
}

Word apply_endomorphism(const Endomorphism& phi, const Word& w) {
  return apply_substitution(phi.images, w);
}

Endomorphism compose_endomorphisms(const Endomorphism& outer, const Endomorphism& inner) {
  if (outer.size() != inner.size())
    throw InputError("cannot compose endomorphisms of different alphabets");
  Endomorphism out{outer.name + "*" + inner.name, {}};
  out.images.reserve(inner.size());
  for (const auto& img : inner.images) out.images.push_back(apply_endomorphism(outer, img));
  return out;
}

// ---------------------------------------------------------------- expressions

WordExpr WordExpr::gen(std::uint32_t g, int sign) {
  WordExpr e;
  e.kind = Kind::generator;
  e.letter = gen_letter(g, sign);
  return e;
}

WordExpr WordExpr::one() { return WordExpr{}; }

WordExpr WordExpr::product(std::vector<WordExpr> factors) {
  WordExpr e;
  e.kind = Kind::product;
  e.children = std::move(factors);
  return e;
}

WordExpr WordExpr::pow(WordExpr base, long n) {
  WordExpr e;
  e.kind = Kind::power;
  e.exponent = n;
  e.children.push_back(std::move(base));
  return e;
}

WordExpr WordExpr::conj(WordExpr base, WordExpr by) {
  WordExpr e;
  e.kind = Kind::conjugate;
  e.children.push_back(std::move(base));
  e.children.push_back(std::move(by));
  return e;
}

WordExpr WordExpr::comm(WordExpr left, WordExpr right) {
  WordExpr e;
  e.kind = Kind::commutator;
  e.children.push_back(std::move(left));
  e.children.push_back(std::move(right));
  return e;
}

WordExpr WordExpr::exp_sum(WordExpr base, std::vector<std::pair<long, WordExpr>> terms) {
  WordExpr e;
  e.kind = Kind::exponent_sum;
  e.children.push_back(std::move(base));
  for (auto& [n, h] : terms) {
    e.coefficients.push_back(n);
    e.children.push_back(std::move(h));
  }
  return e;
}

Word build(const WordExpr& e, std::size_t alphabet_size) {
  auto need = [&](std::size_t n) {
    if (e.children.size() != n) throw InputError("malformed word expression");
  };
  switch (e.kind) {
    case WordExpr::Kind::identity:
      return {};
    case WordExpr::Kind::generator: {
      Letter l = e.letter;
      return reduce(std::span<const Letter>(&l, 1), alphabet_size);
    }
    case WordExpr::Kind::product: {
      WordBuilder b;
      for (const auto& c : e.children) b.append(build(c, alphabet_size));
      return std::move(b).take();
    }
    case WordExpr::Kind::power:
      need(1);
      return power(build(e.children[0], alphabet_size), e.exponent);
    case WordExpr::Kind::conjugate:
      need(2);
      return conjugate(build(e.children[0], alphabet_size), build(e.children[1], alphabet_size));
    case WordExpr::Kind::commutator:
      need(2);
      return commutator(build(e.children[0], alphabet_size), build(e.children[1], alphabet_size));
    case WordExpr::Kind::exponent_sum: {
      if (e.children.empty() || e.coefficients.size() + 1 != e.children.size())
        throw InputError("malformed exponent-sum expression");
      Word base = build(e.children[0], alphabet_size);
      WordBuilder b;
      for (std::size_t i = 0; i < e.coefficients.size(); ++i)
        b.append(conjugate(power(base, e.coefficients[i]), build(e.children[i + 1], alphabet_size)));
      return std::move(b).take();
    }
  }
  throw InputError("malformed word expression");
}

// ---------------------------------------------------------------- small cancellation

std::vector<Word> symmetrized_closure(std::span<const Word> ws) {
  std::set<Word> out;
  std::vector<Letter> buf;
  for (const auto& w : ws) {
    if (w.empty()) throw InputError("small cancellation input contains the trivial word");
    Word core = cyclic_reduce(w).core;
    for (const Word& base : {core, invert(core)}) {
      auto ls = base.letters();
      buf.resize(ls.size());
      for (std::size_t r = 0; r < ls.size(); ++r) {
        std::rotate_copy(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(r), ls.end(),
                         buf.begin());
        out.insert(Word::reduce(buf));
      }
    }
  }
  return {out.begin(), out.end()};
}

SmallCancellationResult check_small_cancellation(std::span<const Word> ws, Rational lambda) {
  if (lambda.den <= 0 || lambda.num <= 0 || lambda.num >= lambda.den)
    throw InputError("small cancellation parameter must lie in (0,1)");
  auto closure = symmetrized_closure(ws);
  // In lexicographic order the longest common prefix of any pair is attained
  // by some adjacent pair in the range between them, and the shortest word of
  // that range violates together with its neighbour whenever the pair does.
  std::sort(closure.begin(), closure.end(), [](const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  for (std::size_t i = 0; i + 1 < closure.size(); ++i) {
    const Word& u = closure[i];
    const Word& v = closure[i + 1];
    std::size_t p = 0;
    while (p < u.size() && p < v.size() && u[p] == v[p]) ++p;
    std::size_t m = std::min(u.size(), v.size());
    if (static_cast<long>(p) * lambda.den >= lambda.num * static_cast<long>(m)) {
      Word piece = Word::reduce(u.letters().subspan(0, p));
      return {false, Piece{std::move(piece), u, v}};
    }
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------- printing

std::string to_string(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  check_alphabet(w, alphabet.size());
  std::string out;
  auto ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long n = static_cast<long>(j - i) * ls[i].sign;
    if (!out.empty()) out += ' ';
    out += alphabet.name(ls[i].gen);
    if (n != 1) out += "^" + std::to_string(n);
    i = j;
  }
  return out;
}

}  // namespace endo

std::size_t std::hash<endo::Word>::operator()(const endo::Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto l : w) {
    std::size_t x = (static_cast<std::size_t>(l.gen) << 1) | (l.sign < 0 ? 1U : 0U);
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
