#include <gtest/gtest.h>

#include "endopres/errors.hpp"
#include "endopres/random.hpp"
#include "endopres/words.hpp"
#include "support.hpp"

using namespace endo;

namespace {

Word from(const oracle::Letters& v) { return Word::reduce(v); }

Word x(int s = 1) { return Word::generator(0, s); }
Word y(int s = 1) { return Word::generator(1, s); }

}  // namespace

TEST(Word, ReduceMatchesNaiveScan) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto v = oracle::random_letters(rng, 1 + rng.below(4), rng.below(30));
    EXPECT_EQ(oracle::letters_of(from(v)), oracle::naive_reduce(v));
  }
}

TEST(Word, GroupLaws) {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    Word u = random_word(rng, 3, rng.below(12));
    Word v = random_word(rng, 3, rng.below(12));
    Word w = random_word(rng, 3, rng.below(12));
    EXPECT_EQ(multiply(multiply(u, v), w), multiply(u, multiply(v, w)));
    EXPECT_TRUE(multiply(u, invert(u)).empty());
    EXPECT_EQ(invert(invert(u)), u);
    EXPECT_EQ(invert(multiply(u, v)), multiply(invert(v), invert(u)));
    EXPECT_EQ(multiply(u, Word{}), u);
  }
}

TEST(Word, RandomWordIsReducedWithExactLength) {
  Rng rng(13);
  for (std::size_t len = 0; len < 40; ++len) {
    Word w = random_word(rng, 2, len);
    EXPECT_EQ(w.size(), len);
    EXPECT_EQ(oracle::naive_reduce(oracle::letters_of(w)), oracle::letters_of(w));
  }
}

TEST(Word, PowerConjugateCommutator) {
  EXPECT_EQ(power(x(), 3).size(), 3u);
  EXPECT_EQ(power(x(), -2), multiply(x(-1), x(-1)));
  EXPECT_TRUE(power(x(), 0).empty());
  EXPECT_EQ(conjugate(x(), y()), Word({gen_letter(1, -1), gen_letter(0), gen_letter(1)}));
  EXPECT_EQ(commutator(x(), y()),
            Word({gen_letter(0, -1), gen_letter(1, -1), gen_letter(0), gen_letter(1)}));
  EXPECT_TRUE(commutator(x(), x()).empty());
}

TEST(Word, ShortlexOrder) {
  EXPECT_LT(x(), y());
  EXPECT_LT(x(), x(-1));
  EXPECT_LT(y(-1), multiply(x(), x()));
  EXPECT_LT(Word{}, x());
}

TEST(Word, ExponentSums) {
  Word w = multiply(power(x(), 3), power(y(), -2));
  auto sums = exponent_sums(w, 3);
  EXPECT_EQ(sums, (std::vector<long>{3, -2, 0}));
  EXPECT_THROW(exponent_sums(w, 1), InputError);
}

TEST(Word, CyclicReduction) {
  Rng rng(14);
  for (int i = 0; i < 500; ++i) {
    Word w = random_word(rng, 3, rng.below(16));
    auto cr = cyclic_reduce(w);
    EXPECT_EQ(multiply(multiply(invert(cr.conjugator), cr.core), cr.conjugator), w);
    EXPECT_EQ(oracle::letters_of(cr.core), oracle::cyclic_core(oracle::letters_of(w)));
    // canonical form is invariant under rotation and inversion
    if (!cr.core.empty()) {
      auto ls = oracle::letters_of(cr.core);
      std::rotate(ls.begin(), ls.begin() + 1, ls.end());
      EXPECT_EQ(cyclic_canonical(from(ls)), cyclic_canonical(w));
      EXPECT_EQ(cyclic_canonical(invert(w)), cyclic_canonical(w));
    }
  }
}

TEST(Word, SubstitutionIsHomomorphism) {
  Rng rng(15);
  for (int i = 0; i < 500; ++i) {
    std::vector<Word> images;
    for (int g = 0; g < 3; ++g) images.push_back(random_word(rng, 2, rng.below(5)));
    Word u = random_word(rng, 3, rng.below(10));
    Word v = random_word(rng, 3, rng.below(10));
    EXPECT_EQ(apply_substitution(images, multiply(u, v)),
              multiply(apply_substitution(images, u), apply_substitution(images, v)));
    EXPECT_EQ(apply_substitution(images, invert(u)), invert(apply_substitution(images, u)));
  }
}

TEST(Word, CompositionOrder) {
  Endomorphism f{"f", {multiply(x(), y()), y()}};
  Endomorphism g{"g", {x(), multiply(y(), y())}};
  Endomorphism fg = compose_endomorphisms(f, g);
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(rng, 2, rng.below(10));
    EXPECT_EQ(apply_endomorphism(fg, w), apply_endomorphism(f, apply_endomorphism(g, w)));
  }
  EXPECT_EQ(apply_endomorphism(identity_endomorphism(2), multiply(x(), y())), multiply(x(), y()));
}

TEST(Word, BuildExpressions) {
  using E = WordExpr;
  // x^(2 y + 1) = y^-1 x^2 y x
  Word w = build(E::exp_sum(E::gen(0), {{2, E::gen(1)}, {1, E::one()}}), 2);
  EXPECT_EQ(w, multiply(conjugate(power(x(), 2), y()), x()));
  EXPECT_EQ(build(E::comm(E::gen(0), E::gen(1)), 2), commutator(x(), y()));
  EXPECT_EQ(build(E::pow(E::conj(E::gen(0), E::gen(1)), 3), 2), conjugate(power(x(), 3), y()));
  EXPECT_THROW(build(E::gen(5), 2), InputError);
}

TEST(Word, AlphabetIdentifiers) {
  EXPECT_TRUE(Alphabet::is_identifier("x1"));
  EXPECT_TRUE(Alphabet::is_identifier("_t"));
  EXPECT_FALSE(Alphabet::is_identifier("1x"));
  EXPECT_FALSE(Alphabet::is_identifier(""));
  Alphabet a({"a", "b"});
  EXPECT_EQ(a.index("b"), 1u);
  EXPECT_THROW(a.index("c"), InputError);
}

TEST(Word, Printing) {
  Alphabet a({"x", "y"});
  EXPECT_EQ(to_string(Word{}, a), "1");
  EXPECT_EQ(to_string(multiply(power(x(), 3), y(-1)), a), "x^3 y^-1");
}

TEST(SmallCancellation, KnownCases) {
  std::vector<Word> good{power(x(), 7), power(y(), 7), power(multiply(x(), y()), 7)};
  EXPECT_TRUE(check_small_cancellation(good, {1, 6}).holds);
  std::vector<Word> bad{commutator(x(), y())};
  auto r = check_small_cancellation(bad, {1, 6});
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_FALSE(r.witness->piece.empty());
}

TEST(SmallCancellation, SymmetrizedClosureMatchesOracle) {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    std::vector<Word> ws;
    std::vector<oracle::Letters> ls;
    for (int k = 0; k < 3; ++k) {
      ws.push_back(random_word(rng, 2, 1 + rng.below(8)));
      ls.push_back(oracle::letters_of(ws.back()));
    }
    auto sym = oracle::symmetrize(ls);
    auto got = symmetrized_closure(ws);
    ASSERT_EQ(got.size(), sym.size());
    for (const auto& w : got) EXPECT_TRUE(sym.count(oracle::letters_of(w)));
  }
}

TEST(SmallCancellation, AgreesWithPairOracle) {
  Rng rng(18);
  const Rational lambdas[] = {{1, 6}, {1, 4}, {1, 3}, {1, 2}};
  for (int i = 0; i < 1500; ++i) {
    std::size_t budget = 1 + rng.below(40);
    std::vector<Word> ws;
    std::vector<oracle::Letters> ls;
    while (budget > 0) {
      std::size_t len = 1 + rng.below(std::min<std::size_t>(budget, 14));
      budget -= len;
      ws.push_back(random_word(rng, 2 + rng.below(2), len));
      ls.push_back(oracle::letters_of(ws.back()));
    }
    Rational lam = lambdas[rng.below(4)];
    EXPECT_EQ(check_small_cancellation(ws, lam).holds,
              oracle::small_cancellation_holds(ls, lam.num, lam.den));
  }
}
