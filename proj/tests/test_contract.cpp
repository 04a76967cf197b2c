#include <gtest/gtest.h>

#include "endopres/catalog.hpp"
#include "endopres/contract.hpp"
#include "endopres/errors.hpp"
#include "endopres/random.hpp"

using namespace endo;

namespace {

const SelfSimilarSpec& spec(const char* name) { return *get_entry(name).recursion(); }

const char* const kContracting[] = {"grigorchuk", "fabrykowski-gupta", "gupta-sidki", "gamma-bar"};

}  // namespace

TEST(FlagTable, MatchesDeepLevelCheck) {
  for (const char* name : kContracting) {
    const auto& s = spec(name);
    auto t = build_flag_table(s, *s.contraction_D);
    SectionOracle so(s);
    for (const auto& [w, flag] : t.flags) {
      bool trivial_deep = so.acts_trivially_to(w, s.degree == 2 ? 12 : 7);
      EXPECT_EQ(flag == Flag::trivial, trivial_deep) << name;
    }
  }
}

TEST(FlagTable, SweepOrderDoesNotMatter) {
  for (const char* name : kContracting) {
    const auto& s = spec(name);
    auto base = build_flag_table(s, *s.contraction_D);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto t = build_flag_table(s, *s.contraction_D, seed);
      EXPECT_EQ(t.flags, base.flags) << name;
    }
  }
}

TEST(FlagTable, CoversAllShortWords) {
  const auto& s = spec("grigorchuk");
  auto t = build_flag_table(s, 2);
  // 8 letters; reduced words of length <= 2: 1 + 8 + 8 * 7
  EXPECT_EQ(t.flags.size(), 1u + 8u + 56u);
  EXPECT_EQ(t.at(Word{}), Flag::trivial);
  EXPECT_THROW(t.at(power(Word::generator(0), 5)), InputError);
}

TEST(WordProblem, AgreesWithLevelOracle) {
  Rng rng(31);
  for (const char* name : kContracting) {
    const auto& s = spec(name);
    WordProblemSolver solver(s);
    SectionOracle so(s);
    unsigned deep = s.degree == 2 ? 14 : 8;
    int trivial = 0;
    for (int i = 0; i < 400; ++i) {
      // products of a word with a shuffled copy of its inverse hit the
      // trivial side more often than uniform words
      Word w = random_word(rng, s.alphabet.size(), rng.below(20));
      if (i % 2) w = multiply(w, conjugate(invert(w), random_word(rng, s.alphabet.size(), 2)));
      bool t = solver.is_trivial(w);
      trivial += t;
      auto level = so.first_nontrivial_level(w, deep);
      EXPECT_EQ(t, !level.has_value()) << name << " " << to_string(w, s.alphabet);
      EXPECT_EQ(is_trivial(s, solver.table(), w), t);
    }
    EXPECT_GT(trivial, 0) << name;
  }
}

TEST(WordProblem, KnownRelations) {
  const auto& s = spec("grigorchuk");
  WordProblemSolver solver(s);
  auto w = [&](std::initializer_list<std::uint32_t> gens) {
    std::vector<Letter> ls;
    for (auto g : gens) ls.push_back(gen_letter(g));
    return Word::reduce(ls);
  };
  // a=0, b=1, c=2, d=3
  EXPECT_TRUE(solver.is_trivial(w({1, 2, 3})));
  EXPECT_TRUE(solver.is_trivial(power(w({0, 3}), 4)));
  EXPECT_TRUE(solver.is_trivial(power(w({0, 2}), 8)));
  EXPECT_TRUE(solver.is_trivial(power(w({0, 1}), 16)));
  EXPECT_FALSE(solver.is_trivial(power(w({0, 1}), 8)));
  EXPECT_FALSE(solver.is_trivial(w({0})));
}

TEST(WordProblem, MissingConstantIsAnError) {
  EXPECT_THROW(WordProblemSolver{spec("grigorchuk-supergroup")}, InputError);
}

TEST(WordProblem, TooSmallConstantIsReported) {
  const auto& s = spec("gupta-sidki");
  bool reported = false;
  try {
    WordProblemSolver solver(s, build_flag_table(s, 1));
    Rng rng(32);
    for (int i = 0; i < 300; ++i) solver.is_trivial(random_word(rng, s.alphabet.size(), 12));
  } catch (const CertificateError& e) {
    reported = !e.witness().empty();
  }
  EXPECT_TRUE(reported);
}

TEST(Contraction, CertificatesPass) {
  for (const char* name : kContracting) {
    const auto& s = spec(name);
    auto cert = check_contraction(s, *s.contraction_D, *s.contraction_D + 4);
    EXPECT_TRUE(cert.passed()) << name;
    EXPECT_GT(cert.words_checked, 0u);
  }
}

TEST(Contraction, TooSmallConstantFails) {
  auto cert = check_contraction(spec("gupta-sidki"), 1, 5);
  EXPECT_FALSE(cert.passed());
  EXPECT_FALSE(cert.violations.empty());
}
