#include <gtest/gtest.h>

#include "endopres/catalog.hpp"
#include "endopres/dsl.hpp"
#include "endopres/errors.hpp"
#include "endopres/random.hpp"

using namespace endo;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_dsl(text);
  } catch (const SyntaxError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Dsl, ParsesGrigorchuk) {
  auto g = parse_dsl(*entry_source("grigorchuk"));
  EXPECT_EQ(g.name, "grigorchuk");
  EXPECT_EQ(g.lpres.alphabet.names(), (std::vector<std::string>{"a", "c", "d"}));
  ASSERT_EQ(g.lpres.iterated.size(), 3u);
  // [d, d^a] = d^-1 a^-1 d^-1 a d a^-1 d a
  EXPECT_EQ(g.lpres.iterated[1].size(), 8u);
  ASSERT_TRUE(g.recursion.has_value());
  EXPECT_EQ(g.recursion->degree, 2u);
  EXPECT_EQ(g.recursion->alphabet.names(), (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_EQ(g.recursion->contraction_D, std::optional<unsigned>(1));
}

TEST(Dsl, WordSyntax) {
  Alphabet ab({"x", "y"});
  Word x = Word::generator(0), y = Word::generator(1);
  EXPECT_EQ(parse_word("x y x^-1", ab), multiply(multiply(x, y), invert(x)));
  EXPECT_EQ(parse_word("xy", ab), multiply(x, y));
  EXPECT_EQ(parse_word("[x, y]", ab), commutator(x, y));
  EXPECT_EQ(parse_word("x^y", ab), conjugate(x, y));
  EXPECT_EQ(parse_word("(x y)^3", ab), power(multiply(x, y), 3));
  EXPECT_EQ(parse_word("1", ab), Word{});
  EXPECT_THROW(parse_word("x^(2 y + 1)", ab), SyntaxError);  // exponent sums are stored expanded
  EXPECT_EQ(parse_word("[x, y, x]", ab), commutator(commutator(x, y), x));
  EXPECT_THROW(parse_word("z", ab), SyntaxError);
  EXPECT_THROW(parse_word("(x y", ab), SyntaxError);
  EXPECT_THROW(parse_word("x^", ab), SyntaxError);
}

TEST(Dsl, Aliases) {
  Alphabet ab({"a", "t"});
  std::vector<Alias> aliases{{"u", conjugate(Word::generator(1), Word::generator(0))}};
  EXPECT_EQ(parse_word("u t", ab, aliases),
            multiply(conjugate(Word::generator(1), Word::generator(0)), Word::generator(1)));
}

TEST(Dsl, Errors) {
  EXPECT_THROW(parse_dsl("group g { generators: ; }"), SyntaxError);
  EXPECT_THROW(parse_dsl("group g { fixed: x; }"), SyntaxError);
  EXPECT_THROW(parse_dsl("group g { generators: x, x; }"), SyntaxError);
  EXPECT_THROW(parse_dsl("group g { generators: x; fixed: y; }"), SyntaxError);
  EXPECT_THROW(parse_dsl("group g { generators: x; endo f: x -> x; endo f: x -> x; }"), SyntaxError);
  EXPECT_THROW(parse_dsl("group g { generators: x; endo f: x -> x, x -> 1; }"), SyntaxError);
  EXPECT_THROW(parse_dsl("group g { generators: x; contraction D = 1; }"), SyntaxError);
  EXPECT_THROW(parse_dsl("group g { generators: x; recursion degree 1 { x = perm(1); } }"),
               SyntaxError);
  EXPECT_THROW(parse_dsl("group g { generators: x; recursion degree 2 { x = (x, x, x); } }"),
               SyntaxError);
  EXPECT_THROW(parse_dsl("group g { generators: x; } trailing"), SyntaxError);
  EXPECT_THROW(parse_dsl("group g { generators: x; fixed: x $; }"), SyntaxError);
  EXPECT_EQ(error_line("group g {\n  generators: x;\n  fixed: y;\n}"), 3u);
}

TEST(Dsl, RoundTripCatalog) {
  for (const auto& name : entry_names()) {
    const auto& g = get_entry(name).group;
    std::string text = print_dsl(g);
    EXPECT_EQ(parse_dsl(text), g) << name;
    EXPECT_EQ(print_dsl(parse_dsl(text)), text) << name;
  }
}

TEST(Dsl, RoundTripRandomPresentations) {
  Rng rng(51);
  for (int i = 0; i < 300; ++i) {
    GroupFile g;
    g.name = "r" + std::to_string(i);
    std::size_t n = 1 + rng.below(4);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) names.push_back("g" + std::to_string(k));
    g.lpres.alphabet = Alphabet(names);
    for (std::size_t k = 0, m = rng.below(3); k < m; ++k) {
      Word w = random_word(rng, n, 1 + rng.below(10));
      g.lpres.fixed.push_back(w);
    }
    for (std::size_t k = 0, m = 1 + rng.below(3); k < m; ++k)
      g.lpres.iterated.push_back(random_word(rng, n, 1 + rng.below(10)));
    for (std::size_t k = 0, m = rng.below(3); k < m; ++k) {
      Endomorphism phi = identity_endomorphism(n, "e" + std::to_string(k));
      phi.images[rng.below(n)] = random_word(rng, n, rng.below(5));
      g.lpres.endos.push_back(phi);
    }
    EXPECT_EQ(parse_dsl(print_dsl(g)), g);
    EXPECT_EQ(lpres_from_json(lpres_to_json(g.lpres)), g.lpres);
  }
}

TEST(Dsl, JsonForm) {
  const auto& L = get_entry("hnn-example").lpres();
  std::string j = lpres_to_json(L);
  EXPECT_NE(j.find("\"alphabet\""), std::string::npos);
  EXPECT_NE(j.find("\"x^7\""), std::string::npos);
  EXPECT_THROW(lpres_from_json("{"), InputError);
  EXPECT_THROW(lpres_from_json(R"({"alphabet": ["x"], "fixed": ["y"], "endos": {}, "iterated": []})"),
               Error);
  EXPECT_THROW(lpres_from_json(R"({"alphabet": "x"})"), InputError);
}

TEST(Dsl, ModelMapUsesAliases) {
  const auto& g = get_entry("gupta-sidki").group;
  auto images = model_map(g);
  ASSERT_EQ(images.size(), 4u);
  const auto& ra = g.recursion->alphabet;
  EXPECT_EQ(images[2], parse_word("a^-1 t a", ra));
  EXPECT_EQ(images[3], parse_word("a t a^-1", ra));
}
