#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "endopres/catalog.hpp"
#include "endopres/coset.hpp"
#include "endopres/errors.hpp"
#include "support.hpp"

using namespace endo;

namespace {

std::vector<std::vector<long>> exponent_rows(const std::vector<Word>& rels, std::size_t n) {
  std::vector<std::vector<long>> rows;
  for (const auto& r : rels) {
    std::vector<long> row(n, 0);
    for (auto l : r) row[l.gen] += l.sign;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Catalog, EveryEntryLoads) {
  for (const auto& name : entry_names()) {
    const auto& e = get_entry(name);
    EXPECT_EQ(e.name, name);
    EXPECT_FALSE(e.title.empty()) << name;
    EXPECT_NO_THROW(e.lpres().validate()) << name;
    if (e.recursion()) {
      EXPECT_NO_THROW(e.recursion()->validate());
      EXPECT_EQ(model_map(e.group).size(), e.lpres().alphabet.size());
    }
  }
  EXPECT_THROW(get_entry("no-such-group"), InputError);
  EXPECT_THROW(get_entry("sym(1)"), InputError);
  EXPECT_EQ(&get_entry("grigorchuk"), &get_entry("grigorchuk"));
}

TEST(Catalog, DslNames) {
  EXPECT_EQ(dsl_name("sym(4)"), "sym_4");
  EXPECT_EQ(dsl_name("sym-transpositions(5)"), "sym_transpositions_5");
  EXPECT_EQ(dsl_name("grigorchuk-lysionok"), "grigorchuk_lysionok");
}

TEST(Catalog, GoldenGroupFiles) {
  std::size_t seen = 0;
  for (const auto& name : entry_names()) {
    std::string path = std::string(ENDOPRES_GROUPS_DIR) + "/" + dsl_name(name) + ".grp";
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    std::string text = oracle::read_file(path);
    EXPECT_EQ(parse_dsl(text), get_entry(name).group) << name;
    EXPECT_EQ(text, print_dsl(get_entry(name).group)) << name;
    ++seen;
  }
  std::size_t files = 0;
  for (const auto& f : std::filesystem::directory_iterator(ENDOPRES_GROUPS_DIR))
    files += f.path().extension() == ".grp";
  EXPECT_EQ(files, seen);
}

TEST(Catalog, StoredSourcesMatchParsedGroups) {
  for (const auto& name : entry_names()) {
    auto src = entry_source(name);
    if (!src) continue;
    EXPECT_EQ(parse_dsl(*src), get_entry(name).group) << name;
  }
}

TEST(Catalog, LevelOrderGoldenFile) {
  std::istringstream in(oracle::read_file(std::string(ENDOPRES_GOLDEN_DIR) + "/level_orders.txt"));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name, order;
    unsigned level = 0;
    ls >> name >> level >> order;
    const auto& e = get_entry(name);
    bool found = false;
    for (const auto& lo : e.fixtures.level_orders)
      if (lo.level == level) {
        found = true;
        EXPECT_EQ(lo.order, BigInt(order)) << name << " " << level;
      }
    EXPECT_TRUE(found) << name << " " << level;
    if (BigInt(order) < 100000) {
      EXPECT_EQ(level_quotient_order(*e.recursion(), level), BigInt(order)) << name;
    }
    ++rows;
  }
  std::size_t stored = 0;
  for (const auto& name : entry_names()) stored += get_entry(name).fixtures.level_orders.size();
  EXPECT_EQ(rows, stored);
}

TEST(Catalog, AbelianizationFixturesMatchDeterminantalOracle) {
  for (const auto& name : entry_names()) {
    const auto& e = get_entry(name);
    if (!e.fixtures.abelianization) continue;
    const auto& L = e.lpres();
    auto rels = enumerate_relators(L, e.defaults.abelian_depth);
    auto [torsion, free] = oracle::determinantal_invariants(exponent_rows(rels, L.alphabet.size()),
                                                            L.alphabet.size());
    EXPECT_EQ(torsion, e.fixtures.abelianization->torsion) << name;
    EXPECT_EQ(free, e.fixtures.abelianization->free_rank) << name;
  }
}

TEST(Catalog, SymmetricGroupInstances) {
  for (unsigned n : {4u, 5u, 6u}) {
    auto e = make_sym(n);
    EXPECT_EQ(e.lpres().alphabet.size(), n - 1);
    std::size_t fact = 1;
    for (unsigned i = 2; i <= n; ++i) fact *= i;
    EXPECT_EQ(e.fixtures.group_order, std::optional<std::size_t>(fact));
  }
  EXPECT_THROW(make_sym(3), InputError);
  EXPECT_EQ(make_sym_transpositions(4).lpres().alphabet.size(), 6u);
  EXPECT_THROW(make_sym_transpositions(10), InputError);
}

TEST(Catalog, TranspositionWordsAreMinimal) {
  // (i, j) needs 2(j - i) - 1 Coxeter generators
  for (unsigned n = 3; n <= 6; ++n) {
    auto words = sym_transposition_words(n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j) {
        const Word& w = words[i * n + j];
        EXPECT_EQ(w.size(), 2 * (j - i) - 1);
        // evaluate on points: s_k swaps k-1 and k (0-based generator k-1 swaps k-1, k)
        std::vector<unsigned> p(n);
        for (unsigned x = 0; x < n; ++x) p[x] = x;
        for (auto l : w) std::swap(p[l.gen], p[l.gen + 1]);
        for (unsigned x = 0; x < n; ++x)
          EXPECT_EQ(p[x], x == i ? j : x == j ? i : x);
      }
  }
}

TEST(Catalog, GammaBarData) {
  const auto& e = get_entry("gamma-bar");
  ASSERT_TRUE(e.conjugation.has_value());
  const auto& c = *e.conjugation;
  EXPECT_EQ(c.stabilizer.size(), 4u);
  EXPECT_EQ(c.elements.size(), 4u);
  std::size_t stated = 0, derived = 0;
  for (const auto& id : c.table) (id.origin == Origin::stated ? stated : derived)++;
  EXPECT_EQ(stated, 15u);
  EXPECT_EQ(derived, 1u);
  EXPECT_FALSE(c.schreier_relators(2).empty());
  EXPECT_GT(c.schreier_relators(2).size(), c.schreier_relators(1).size());
}

TEST(Catalog, EnumerationOnlyEntries) {
  for (const char* name : {"sym-infinity-z", "sym-infinity-z-alt", "rationals-embedding-H",
                           "hnn-example"}) {
    const auto& e = get_entry(name);
    EXPECT_TRUE(e.enumeration_only) << name;
    EXPECT_FALSE(e.recursion().has_value());
  }
}
