#include "endopres/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <memory>
#include <mutex>

#include "endopres/errors.hpp"

namespace endo {

namespace {

constexpr std::string_view kGrigorchuk = R"(group grigorchuk {
  generators: a, c, d;
  endo sigma: a -> a c a, c -> c d, d -> c;
  iterated: a^2, [d, d^a], [d^(a c), (d^(a c))^a];
  recursion degree 2 {
    a = perm(1 2);
    b = (a, c);
    c = (a, d);
    d = (1, b);
  }
  contraction D = 1;
  reduce: a^-1 -> a, b^-1 -> b, c^-1 -> c, d^-1 -> d, a^2 -> 1, b^2 -> 1, c^2 -> 1, d^2 -> 1,
    b c -> d, c b -> d, b d -> c, d b -> c, c d -> b, d c -> b;
  branching: (a b)^2;
}
)";

constexpr std::string_view kLysionok = R"(group grigorchuk_lysionok {
  generators: a, c, d;
  endo sigma: a -> a c a, c -> c d, d -> c;
  iterated: a^2, (a d)^4, (a d a c a c)^4;
  recursion degree 2 {
    a = perm(1 2);
    b = (a, c);
    c = (a, d);
    d = (1, b);
  }
  contraction D = 1;
  reduce: a^-1 -> a, b^-1 -> b, c^-1 -> c, d^-1 -> d, a^2 -> 1, b^2 -> 1, c^2 -> 1, d^2 -> 1,
    b c -> d, c b -> d, b d -> c, d b -> c, c d -> b, d c -> b;
  branching: (a b)^2;
}
)";

constexpr std::string_view kSupergroup = R"(group grigorchuk_supergroup {
  generators: a, bt, ct, dt;
  endo sigma: a -> a bt a, bt -> dt, ct -> bt, dt -> ct;
  iterated: a^2, [bt, ct], [ct, ct^a], [ct, dt^a], [dt, dt^a],
    [ct^(a bt), (ct^(a bt))^a], [ct^(a bt), (dt^(a bt))^a], [dt^(a bt), (dt^(a bt))^a];
  recursion degree 2 {
    a = perm(1 2);
    bt = (a, ct);
    ct = (1, dt);
    dt = (1, bt);
  }
  branching: (a bt)^2, (a dt)^2;
}
)";

// r^(1 + a^-1 - 1 + a + 1) and friends written out term by term.
constexpr std::string_view kFabrykowskiGupta = R"(group fabrykowski_gupta {
  generators: a, r;
  endo sigma: a -> r^(a^-1);
  endo chi1: r -> r^-1;
  endo chi2: a -> a^-1;
  iterated: a^3, [r r^(a^-1) r^-1 r^a r, a], [a^-1, r r^a r^(a^-1)] [r^a r r^(a^-1), a];
  recursion degree 3 {
    a = perm(1 2 3);
    r = (a, 1, r);
  }
  contraction D = 2;
  reduce: a^-1 -> a^2, r^-1 -> r^2, a^3 -> 1, r^3 -> 1;
}
)";

constexpr std::string_view kGammaBar = R"(group gamma_bar {
  generators: x, y;
  recursion degree 3 {
    a = perm(1 2 3);
    s = (a, a, s);
    x := a s^-1;
    y := s^-1 a;
  }
  contraction D = 2;
  reduce: a^-1 -> a^2, s^-1 -> s^2, a^3 -> 1, s^3 -> 1;
}
)";

constexpr std::string_view kGuptaSidki = R"(group gupta_sidki {
  generators: a, t, u, v;
  fixed: a^3, t^3, u^-1 t^a, v^-1 t^(a^-1);
  endo sigma: u -> u^-1 t v^-1 t u v t^-1, v -> t^-1 v u t v^-1 t u^-1;
  endo chi: t -> t^-1, u -> u^-1, v -> v^-1;
  iterated: (t u v)^3, [v, t] [v t, u^-1 t v^-1 u], [t, u]^3 [u, v]^3 [t, v]^3;
  recursion degree 3 {
    a = perm(1 2 3);
    t = (a, a^-1, t);
    u := t^a;
    v := t^(a^-1);
  }
  contraction D = 2;
  reduce: a^-1 -> a^2, t^-1 -> t^2, a^3 -> 1, t^3 -> 1;
}
)";

constexpr std::string_view kLamplighter = R"(group lamplighter {
  generators: a, b, t;
  fixed: a^2, a^-1 b;
  endo phi: b -> b^t;
  iterated: [a, b];
}
)";

constexpr std::string_view kBsv = R"(group bsv {
  generators: lambda, tau;
  endo phi: lambda -> tau^2 lambda^-1 tau^2, tau -> tau^2;
  iterated: [lambda, lambda^tau], [lambda, lambda^(tau^3)];
  recursion degree 2 {
    mu = perm(1 2) (mu^-1, 1);
    tau = perm(1 2) (tau, 1);
    lambda := tau mu^-1;
  }
}
)";

constexpr std::string_view kSymInfinity = R"(group sym_infinity_z {
  generators: tau, sigma, sb;
  fixed: sigma sb;
  endo phi: sb -> sb^tau;
  iterated: sigma^2, [sigma, tau]^3, [sigma, sb^(tau^2)];
}
)";

constexpr std::string_view kSymInfinityAlt = R"(group sym_infinity_z_alt {
  generators: tau, sigma, taub;
  fixed: tau^-1 taub;
  endo psi: taub -> tau taub;
  iterated: sigma^2, [sigma, tau]^3, [sigma, sigma^(tau taub)];
}
)";

constexpr std::string_view kRationals = R"(group rationals_embedding_H {
  generators: x, y, a, b, c, d, e, cp, dp, ep;
  fixed: c^-1 cp, d^-1 dp, e^-1 ep, [d, x], [d, y], [e, x], [e, y];
  endo phi1: a -> b a c;
  endo phi2: a -> 1, b -> d^-1 y b x d;
  endo phi3: a -> 1, b -> y e x;
  endo phi4: cp -> cp c, dp -> dp d, ep -> ep e;
  iterated: y x b a c, ep^dp cp;
}
)";

constexpr std::string_view kHnnExample = R"(group hnn_example {
  generators: x, y;
  endo phi: x -> x^7, y -> y^7;
  iterated: (x y)^7;
}
)";

struct FixedSource {
  std::string_view name;
  std::string_view text;
};

constexpr FixedSource kSources[] = {
    {"grigorchuk", kGrigorchuk},
    {"grigorchuk-lysionok", kLysionok},
    {"grigorchuk-supergroup", kSupergroup},
    {"fabrykowski-gupta", kFabrykowskiGupta},
    {"gamma-bar", kGammaBar},
    {"gupta-sidki", kGuptaSidki},
    {"lamplighter", kLamplighter},
    {"bsv", kBsv},
    {"sym-infinity-z", kSymInfinity},
    {"sym-infinity-z-alt", kSymInfinityAlt},
    {"rationals-embedding-H", kRationals},
    {"hnn-example", kHnnExample},
};

AbelianInvariants invariants(std::vector<long> torsion, std::size_t free_rank) {
  AbelianInvariants a;
  for (long t : torsion) a.torsion.emplace_back(t);
  a.free_rank = free_rank;
  return a;
}

std::vector<LevelOrder> orders(std::initializer_list<const char*> values) {
  std::vector<LevelOrder> out;
  unsigned level = 1;
  for (const char* v : values) out.push_back({level++, BigInt(v), Origin::derived});
  return out;
}

Word word_in(const Alphabet& a, std::string_view text) { return parse_word(text, a); }

ConjugationData gamma_bar_data(const Alphabet& xy) {
  ConjugationData c;
  c.conjugate_left = true;
  const std::pair<const char*, const char*> stab[] = {
      {"alpha", "x^-1 y"}, {"beta", "y^-1 x^-1 y^-1"}, {"gamma", "x^-1 y^-1 x^-1"}, {"delta", "x y^-1"}};
  std::vector<std::string> fnames;
  for (auto [n, w] : stab) {
    c.stabilizer.push_back({n, word_in(xy, w)});
    fnames.emplace_back(n);
  }
  c.family_alphabet = Alphabet(fnames);
  // e..h as products of alpha..delta, then over x, y.
  const std::pair<const char*, const char*> elems[] = {
      {"e", "beta^-1 delta gamma"}, {"f", "gamma beta^-1 delta"},
      {"g", "gamma^-1 alpha beta"}, {"h", "beta gamma^-1 alpha"}};
  std::vector<Word> stab_words;
  for (const auto& s : c.stabilizer) stab_words.push_back(s.word);
  std::vector<std::string> tnames;
  for (auto [n, w] : elems) {
    c.elements.push_back({n, apply_substitution(stab_words, word_in(c.family_alphabet, w))});
    tnames.emplace_back(n);
  }
  c.table_alphabet = Alphabet(tnames);

  const std::pair<const char*, std::vector<const char*>> secs[] = {
      {"alpha", {"x", "1", "x^-1"}},       {"beta", {"y", "1", "y^-1"}},
      {"gamma", {"1", "x", "x^-1"}},       {"delta", {"1", "y", "y^-1"}},
      {"e", {"y^-1", "y x", "x^-1"}},      {"f", {"y^-1", "x y", "x^-1"}},
      {"g", {"x y", "x^-1", "y^-1"}},      {"h", {"y x", "x^-1", "y^-1"}}};
  for (const auto& [n, ws] : secs) {
    SectionClaim claim{n, {}};
    for (const char* w : ws) claim.sections.push_back(word_in(xy, w));
    c.sections.push_back(std::move(claim));
  }

  struct Row {
    const char* conj;
    const char* k;
    const char* w;
    Origin origin;
  };
  const Row rows[] = {
      {"x", "e", "g^-1 h f^-1 g^-1", Origin::stated},
      {"x", "f", "f^-1 g^-1", Origin::stated},
      {"x", "g", "e", Origin::stated},
      {"x", "h", "g^-1 h e", Origin::stated},
      {"x^-1", "e", "e h f^-1", Origin::stated},
      {"x^-1", "f", "h^-1 e^-1", Origin::stated},
      {"x^-1", "g", "h^-1 f^-1", Origin::stated},
      {"x^-1", "h", "h^-1 f^-1", Origin::derived},
      {"y", "e", "g^-1 e^-1", Origin::stated},
      {"y", "f", "h^-1 e^-1", Origin::stated},
      {"y", "g", "g^-1 e h", Origin::stated},
      {"y", "h", "f", Origin::stated},
      {"y^-1", "e", "e^-1 g f", Origin::stated},
      {"y^-1", "f", "h", Origin::stated},
      {"y^-1", "g", "f^-1 g^-1", Origin::stated},
      {"y^-1", "h", "f^-1 g^-1 e f", Origin::stated},
  };
  for (const auto& r : rows)
    c.table.push_back({r.k, word_in(xy, r.conj), word_in(c.table_alphabet, r.w), r.origin});
  return c;
}

CatalogEntry load_fixed(std::string_view name, std::string_view text) {
  CatalogEntry e;
  e.name = std::string(name);
  e.group = parse_dsl(text);
  Defaults& d = e.defaults;
  Fixtures& f = e.fixtures;
  if (name == "grigorchuk" || name == "grigorchuk-lysionok") {
    e.title = name == "grigorchuk" ? "Grigorchuk group, ascending L-presentation"
                                   : "Grigorchuk group, Lysionok relators";
    f.abelianization = invariants({2, 2, 2}, 0);
    f.level_orders = orders({"2", "8", "128", "4096"});
    d.depth = 6;
    d.level = 9;
    d.wp_samples = 500;
    d.wp_max_length = 24;
    e.notes.push_back("b is a recursion generator; b = c d in the group");
  } else if (name == "grigorchuk-supergroup") {
    e.title = "Grigorchuk supergroup";
    f.abelianization = invariants({2, 2, 2, 2}, 0);
    f.level_orders = orders({"2", "8", "128", "32768"});
    d.depth = 4;
    d.level = 9;
    e.notes.push_back("bt, ct, dt stand for the decorated b, c, d");
  } else if (name == "fabrykowski-gupta") {
    e.title = "Fabrykowski-Gupta group";
    f.abelianization = invariants({3, 3}, 0);
    f.level_orders = orders({"3", "81", "59049"});
    d.depth = 4;
    d.level = 6;
    e.notes.push_back("exponent sums expanded in written order, bare -1 as r^-1");
  } else if (name == "gamma-bar") {
    e.title = "Gamma-bar, level-1 stabilizer data";
    f.level_orders = orders({"3", "81", "19683"});
    d.level = 8;
    e.conjugation = gamma_bar_data(e.group.lpres.alphabet);
    e.notes.push_back("no closed-form L-presentation; the table and relator families carry the data");
    e.notes.push_back("table identities k^s are evaluated as s k s^-1");
  } else if (name == "gupta-sidki") {
    e.title = "Gupta-Sidki group";
    f.abelianization = invariants({3, 3}, 0);
    f.level_orders = orders({"3", "27", "2187", "1162261467"});
    d.depth = 4;
    d.level = 6;
    d.wp_samples = 500;
    d.wp_max_length = 24;
    e.notes.push_back("sigma images stored in their expanded form");
  } else if (name == "lamplighter") {
    e.title = "Lamplighter group Z/2 wr Z";
    e.direct_model = DirectModel::lamplighter;
    f.abelianization = invariants({2}, 1);
    d.depth = 12;
  } else if (name == "bsv") {
    e.title = "Brunner-Sidki-Vieira group";
    f.abelianization = invariants({}, 2);
    f.level_orders = orders({"2", "4", "16", "128"});
    d.depth = 4;
    d.level = 10;
    e.notes.push_back("lambda = tau mu^-1");
  } else {
    e.enumeration_only = true;
    d.depth = 3;
    if (name == "sym-infinity-z") {
      e.title = "Finitary permutations of Z with translations, copy of sigma";
    } else if (name == "sym-infinity-z-alt") {
      e.title = "Finitary permutations of Z with translations, copy of tau";
    } else if (name == "rationals-embedding-H") {
      e.title = "Group H containing the rationals";
      e.notes.push_back("cp, dp, ep stand for the primed c, d, e");
    } else {
      e.title = "Ascending HNN embedding example";
    }
  }
  return e;
}

std::size_t factorial(unsigned n) {
  std::size_t f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

std::optional<unsigned> parameter(std::string_view name, std::string_view prefix) {
  if (name.size() <= prefix.size() + 2 || name.substr(0, prefix.size()) != prefix ||
      name[prefix.size()] != '(' || name.back() != ')')
    return std::nullopt;
  auto digits = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
  unsigned n = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || p != digits.data() + digits.size()) return std::nullopt;
  return n;
}

using Perm = std::vector<std::uint8_t>;

}  // namespace

std::string_view to_string(Origin o) { return o == Origin::stated ? "stated" : "derived"; }

Word ConjugationData::table_relator(const ConjugationIdentity& id) const {
  const Word* k = nullptr;
  for (const auto& el : elements)
    if (el.name == id.element) k = &el.word;
  if (!k) throw InputError("unknown table element '" + id.element + "'");
  std::vector<Word> images;
  for (const auto& el : elements) images.push_back(el.word);
  Word lhs = conjugate_left ? conjugate(*k, invert(id.conjugator)) : conjugate(*k, id.conjugator);
  return multiply(lhs, invert(apply_substitution(images, id.expected)));
}

std::vector<Word> ConjugationData::schreier_relators(long max_n) const {
  const Word al = Word::generator(0), be = Word::generator(1), ga = Word::generator(2),
             de = Word::generator(3);
  std::vector<Word> out{commutator(al, ga), commutator(multiply(al, be), multiply(ga, de))};
  for (long n = -max_n; n <= max_n; ++n) {
    out.push_back(commutator(multiply(al, invert(ga)), conjugate(invert(ga), power(be, n))));
    out.push_back(commutator(conjugate(be, power(ga, n)), conjugate(de, power(al, n))));
  }
  // w(u, v) for w a relator over x, y.
  const std::pair<Word, Word> pairs[] = {
      {multiply(al, invert(ga)), be}, {multiply(invert(al), ga), de}, {invert(al), invert(de)}};
  for (const auto& id : table) {
    if (id.origin != Origin::stated) continue;
    const Word w = table_relator(id);
    for (const auto& [u, v] : pairs) {
      const Word images[] = {u, v};
      out.push_back(apply_substitution(images, w));
    }
  }
  std::vector<Word> uniq;
  for (auto& w : out)
    if (!w.empty() && std::find(uniq.begin(), uniq.end(), w) == uniq.end()) uniq.push_back(std::move(w));
  return uniq;
}

std::string dsl_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ')') continue;
    out.push_back(c == '-' || c == '(' ? '_' : c);
  }
  return out;
}

std::vector<Word> sym_transposition_words(unsigned n) {
  if (n < 2 || n > 9) throw InputError("sym(n) supports 2 <= n <= 9");
  Perm id(n);
  for (unsigned i = 0; i < n; ++i) id[i] = static_cast<std::uint8_t>(i);
  // Breadth-first over Sym(n) with generators tried in index order yields the
  // shortlex-least word for every element.
  std::map<Perm, Word> seen{{id, Word{}}};
  std::deque<Perm> queue{id};
  std::vector<Word> out(std::size_t{n} * n);
  std::size_t missing = std::size_t{n} * (n - 1) / 2;
  while (!queue.empty() && missing > 0) {
    Perm p = queue.front();
    queue.pop_front();
    const Word& w = seen[p];
    for (unsigned g = 0; g + 1 < n; ++g) {
      Perm q = p;
      for (auto& x : q) {
        if (x == g) x = static_cast<std::uint8_t>(g + 1);
        else if (x == g + 1) x = static_cast<std::uint8_t>(g);
      }
      if (seen.count(q)) continue;
      Word qw = multiply(w, Word::generator(g));
      std::vector<unsigned> moved;
      for (unsigned i = 0; i < n; ++i)
        if (q[i] != i) moved.push_back(i);
      if (moved.size() == 2) {
        out[moved[0] * n + moved[1]] = qw;
        --missing;
      }
      seen.emplace(q, qw);
      queue.push_back(std::move(q));
    }
  }
  return out;
}

CatalogEntry make_sym(unsigned n) {
  if (n < 4) throw InputError("sym(n) needs n >= 4");
  const auto words = sym_transposition_words(n);
  std::vector<std::string> names;
  for (unsigned i = 1; i < n; ++i) names.push_back("s" + std::to_string(i));
  CatalogEntry e;
  e.name = "sym(" + std::to_string(n) + ")";
  e.title = "Symmetric group, three relators";
  e.group.name = dsl_name(e.name);
  LPresentation& L = e.group.lpres;
  L.alphabet = Alphabet(names);
  // The three permutations (1..n), (1 2), (3..n) as 0-based point maps.
  std::vector<std::pair<std::string, std::vector<unsigned>>> ps;
  std::vector<unsigned> cyc(n), swap(n), tail(n);
  for (unsigned i = 0; i < n; ++i) {
    cyc[i] = (i + 1) % n;
    swap[i] = i < 2 ? 1 - i : i;
    tail[i] = i < 2 ? i : (i + 1 < n ? i + 1 : 2);
  }
  ps = {{"phi_cycle", cyc}, {"phi_swap", swap}, {"phi_tail", tail}};
  for (const auto& [pname, p] : ps) {
    Endomorphism phi{pname, {}};
    for (unsigned i = 0; i + 1 < n; ++i) {
      unsigned lo = std::min(p[i], p[i + 1]), hi = std::max(p[i], p[i + 1]);
      phi.images.push_back(words[lo * n + hi]);
    }
    L.endos.push_back(std::move(phi));
  }
  const Word s1 = Word::generator(0), s2 = Word::generator(1), s3 = Word::generator(2);
  L.iterated = {power(s1, 2), power(multiply(s1, s2), 3), power(multiply(s1, s3), 2)};
  e.fixtures.group_order = factorial(n);
  e.fixtures.abelianization = invariants({2}, 0);
  e.defaults.depth = n + 2;
  e.notes.push_back("phi images: shortlex-least minimal words for the conjugated generators");
  return e;
}

CatalogEntry make_sym_transpositions(unsigned n) {
  if (n < 3 || n > 9) throw InputError("sym-transpositions(n) needs 3 <= n <= 9");
  CatalogEntry e;
  e.name = "sym-transpositions(" + std::to_string(n) + ")";
  e.title = "Symmetric group on transpositions, two relators";
  e.group.name = dsl_name(e.name);
  std::vector<std::string> names;
  std::map<std::pair<unsigned, unsigned>, std::uint32_t> index;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) {
      index[{i, j}] = static_cast<std::uint32_t>(names.size());
      names.push_back("s" + std::to_string(i) + "_" + std::to_string(j));
    }
  LPresentation& L = e.group.lpres;
  L.alphabet = Alphabet(names);
  auto endo = [&](std::string name, auto perm) {
    Endomorphism phi{std::move(name), std::vector<Word>(names.size())};
    for (const auto& [ij, g] : index) {
      unsigned a = perm(ij.first), b = perm(ij.second);
      phi.images[g] = Word::generator(index.at({std::min(a, b), std::max(a, b)}));
    }
    return phi;
  };
  L.endos.push_back(endo("phi_swap", [](unsigned i) { return i <= 2 ? 3 - i : i; }));
  L.endos.push_back(endo("phi_cycle", [n](unsigned i) { return i % n + 1; }));
  const Word s12 = Word::generator(index.at({1, 2})), s23 = Word::generator(index.at({2, 3})),
             s13 = Word::generator(index.at({1, 3}));
  L.iterated = {power(s12, 2), multiply(multiply(s12, s23), multiply(s13, s23))};
  e.fixtures.group_order = factorial(n);
  e.fixtures.abelianization = invariants({2}, 0);
  e.defaults.depth = n + 2;
  return e;
}

CatalogEntry make_zn(unsigned n) {
  if (n < 2) throw InputError("zn(n) needs n >= 2");
  CatalogEntry e;
  e.name = "zn(" + std::to_string(n) + ")";
  e.title = "Free abelian group";
  e.group.name = dsl_name(e.name);
  std::vector<std::string> names;
  for (unsigned i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  LPresentation& L = e.group.lpres;
  L.alphabet = Alphabet(names);
  Endomorphism phi1{"phi1", {}}, phi2{"phi2", {}};
  for (std::uint32_t i = 0; i < n; ++i) {
    phi1.images.push_back(Word::generator((i + 1) % n));
    phi2.images.push_back(Word::generator(i == 0 ? 0 : i % (n - 1) + 1));
  }
  L.endos = {phi1, phi2};
  L.iterated = {commutator(Word::generator(0), Word::generator(1))};
  e.fixtures.abelianization = invariants({}, n);
  e.defaults.depth = 2 * n;
  return e;
}

const std::vector<std::string>& entry_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSources) v.emplace_back(s.name);
    for (const char* p : {"sym(4)", "sym(5)", "sym-transpositions(4)", "sym-transpositions(5)",
                          "zn(2)", "zn(3)", "zn(4)"})
      v.emplace_back(p);
    return v;
  }();
  return names;
}

std::optional<std::string_view> entry_source(std::string_view name) {
  for (const auto& s : kSources)
    if (s.name == name) return s.text;
  return std::nullopt;
}

const CatalogEntry& get_entry(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<CatalogEntry>, std::less<>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return *it->second;
  CatalogEntry e;
  if (auto text = entry_source(name)) {
    e = load_fixed(name, *text);
  } else if (auto n = parameter(name, "sym")) {
    e = make_sym(*n);
  } else if (auto n = parameter(name, "sym-transpositions")) {
    e = make_sym_transpositions(*n);
  } else if (auto n = parameter(name, "zn")) {
    if (*n > 64) throw InputError("zn(n) supports n <= 64");
    e = make_zn(*n);
  } else {
    throw InputError("unknown catalog entry '" + std::string(name) + "'");
  }
  auto& slot = cache[std::string(name)];
  slot = std::make_unique<CatalogEntry>(std::move(e));
  return *slot;
}

}  // namespace endo
