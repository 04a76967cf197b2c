#include "endopres/verify.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "endopres/contract.hpp"
#include "endopres/errors.hpp"
#include "endopres/random.hpp"

namespace endo {

namespace {

std::string num(std::size_t n) { return std::to_string(n); }

Check make_check(std::string id, std::string detail) {
  Check c;
  c.id = std::move(id);
  c.detail = std::move(detail);
  return c;
}

void add_witness(Check& c, std::string w) {
  c.status = Status::fail;
  if (c.witness.size() < kMaxWitnesses) c.witness.push_back(std::move(w));
}

Check skipped(std::string id, std::string reason) {
  Check c = make_check(std::move(id), std::move(reason));
  c.status = Status::skip;
  return c;
}

std::string shorten(std::string s, std::size_t max = 200) {
  if (s.size() > max) s = s.substr(0, max) + " ...";
  return s;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

bool VerificationReport::failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::fail; });
}

LamplighterElement evaluate_lamplighter(const Word& w, const Alphabet& alphabet) {
  LamplighterElement x;
  for (const Letter& l : w) {
    const std::string& n = alphabet.name(l.gen);
    if (n == "a" || n == "b") {
      if (!x.lamps.erase(x.position)) x.lamps.insert(x.position);
    } else if (n == "t") {
      x.position += l.sign;
    } else {
      throw InputError("lamplighter model has no generator '" + n + "'");
    }
  }
  return x;
}

std::vector<Word> model_images(const CatalogEntry& e) { return model_map(e.group); }

VerificationReport verify_relators_act_trivially(const CatalogEntry& e, std::size_t depth,
                                                 unsigned level) {
  VerificationReport r{e.name, {}};
  const LPresentation& L = e.lpres();
  if (e.direct_model == DirectModel::lamplighter) {
    Check c = make_check("relators", "identity in the direct Z/2 wr Z model");
    c.params = {{"depth", num(depth)}};
    auto rels = enumerate_relators(L, depth);
    for (const auto& w : rels)
      if (!evaluate_lamplighter(w, L.alphabet).is_identity()) add_witness(c, shorten(to_string(w, L.alphabet)));
    c.evidence = {{"relators", num(rels.size())}};
    r.checks.push_back(std::move(c));
    return r;
  }
  if (!e.recursion()) {
    r.checks.push_back(skipped("relators", "entry has no tree action or direct model"));
    return r;
  }
  Check c = make_check("relators", "soundness at level " + num(level));
  c.params = {{"depth", num(depth)}, {"level", num(level)}};
  if (L.iterated.empty() && L.fixed.empty()) {
    r.checks.push_back(skipped("relators", "entry stores no relators"));
    return r;
  }
  const auto images = model_images(e);
  LevelAction act(*e.recursion(), level);
  RelatorEnumerator en(L, DedupMode::exact);
  for (std::size_t d = 1; d <= depth; ++d) en.advance();
  const auto& rels = en.emitted();
  const auto& counts = en.counts_by_depth();
  for (std::size_t k = 0; k < rels.size(); ++k) {
    if (rels[k].empty()) continue;
    if (!act.fixes_level(apply_substitution(images, rels[k]))) {
      std::size_t d = 0;
      while (counts[d] <= k) ++d;
      add_witness(c, "depth " + num(d) + ": " + shorten(to_string(rels[k], L.alphabet)));
    }
  }
  c.evidence = {{"relators", num(rels.size())}};
  r.checks.push_back(std::move(c));
  return r;
}

VerificationReport verify_conjugation_table(const CatalogEntry& e, unsigned level) {
  VerificationReport r{e.name, {}};
  if (!e.conjugation || !e.recursion()) {
    r.checks.push_back(skipped("conjugation-table", "entry has no conjugation table"));
    return r;
  }
  const ConjugationData& data = *e.conjugation;
  const SelfSimilarSpec& spec = *e.recursion();
  const Alphabet& S = e.lpres().alphabet;
  const auto images = model_images(e);
  LevelAction act(spec, level);
  auto model = [&](const Word& w) { return apply_substitution(images, w); };

  Check secs = make_check("sections", "stated first-level decompositions at level " + num(level));
  secs.params = {{"level", num(level)}};
  LevelAction below(spec, level - 1);
  for (const auto& claim : data.sections) {
    Word w;
    for (const auto& nw : data.stabilizer)
      if (nw.name == claim.element) w = nw.word;
    for (const auto& nw : data.elements)
      if (nw.name == claim.element) w = nw.word;
    const WreathForm f = wreath_decompose(spec, model(w));
    bool ok = is_identity(f.top);
    for (std::size_t i = 0; ok && i < f.sections.size(); ++i)
      ok = below.of(f.sections[i]) == below.of(model(claim.sections[i]));
    if (!ok) add_witness(secs, claim.element);
  }
  secs.evidence = {{"claims", num(data.sections.size())}};
  r.checks.push_back(std::move(secs));

  Check sanity = make_check("conjugation-identity-row", "k^1 = k at level " + num(level));
  for (const auto& k : data.elements)
    if (!act.fixes_level(multiply(model(k.word), invert(model(k.word))))) add_witness(sanity, k.name);
  r.checks.push_back(std::move(sanity));

  for (Origin origin : {Origin::stated, Origin::derived}) {
    Check c = make_check(origin == Origin::stated ? "conjugation-table" : "conjugation-table-derived",
                         std::string(to_string(origin)) + " identities k^s = w at level " + num(level));
    c.params = {{"level", num(level)}, {"origin", std::string(to_string(origin))}};
    std::size_t n = 0, held = 0;
    for (const auto& id : data.table) {
      if (id.origin != origin) continue;
      ++n;
      if (act.fixes_level(model(data.table_relator(id)))) {
        ++held;
      } else {
        add_witness(c, id.element + "^(" + to_string(id.conjugator, S) + ") = " +
                           to_string(id.expected, data.table_alphabet));
      }
    }
    c.evidence = {{"identities", num(n)}, {"holding", num(held)}};
    r.checks.push_back(std::move(c));
  }

  Check fam = make_check("schreier-relators", "relator families over alpha..delta at level " + num(level));
  fam.params = {{"level", num(level)}, {"n", "-2..2"}};
  std::vector<Word> stab;
  for (const auto& nw : data.stabilizer) stab.push_back(model(nw.word));
  const auto rels = data.schreier_relators(2);
  std::size_t held = 0;
  for (const auto& w : rels) {
    if (act.fixes_level(apply_substitution(stab, w)))
      ++held;
    else
      add_witness(fam, shorten(to_string(w, data.family_alphabet)));
  }
  fam.evidence = {{"relators", num(rels.size())}, {"holding", num(held)}};
  r.checks.push_back(std::move(fam));
  return r;
}

VerificationReport cross_check_word_problem(const CatalogEntry& e, std::size_t samples,
                                            std::size_t max_length, std::uint64_t seed) {
  VerificationReport r{e.name, {}};
  if (!e.recursion() || !e.contraction_D()) {
    r.checks.push_back(skipped("word-problem", "entry has no contraction constant"));
    return r;
  }
  const SelfSimilarSpec& spec = *e.recursion();
  Check c = make_check("word-problem", "contracting solver against the tree action");
  c.params = {{"samples", num(samples)}, {"max_length", num(max_length)}, {"seed", std::to_string(seed)},
              {"D", num(*e.contraction_D())}};
  WordProblemSolver solver(spec);
  SectionOracle oracle(spec);
  Rng rng(seed);
  std::size_t trivial = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const auto len = static_cast<std::size_t>(rng.between(0, static_cast<long>(max_length)));
    const Word w = random_word(rng, spec.alphabet.size(), len);
    const bool t = solver.is_trivial(w);
    if (t) {
      ++trivial;
      if (oracle.first_nontrivial_level(w, 12)) add_witness(c, "trivial verdict: " + to_string(w, spec.alphabet));
    } else if (!oracle.first_nontrivial_level(w, 20)) {
      add_witness(c, "nontrivial verdict: " + to_string(w, spec.alphabet));
    }
  }
  c.evidence = {{"trivial", num(trivial)}, {"nontrivial", num(samples - trivial)}};
  r.checks.push_back(std::move(c));
  return r;
}

VerificationReport verify_abelianization(const CatalogEntry& e, std::size_t max_depth) {
  VerificationReport r{e.name, {}};
  if (!e.fixtures.abelianization) {
    r.checks.push_back(skipped("abelianization", "no abelianization fixture"));
    return r;
  }
  const AbelianInvariants& want = *e.fixtures.abelianization;
  Check c = make_check("abelianization", "invariants stabilize to " + to_string(want));
  c.params = {{"max_depth", num(max_depth)}};
  constexpr std::size_t never = static_cast<std::size_t>(-1);
  std::size_t first = never;
  AbelianInvariants last;
  for (std::size_t d = 0; d <= max_depth; ++d) {
    last = abelianization(e.lpres(), d).invariants;
    if (last != want)
      first = never;
    else if (first == never)
      first = d;
  }
  if (first == never || first == max_depth)
    add_witness(c, "depth " + num(max_depth) + ": " + to_string(last));
  if (first != never) c.evidence = {{"stable_from_depth", num(first)}};
  r.checks.push_back(std::move(c));
  return r;
}

VerificationReport verify_level_orders(const CatalogEntry& e) {
  VerificationReport r{e.name, {}};
  if (!e.recursion() || e.fixtures.level_orders.empty()) {
    r.checks.push_back(skipped("level-orders", "no level order fixtures"));
    return r;
  }
  Check c = make_check("level-orders", "|G / stab(n)| by Schreier-Sims");
  std::string levels;
  for (const auto& lo : e.fixtures.level_orders) {
    const BigInt got = level_quotient_order(*e.recursion(), lo.level, std::size_t{1} << 20);
    if (got != lo.order) add_witness(c, "level " + num(lo.level) + ": " + got.str() + " != " + lo.order.str());
    levels += (levels.empty() ? "" : ",") + num(lo.level);
  }
  c.params = {{"levels", levels}};
  r.checks.push_back(std::move(c));
  return r;
}

VerificationReport verify_relator_form(const CatalogEntry& e, std::size_t depth) {
  VerificationReport r{e.name, {}};
  const LPresentation& L = e.lpres();
  const bool zn = e.name.rfind("zn(", 0) == 0;
  if (e.direct_model != DirectModel::lamplighter && !zn) {
    r.checks.push_back(skipped("relator-form", "no stated relator form"));
    return r;
  }
  Check c = make_check("relator-form", zn ? "relators are the commutators of distinct generators"
                                          : "with b = a the relators are a^2 and [a, a^(t^i)]");
  c.params = {{"depth", num(depth)}};
  std::set<Word> want;
  std::vector<Word> subst;
  for (std::uint32_t g = 0; g < L.alphabet.size(); ++g) subst.push_back(Word::generator(g));
  if (zn) {
    for (std::uint32_t i = 0; i < L.alphabet.size(); ++i)
      for (std::uint32_t j = 0; j < L.alphabet.size(); ++j)
        if (i != j) want.insert(cyclic_canonical(commutator(Word::generator(i), Word::generator(j))));
  } else {
    const Word a = Word::generator(L.alphabet.index("a")), t = Word::generator(L.alphabet.index("t"));
    subst[L.alphabet.index("b")] = a;
    want.insert(cyclic_canonical(power(a, 2)));
    for (std::size_t i = 1; i <= depth; ++i)
      want.insert(cyclic_canonical(commutator(a, conjugate(a, power(t, static_cast<long>(i))))));
  }
  std::set<Word> got;
  for (const auto& w : enumerate_relators(L, depth)) {
    Word m = cyclic_canonical(apply_substitution(subst, w));
    if (m.empty()) continue;
    if (!want.count(m)) add_witness(c, "unexpected " + shorten(to_string(w, L.alphabet)));
    got.insert(std::move(m));
  }
  for (const auto& w : want)
    if (!got.count(w)) add_witness(c, "missing " + to_string(w, L.alphabet));
  c.evidence = {{"relators", num(got.size())}};
  r.checks.push_back(std::move(c));
  return r;
}

VerificationReport verify_group_order(const CatalogEntry& e, std::size_t max_depth,
                                      std::size_t max_cosets) {
  VerificationReport r{e.name, {}};
  if (!e.fixtures.group_order) {
    r.checks.push_back(skipped("order", "no group order fixture"));
    return r;
  }
  const std::size_t want = *e.fixtures.group_order;
  Check c = make_check("order", "Todd-Coxeter on truncations, order " + num(want));
  c.params = {{"max_depth", num(max_depth)}, {"max_cosets", num(max_cosets)}};
  std::optional<std::size_t> prev;
  std::optional<std::size_t> stable_at;
  std::string seen;
  for (std::size_t d = 0; d <= max_depth && !stable_at; ++d) {
    auto o = order_from_presentation(e.lpres(), d, max_cosets);
    seen += (seen.empty() ? "" : " ") + (o ? num(*o) : std::string("overflow"));
    if (o && prev && *o == *prev) stable_at = d;
    prev = o;
  }
  if (!stable_at || *prev != want) add_witness(c, "orders by depth: " + seen);
  c.evidence = {{"orders_by_depth", seen}};
  r.checks.push_back(std::move(c));
  return r;
}

std::vector<VerificationReport> run_suite(const std::vector<std::string>& names,
                                          const SuiteConfig& config) {
  std::vector<VerificationReport> out;
  for (const auto& name : names) {
    const CatalogEntry& e = get_entry(name);
    const Defaults& d = e.defaults;
    VerificationReport all{e.name, {}};
    auto take = [&](VerificationReport&& part) {
      for (auto& c : part.checks) all.checks.push_back(std::move(c));
    };
    const std::size_t depth = config.depth.value_or(d.depth);
    if (e.enumeration_only) {
      Check c = make_check("enumeration", "relators enumerate without error");
      auto rels = enumerate_relators(e.lpres(), depth);
      c.params = {{"depth", num(depth)}};
      c.evidence = {{"relators", num(rels.size())}};
      all.checks.push_back(std::move(c));
    }
    if (e.recursion() || e.direct_model)
      take(verify_relators_act_trivially(e, depth, config.level.value_or(d.level)));
    if (e.conjugation) take(verify_conjugation_table(e, config.level.value_or(d.level)));
    if (e.contraction_D())
      take(cross_check_word_problem(e, config.samples.value_or(d.wp_samples),
                                    config.max_length.value_or(d.wp_max_length), config.seed.value_or(d.seed)));
    if (e.fixtures.abelianization) take(verify_abelianization(e, d.abelian_depth));
    take(verify_relator_form(e, depth));
    if (!e.fixtures.level_orders.empty()) take(verify_level_orders(e));
    if (e.fixtures.group_order) take(verify_group_order(e, depth, config.max_cosets.value_or(d.max_cosets)));
    const bool ran = std::any_of(all.checks.begin(), all.checks.end(),
                                 [](const Check& c) { return c.status != Status::skip; });
    if (ran) std::erase_if(all.checks, [](const Check& c) { return c.status == Status::skip; });
    out.push_back(std::move(all));
  }
  return out;
}

// ---------------------------------------------------------------- mutations

std::vector<Mutation> catalog_mutations(const std::vector<std::string>& names) {
  std::vector<Mutation> out;
  for (const auto& name : names) {
    const CatalogEntry& base = get_entry(name);
    const LPresentation& L = base.lpres();
    const auto n = static_cast<std::uint32_t>(L.alphabet.size());
    auto relator_mutants = [&](bool fixed) {
      const auto& list = fixed ? L.fixed : L.iterated;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = (fixed ? "fixed relator " : "iterated relator ") + num(i);
        for (std::uint32_t g = 0; g < n; ++g) {
          Mutation m{name, where + " with " + L.alphabet.name(g) + " appended", base};
          auto& target = fixed ? m.mutated.group.lpres.fixed[i] : m.mutated.group.lpres.iterated[i];
          target = multiply(target, Word::generator(g));
          out.push_back(std::move(m));
        }
        if (!list[i].empty()) {
          Mutation m{name, where + " with its first letter deleted", base};
          auto& target = fixed ? m.mutated.group.lpres.fixed[i] : m.mutated.group.lpres.iterated[i];
          target = Word::reduce(list[i].letters().subspan(1));
          out.push_back(std::move(m));
        }
      }
    };
    relator_mutants(true);
    relator_mutants(false);
    for (std::size_t k = 0; k < L.endos.size(); ++k) {
      for (std::uint32_t s = 0; s < n; ++s) {
        if (L.endos[k].images[s] == Word::generator(s)) continue;
        Mutation m{name, L.endos[k].name + "(" + L.alphabet.name(s) + ") with " + L.alphabet.name(0) + " appended",
                   base};
        auto& img = m.mutated.group.lpres.endos[k].images[s];
        img = multiply(img, Word::generator(0));
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

std::vector<MutationOutcome> run_mutation_harness(const std::vector<std::string>& names) {
  std::vector<MutationOutcome> out;
  for (auto& m : catalog_mutations(names)) {
    const CatalogEntry& e = m.mutated;
    MutationOutcome o{m.entry, m.description, false, {}};
    const std::size_t depth = std::min<std::size_t>(e.defaults.depth, 3);
    std::vector<VerificationReport> reports;
    if (e.recursion() || e.direct_model)
      reports.push_back(verify_relators_act_trivially(e, depth, std::min(e.defaults.level, 8u)));
    if (e.fixtures.group_order) reports.push_back(verify_group_order(e, e.defaults.depth, e.defaults.max_cosets));
    if (e.fixtures.abelianization) reports.push_back(verify_abelianization(e, e.defaults.abelian_depth));
    reports.push_back(verify_relator_form(e, depth));
    for (const auto& r : reports)
      for (const auto& c : r.checks)
        if (c.status == Status::fail && !o.caught) {
          o.caught = true;
          o.caught_by = c.id;
        }
    out.push_back(std::move(o));
  }
  return out;
}

// ---------------------------------------------------------------- output

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      nlohmann::ordered_json j;
      j["entry"] = r.entry;
      j["check"] = c.id;
      j["status"] = std::string(to_string(c.status));
      if (!c.witness.empty()) j["witness"] = c.witness;
      j["detail"] = c.detail;
      nlohmann::ordered_json ev = nlohmann::ordered_json::object();
      for (const auto& [k, v] : c.evidence) ev[k] = v;
      j["evidence"] = ev;
      nlohmann::ordered_json ps = nlohmann::ordered_json::object();
      for (const auto& [k, v] : c.params) ps[k] = v;
      j["params"] = ps;
      arr.push_back(std::move(j));
    }
  }
  return arr.dump(2) + "\n";
}

std::string reports_to_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      os << r.entry << "  " << c.id << "  " << to_string(c.status) << "  " << c.detail;
      for (const auto& [k, v] : c.evidence) os << "  " << k << "=" << v;
      os << "\n";
      for (const auto& w : c.witness) os << "    witness: " << w << "\n";
    }
  }
  return os.str();
}

}  // namespace endo
