#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "endopres/catalog.hpp"
#include "endopres/contract.hpp"
#include "endopres/coset.hpp"
#include "endopres/errors.hpp"
#include "endopres/verify.hpp"

namespace endo::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string entry;
  std::string file;
  std::size_t depth = 0;
  bool depth_set = false;
  unsigned level = 0;
  bool level_set = false;
  std::size_t max_cosets = 100000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string format = "text";
  std::vector<std::string> positional;
  bool all = false;
  std::string generators;
  std::string lambda = "1/6";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Group from --file, --entry, or a leading positional entry name.
struct Source {
  GroupFile group;
  const CatalogEntry* entry = nullptr;
  std::string name;
};

Source resolve(Options& o, bool positional_entry) {
  Source s;
  if (!o.file.empty()) {
    s.group = parse_dsl(read_file(o.file));
    s.name = s.group.name;
    return s;
  }
  std::string name = o.entry;
  if (name.empty() && positional_entry && !o.positional.empty()) {
    name = o.positional.front();
    o.positional.erase(o.positional.begin());
  }
  if (name.empty()) throw InputError("no group given: use --entry NAME or --file PATH");
  s.entry = &get_entry(name);
  s.group = s.entry->group;
  s.name = s.entry->name;
  return s;
}

const SelfSimilarSpec& need_recursion(const Source& s) {
  if (!s.group.recursion) throw InputError("group '" + s.name + "' has no recursion");
  return *s.group.recursion;
}

Word recursion_word(const Source& s, const std::string& text) {
  return parse_word(text, need_recursion(s).alphabet, s.group.aliases);
}

bool json(const Options& o) { return o.format == "json"; }

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

int cmd_enumerate(Options& o, std::ostream& out) {
  Source s = resolve(o, true);
  const std::size_t depth = o.depth_set ? o.depth : 2;
  RelatorEnumerator en(s.group.lpres, DedupMode::exact);
  for (std::size_t d = 1; d <= depth; ++d) en.advance();
  const Alphabet& A = s.group.lpres.alphabet;
  if (json(o)) {
    ordered_json j;
    j["group"] = s.name;
    j["depth"] = depth;
    j["counts_by_depth"] = en.counts_by_depth();
    ordered_json rels = ordered_json::array();
    for (const auto& w : en.emitted()) rels.push_back(to_string(w, A));
    j["relators"] = rels;
    emit(out, j);
  } else {
    for (const auto& w : en.emitted()) out << to_string(w, A) << "\n";
  }
  return ok;
}

int cmd_abelianize(Options& o, std::ostream& out) {
  Source s = resolve(o, true);
  const std::size_t depth = o.depth_set ? o.depth : 5;
  Abelianization a = abelianization(s.group.lpres, depth);
  if (json(o)) {
    ordered_json j;
    j["group"] = s.name;
    j["depth"] = depth;
    ordered_json t = ordered_json::array();
    for (const auto& d : a.invariants.torsion) t.push_back(d.str());
    j["torsion"] = t;
    j["free_rank"] = a.invariants.free_rank;
    j["stabilized"] = a.stabilized;
    j["relators"] = a.relators;
    emit(out, j);
  } else {
    out << to_string(a.invariants) << (a.stabilized ? "" : "  (not yet stable at this depth)") << "\n";
  }
  return ok;
}

int cmd_wp(Options& o, std::ostream& out) {
  Source s = resolve(o, true);
  if (o.positional.size() != 1) throw InputError("wp expects exactly one word");
  const SelfSimilarSpec& spec = need_recursion(s);
  const Word w = recursion_word(s, o.positional.front());
  WordProblemSolver solver(spec);
  const bool t = solver.is_trivial(w);
  if (json(o)) {
    ordered_json j;
    j["group"] = s.name;
    j["word"] = to_string(w, spec.alphabet);
    j["trivial"] = t;
    emit(out, j);
  } else {
    out << (t ? "trivial" : "nontrivial") << "\n";
  }
  return ok;
}

int cmd_act(Options& o, std::ostream& out) {
  Source s = resolve(o, true);
  if (o.positional.size() != 1) throw InputError("act expects exactly one word");
  const SelfSimilarSpec& spec = need_recursion(s);
  const unsigned level = o.level_set ? o.level : 1;
  const Word w = recursion_word(s, o.positional.front());
  LevelPermutation p = level_permutation(spec, w, level);
  std::vector<std::uint32_t> images;
  for (auto x : p.images) images.push_back(x + 1);
  if (json(o)) {
    ordered_json j;
    j["group"] = s.name;
    j["word"] = to_string(w, spec.alphabet);
    j["level"] = level;
    j["images"] = images;
    j["identity"] = p.is_identity();
    emit(out, j);
  } else {
    for (std::size_t i = 0; i < images.size(); ++i) out << (i ? " " : "") << images[i];
    out << "\n";
  }
  return ok;
}

int cmd_order(Options& o, std::ostream& out) {
  Source s = resolve(o, true);
  ordered_json j;
  j["group"] = s.name;
  std::string text;
  if (s.group.recursion) {
    const unsigned level = o.level_set ? o.level : 1;
    BigInt n = level_quotient_order(*s.group.recursion, level);
    j["level"] = level;
    j["order"] = n.str();
    text = n.str();
  } else {
    // Deepen until two consecutive truncations close with the same order.
    const std::size_t max_depth = o.depth_set ? o.depth : (s.entry ? s.entry->defaults.depth : 6);
    std::optional<std::size_t> prev, n;
    std::size_t depth = 0;
    for (; depth <= max_depth; ++depth) {
      auto cur = order_from_presentation(s.group.lpres, depth, o.max_cosets);
      if (cur && prev && *cur == *prev) {
        n = cur;
        break;
      }
      prev = cur;
    }
    if (!n) throw ResourceError("no stable order up to depth " + std::to_string(max_depth) + " within " +
                                std::to_string(o.max_cosets) + " cosets");
    j["depth"] = depth;
    j["order"] = std::to_string(*n);
    text = std::to_string(*n);
  }
  if (json(o))
    emit(out, j);
  else
    out << text << "\n";
  return ok;
}

int cmd_verify(Options& o, std::ostream& out) {
  std::vector<std::string> names;
  if (o.all) names = entry_names();
  if (!o.entry.empty()) names.push_back(o.entry);
  for (const auto& p : o.positional) names.push_back(p);
  if (names.empty()) throw InputError("verify needs entry names or --all");
  for (const auto& n : names) get_entry(n);
  SuiteConfig cfg;
  if (o.depth_set) cfg.depth = o.depth;
  if (o.level_set) cfg.level = o.level;
  if (o.seed_set) cfg.seed = o.seed;
  auto reports = run_suite(names, cfg);
  out << (json(o) ? reports_to_json(reports) : reports_to_text(reports));
  for (const auto& r : reports)
    if (r.failed()) return verification_failed;
  return ok;
}

int cmd_tc(Options& o, std::ostream& out) {
  Source s = resolve(o, true);
  const std::size_t depth = o.depth_set ? o.depth : 3;
  const FinitePresentation p = truncate(s.group.lpres, depth, DedupMode::cyclic);
  std::vector<Word> subgroup;
  for (const auto& w : o.positional) subgroup.push_back(parse_word(w, p.alphabet));
  const CosetTable t = todd_coxeter(p, subgroup, o.max_cosets);
  if (json(o)) {
    ordered_json j;
    j["group"] = s.name;
    j["depth"] = depth;
    j["relators"] = p.relators.size();
    j["status"] = t.closed() ? "closed" : "overflow";
    j["defined"] = t.defined;
    if (t.closed()) j["index"] = t.size();
    emit(out, j);
  } else if (t.closed()) {
    out << "index " << t.size() << " (" << t.defined << " cosets defined)\n";
  } else {
    out << "overflow after " << t.defined << " cosets\n";
  }
  return t.closed() ? ok : resource_cap;
}

int cmd_embed(Options& o, std::ostream& out) {
  Source s = resolve(o, true);
  const FinitePresentation p = hnn_embed(s.group.lpres);
  GroupFile g;
  g.name = dsl_name(s.name) + "_embedded";
  g.lpres = as_lpresentation(p);
  out << (json(o) ? lpres_to_json(g.lpres) : print_dsl(g));
  return ok;
}

Rational parse_lambda(const std::string& text) {
  Rational r;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) throw InputError("");
    r.num = std::stol(text.substr(0, slash));
    r.den = std::stol(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw InputError("--lambda expects p/q, got '" + text + "'");
  }
  if (r.num <= 0 || r.den <= 0) throw InputError("--lambda must be positive");
  return r;
}

int cmd_smallcanc(Options& o, std::ostream& out) {
  if (o.positional.empty()) throw InputError("smallcanc expects relator words");
  std::vector<std::string> names;
  if (!o.generators.empty()) {
    std::stringstream ss(o.generators);
    for (std::string n; std::getline(ss, n, ',');) names.push_back(n);
  } else {
    for (const auto& w : o.positional)
      for (char c : w)
        if (std::isalpha(static_cast<unsigned char>(c)) && std::find(names.begin(), names.end(), std::string(1, c)) == names.end())
          names.emplace_back(1, c);
  }
  const Alphabet A(names);
  std::vector<Word> ws;
  for (const auto& w : o.positional) ws.push_back(parse_word(w, A));
  const Rational lambda = parse_lambda(o.lambda);
  const auto r = check_small_cancellation(ws, lambda);
  if (json(o)) {
    ordered_json j;
    j["lambda"] = o.lambda;
    j["holds"] = r.holds;
    if (r.witness) {
      j["piece"] = to_string(r.witness->piece, A);
      j["first"] = to_string(r.witness->first, A);
      j["second"] = to_string(r.witness->second, A);
    }
    emit(out, j);
  } else if (r.holds) {
    out << "C'(" << o.lambda << ") holds\n";
  } else {
    out << "C'(" << o.lambda << ") fails: piece " << to_string(r.witness->piece, A) << " of "
        << to_string(r.witness->first, A) << " and " << to_string(r.witness->second, A) << "\n";
  }
  return r.holds ? ok : verification_failed;
}

int cmd_catalog(Options& o, std::ostream& out) {
  if (o.positional.empty() && o.entry.empty()) {
    if (json(o)) {
      ordered_json arr = ordered_json::array();
      for (const auto& n : entry_names()) {
        const auto& e = get_entry(n);
        arr.push_back({{"name", e.name}, {"title", e.title}, {"recursion", e.recursion().has_value()},
                       {"enumeration_only", e.enumeration_only}});
      }
      emit(out, arr);
    } else {
      for (const auto& n : entry_names()) out << n << "  " << get_entry(n).title << "\n";
    }
    return ok;
  }
  const CatalogEntry& e = get_entry(o.entry.empty() ? o.positional.front() : o.entry);
  if (json(o)) {
    out << lpres_to_json(e.lpres());
  } else {
    out << print_dsl(e.group);
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"L-presentations, self-similar groups and their verification"};
  app.require_subcommand(1);
  Options o;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--entry", o.entry, "catalog entry name");
    sub->add_option("--file", o.file, "group file in the presentation language");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_depth = [&](CLI::App* sub) {
    sub->add_option_function<std::size_t>("--depth", [&](std::size_t d) { o.depth = d; o.depth_set = true; },
                                          "endomorphism composition depth");
  };
  auto add_level = [&](CLI::App* sub) {
    sub->add_option_function<unsigned>("--level", [&](unsigned l) { o.level = l; o.level_set = true; }, "tree level");
  };

  auto* enumerate = app.add_subcommand("enumerate", "relators up to a depth");
  auto* abelianize = app.add_subcommand("abelianize", "abelian invariants of a truncation");
  auto* wp = app.add_subcommand("wp", "word problem in a contracting group");
  auto* act = app.add_subcommand("act", "permutation induced on a tree level");
  auto* order = app.add_subcommand("order", "level quotient order, or group order by coset enumeration");
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  auto* tc = app.add_subcommand("tc", "Todd-Coxeter coset enumeration");
  auto* embed = app.add_subcommand("embed", "finitely presented ascending HNN embedding");
  auto* smallcanc = app.add_subcommand("smallcanc", "metric small cancellation test");
  auto* catalog = app.add_subcommand("catalog", "list entries or print one");

  for (auto* sub : {enumerate, abelianize, wp, act, order, verify, tc, embed, catalog}) add_source(sub);
  smallcanc->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  for (auto* sub : {enumerate, abelianize, order, verify, tc}) add_depth(sub);
  for (auto* sub : {act, order, verify}) add_level(sub);
  for (auto* sub : {order, tc}) sub->add_option("--max-cosets", o.max_cosets, "coset limit");
  verify->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { o.seed = s; o.seed_set = true; },
                                             "random seed");
  verify->add_flag("--all", o.all, "every catalog entry");
  smallcanc->add_option("--generators", o.generators, "comma-separated generator names");
  smallcanc->add_option("--lambda", o.lambda, "bound p/q");
  // Positionals are taken raw: CLI11 would read "[x, y]" as a list.
  const std::vector<CLI::App*> subs{enumerate, abelianize, wp, act, order, verify, tc, embed, smallcanc, catalog};
  for (auto* sub : subs) sub->allow_extras();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return usage;
  }

  for (auto* sub : subs)
    if (*sub) {
      o.positional = sub->remaining();
      for (const auto& p : o.positional)
        if (p.size() > 1 && p[0] == '-' && p[1] == '-') {
          err << "unknown option " << p << "\n";
          return usage;
        }
    }

  try {
    if (*enumerate) return cmd_enumerate(o, out);
    if (*abelianize) return cmd_abelianize(o, out);
    if (*wp) return cmd_wp(o, out);
    if (*act) return cmd_act(o, out);
    if (*order) return cmd_order(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*tc) return cmd_tc(o, out);
    if (*embed) return cmd_embed(o, out);
    if (*smallcanc) return cmd_smallcanc(o, out);
    if (*catalog) return cmd_catalog(o, out);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return resource_cap;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace endo::cli
