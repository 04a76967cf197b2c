#include "endopres/dsl.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "endopres/errors.hpp"

#include <json.hpp>

namespace endo {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok {
  ident, integer, lbrace, rbrace, lparen, rparen, lbrack, rbrack,
  comma, semi, colon, caret, equals, arrow, define, minus, end
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::end, "", line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Tok::ident;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::integer;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else {
      const std::string_view two = s.substr(i, 2);
      if (two == "->") {
        t.kind = Tok::arrow;
      } else if (two == ":=") {
        t.kind = Tok::define;
      } else {
        switch (c) {
          case '{': t.kind = Tok::lbrace; break;
          case '}': t.kind = Tok::rbrace; break;
          case '(': t.kind = Tok::lparen; break;
          case ')': t.kind = Tok::rparen; break;
          case '[': t.kind = Tok::lbrack; break;
          case ']': t.kind = Tok::rbrack; break;
          case ',': t.kind = Tok::comma; break;
          case ';': t.kind = Tok::semi; break;
          case ':': t.kind = Tok::colon; break;
          case '^': t.kind = Tok::caret; break;
          case '=': t.kind = Tok::equals; break;
          case '-': t.kind = Tok::minus; break;
          default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
      }
      const std::size_t len = (t.kind == Tok::arrow || t.kind == Tok::define) ? 2 : 1;
      t.text = std::string(s.substr(i, len));
      advance(len);
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

// ---------------------------------------------------------------- syntax tree

struct Ast {
  enum class Kind { name, one, product, power, conj, comm };
  Kind kind = Kind::one;
  std::string name;
  long exponent = 1;
  std::vector<Ast> kids;
  std::size_t line = 0;
  std::size_t col = 0;
};

struct RecLine {
  Token name;
  bool alias = false;
  Permutation top;       // generator lines only; empty when not given
  std::vector<Ast> sections;
  Ast word;              // alias lines
  Token sections_at{Tok::end, "", 0, 0};
};

struct RawEndo {
  Token name;
  std::vector<std::pair<Token, Ast>> images;
};

struct RawFile {
  Token name{Tok::end, "", 0, 0};
  std::vector<Token> generators;
  bool have_generators = false;
  std::vector<Ast> fixed;
  std::vector<RawEndo> endos;
  std::vector<Ast> iterated;
  std::optional<Token> degree;
  std::vector<RecLine> recursion;
  std::optional<Token> contraction;
  std::vector<std::pair<Ast, Ast>> reductions;
  std::vector<Ast> branching;
  Token recursion_at{Tok::end, "", 0, 0};
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  RawFile file() {
    RawFile f;
    keyword("group");
    f.name = expect(Tok::ident, "a group name");
    expect(Tok::lbrace, "'{'");
    while (peek().kind != Tok::rbrace) section(f);
    expect(Tok::rbrace, "'}'");
    expect(Tok::end, "end of input");
    return f;
  }

  Ast standalone_word() {
    Ast w = word();
    expect(Tok::end, "end of word");
    return w;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw SyntaxError(msg, at.line, at.col);
  }
  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what + ", found " + describe(peek()), peek());
    return next();
  }
  void keyword(const std::string& kw) {
    if (peek().kind != Tok::ident || peek().text != kw)
      fail("expected '" + kw + "', found " + describe(peek()), peek());
    next();
  }

  void section(RawFile& f) {
    const Token head = expect(Tok::ident, "a section keyword");
    const auto& k = head.text;
    if (k == "generators") {
      expect(Tok::colon, "':'");
      if (f.have_generators) fail("generators declared twice", head);
      f.have_generators = true;
      if (peek().kind != Tok::ident) fail("expected at least one generator name", peek());
      do {
        f.generators.push_back(expect(Tok::ident, "a generator name"));
      } while (accept(Tok::comma));
      expect(Tok::semi, "';'");
    } else if (k == "fixed" || k == "iterated" || k == "branching") {
      expect(Tok::colon, "':'");
      auto ws = word_list();
      auto& dst = k == "fixed" ? f.fixed : k == "iterated" ? f.iterated : f.branching;
      for (auto& w : ws) dst.push_back(std::move(w));
      expect(Tok::semi, "';'");
    } else if (k == "endo") {
      RawEndo e;
      e.name = expect(Tok::ident, "an endomorphism name");
      expect(Tok::colon, "':'");
      if (peek().kind != Tok::semi) {
        do {
          Token g = expect(Tok::ident, "a generator name");
          expect(Tok::arrow, "'->'");
          e.images.emplace_back(std::move(g), word());
        } while (accept(Tok::comma));
      }
      expect(Tok::semi, "';'");
      f.endos.push_back(std::move(e));
    } else if (k == "recursion") {
      if (f.degree) fail("recursion declared twice", head);
      f.recursion_at = head;
      keyword("degree");
      f.degree = expect(Tok::integer, "the tree degree");
      expect(Tok::lbrace, "'{'");
      const auto d = std::stoul(f.degree->text);
      while (peek().kind != Tok::rbrace) f.recursion.push_back(rec_line(d));
      expect(Tok::rbrace, "'}'");
    } else if (k == "contraction") {
      keyword("D");
      expect(Tok::equals, "'='");
      f.contraction = expect(Tok::integer, "the contraction constant");
      expect(Tok::semi, "';'");
    } else if (k == "reduce") {
      expect(Tok::colon, "':'");
      if (peek().kind != Tok::semi) {
        do {
          Ast lhs = word();
          expect(Tok::arrow, "'->'");
          f.reductions.emplace_back(std::move(lhs), word());
        } while (accept(Tok::comma));
      }
      expect(Tok::semi, "';'");
    } else {
      fail("unknown section '" + k + "'", head);
    }
  }

  std::vector<Ast> word_list() {
    std::vector<Ast> out;
    if (peek().kind == Tok::semi) return out;
    do {
      out.push_back(word());
    } while (accept(Tok::comma));
    return out;
  }

  bool is_cycle_group() const {
    if (peek().kind != Tok::lparen) return false;
    std::size_t k = 1;
    while (peek(k).kind == Tok::integer) ++k;
    return peek(k).kind == Tok::rparen;
  }

  RecLine rec_line(std::size_t d) {
    RecLine r;
    r.name = expect(Tok::ident, "a generator name");
    if (accept(Tok::define)) {
      r.alias = true;
      r.word = word();
      expect(Tok::semi, "';'");
      return r;
    }
    expect(Tok::equals, "'=' or ':='");
    bool any = false;
    if (peek().kind == Tok::ident && peek().text == "perm") {
      next();
      if (!is_cycle_group()) fail("expected a cycle such as (1 2)", peek());
      r.top = identity_permutation(d);
      std::vector<bool> used(d, false);
      while (is_cycle_group()) {
        next();
        std::vector<std::uint32_t> cyc;
        while (peek().kind == Tok::integer) {
          const Token t = next();
          const auto v = std::stoul(t.text);
          if (v < 1 || v > d) fail("cycle entry out of range 1.." + std::to_string(d), t);
          if (used[v - 1]) fail("point repeated in permutation", t);
          used[v - 1] = true;
          cyc.push_back(static_cast<std::uint32_t>(v - 1));
        }
        next();
        for (std::size_t i = 0; i < cyc.size(); ++i) r.top[cyc[i]] = cyc[(i + 1) % cyc.size()];
      }
      any = true;
    }
    if (peek().kind == Tok::lparen) {
      r.sections_at = next();
      do {
        r.sections.push_back(word());
      } while (accept(Tok::comma));
      expect(Tok::rparen, "')'");
      any = true;
    }
    if (!any) fail("expected perm(...) or a section tuple", peek());
    expect(Tok::semi, "';'");
    return r;
  }

  Ast word() {
    Ast prod;
    prod.kind = Ast::Kind::product;
    prod.line = peek().line;
    prod.col = peek().col;
    while (starts_atom(peek())) prod.kids.push_back(term());
    if (prod.kids.empty()) fail("expected a word, found " + describe(peek()), peek());
    if (prod.kids.size() == 1) return std::move(prod.kids.front());
    return prod;
  }

  static bool starts_atom(const Token& t) {
    return t.kind == Tok::ident || t.kind == Tok::integer || t.kind == Tok::lparen ||
           t.kind == Tok::lbrack;
  }

  Ast term() {
    Ast base = atom();
    while (peek().kind == Tok::caret) {
      const Token c = next();
      Ast t;
      t.line = c.line;
      t.col = c.col;
      if (peek().kind == Tok::minus || peek().kind == Tok::integer) {
        const bool neg = accept(Tok::minus);
        const Token n = expect(Tok::integer, "an exponent");
        t.kind = Ast::Kind::power;
        t.exponent = std::stol(n.text) * (neg ? -1 : 1);
        t.kids.push_back(std::move(base));
      } else {
        t.kind = Ast::Kind::conj;
        t.kids.push_back(std::move(base));
        t.kids.push_back(atom());
      }
      base = std::move(t);
    }
    return base;
  }

  Ast atom() {
    const Token t = next();
    Ast a;
    a.line = t.line;
    a.col = t.col;
    switch (t.kind) {
      case Tok::ident:
        a.kind = Ast::Kind::name;
        a.name = t.text;
        return a;
      case Tok::integer:
        if (t.text != "1") fail("only 1 may stand for a word", t);
        a.kind = Ast::Kind::one;
        return a;
      case Tok::lparen: {
        Ast inner = word();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::lbrack: {
        Ast acc = word();
        expect(Tok::comma, "',' in commutator");
        do {
          Ast c;
          c.kind = Ast::Kind::comm;
          c.line = t.line;
          c.col = t.col;
          c.kids.push_back(std::move(acc));
          c.kids.push_back(word());
          acc = std::move(c);
        } while (accept(Tok::comma));
        expect(Tok::rbrack, "']'");
        return acc;
      }
      default:
        fail("expected a word, found " + describe(t), t);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- resolution

struct Scope {
  const Alphabet& alphabet;
  const std::vector<Alias>& aliases;

  std::optional<Word> lookup(const std::string& name) const {
    if (auto g = alphabet.find(name)) return Word::generator(*g);
    for (const auto& a : aliases)
      if (a.name == name) return a.word;
    return std::nullopt;
  }
};

Word resolve(const Ast& a, const Scope& scope) {
  switch (a.kind) {
    case Ast::Kind::one:
      return {};
    case Ast::Kind::name: {
      if (auto w = scope.lookup(a.name)) return *w;
      // "adad" for single-letter generators
      WordBuilder b;
      for (char c : a.name) {
        auto w = scope.lookup(std::string(1, c));
        if (!w) throw SyntaxError("unknown generator '" + a.name + "'", a.line, a.col);
        b.append(*w);
      }
      return std::move(b).take();
    }
    case Ast::Kind::product: {
      WordBuilder b;
      for (const auto& k : a.kids) b.append(resolve(k, scope));
      return std::move(b).take();
    }
    case Ast::Kind::power:
      return power(resolve(a.kids[0], scope), a.exponent);
    case Ast::Kind::conj:
      return conjugate(resolve(a.kids[0], scope), resolve(a.kids[1], scope));
    case Ast::Kind::comm:
      return commutator(resolve(a.kids[0], scope), resolve(a.kids[1], scope));
  }
  return {};
}

GroupFile assemble(const RawFile& f) {
  GroupFile g;
  g.name = f.name.text;
  if (!f.have_generators) throw SyntaxError("missing generators section", f.name.line, f.name.col);

  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& t : f.generators) {
    if (!seen.insert(t.text).second)
      throw SyntaxError("duplicate generator '" + t.text + "'", t.line, t.col);
    names.push_back(t.text);
  }
  g.lpres.alphabet = Alphabet(names);
  const std::vector<Alias> no_aliases;
  const Scope ls{g.lpres.alphabet, no_aliases};
  for (const auto& w : f.fixed) g.lpres.fixed.push_back(resolve(w, ls));
  for (const auto& w : f.iterated) g.lpres.iterated.push_back(resolve(w, ls));

  std::set<std::string> endo_names;
  for (const auto& e : f.endos) {
    if (!endo_names.insert(e.name.text).second)
      throw SyntaxError("duplicate endomorphism '" + e.name.text + "'", e.name.line, e.name.col);
    Endomorphism phi = identity_endomorphism(names.size(), e.name.text);
    std::set<std::uint32_t> mapped;
    for (const auto& [gen, img] : e.images) {
      auto idx = g.lpres.alphabet.find(gen.text);
      if (!idx) throw SyntaxError("unknown generator '" + gen.text + "'", gen.line, gen.col);
      if (!mapped.insert(*idx).second)
        throw SyntaxError("generator '" + gen.text + "' mapped twice", gen.line, gen.col);
      phi.images[*idx] = resolve(img, ls);
    }
    g.lpres.endos.push_back(std::move(phi));
  }

  const bool has_extras = f.contraction || !f.reductions.empty() || !f.branching.empty();
  if (!f.degree) {
    if (has_extras)
      throw SyntaxError("contraction, reduce and branching need a recursion block", f.name.line,
                        f.name.col);
    return g;
  }

  SelfSimilarSpec spec;
  spec.degree = static_cast<unsigned>(std::stoul(f.degree->text));
  if (spec.degree < 2) throw SyntaxError("tree degree must be at least 2", f.degree->line, f.degree->col);
  std::vector<std::string> rnames;
  std::set<std::string> rseen;
  for (const auto& r : f.recursion) {
    if (!rseen.insert(r.name.text).second)
      throw SyntaxError("'" + r.name.text + "' defined twice", r.name.line, r.name.col);
    if (!r.alias) rnames.push_back(r.name.text);
  }
  if (rnames.empty())
    throw SyntaxError("recursion block defines no generators", f.recursion_at.line, f.recursion_at.col);
  spec.alphabet = Alphabet(rnames);

  for (const auto& r : f.recursion) {
    if (!r.alias) continue;
    const Scope rs{spec.alphabet, g.aliases};
    g.aliases.push_back({r.name.text, resolve(r.word, rs)});
  }
  const Scope rs{spec.alphabet, g.aliases};
  for (const auto& r : f.recursion) {
    if (r.alias) continue;
    GeneratorRecursion gr;
    gr.top = r.top.empty() ? identity_permutation(spec.degree) : r.top;
    if (r.sections.empty()) {
      gr.sections.assign(spec.degree, Word{});
    } else {
      if (r.sections.size() != spec.degree)
        throw SyntaxError("'" + r.name.text + "' needs " + std::to_string(spec.degree) + " sections",
                          r.sections_at.line, r.sections_at.col);
      for (const auto& s : r.sections) gr.sections.push_back(resolve(s, rs));
    }
    spec.recursion.push_back(std::move(gr));
  }
  if (f.contraction) spec.contraction_D = static_cast<unsigned>(std::stoul(f.contraction->text));
  for (const auto& [lhs, rhs] : f.reductions) {
    ReductionRule rule{resolve(lhs, rs), resolve(rhs, rs)};
    if (rule.lhs.empty()) throw SyntaxError("reduction rule with empty left side", lhs.line, lhs.col);
    spec.reductions.push_back(std::move(rule));
  }
  for (const auto& w : f.branching) spec.branching.push_back(resolve(w, rs));
  spec.validate();
  g.recursion = std::move(spec);
  return g;
}

// ---------------------------------------------------------------- printing

std::string cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    do {
      seen[j] = true;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
      j = p[j];
    } while (j != i);
    out += ")";
  }
  return out;
}

std::string join(const std::vector<Word>& ws, const Alphabet& a) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ", " : "") + to_string(ws[i], a);
  return out;
}

}  // namespace

GroupFile parse_dsl(std::string_view text) {
  Parser p(lex(text));
  return assemble(p.file());
}

Word parse_word(std::string_view text, const Alphabet& alphabet, const std::vector<Alias>& aliases) {
  Parser p(lex(text));
  Ast a = p.standalone_word();
  return resolve(a, Scope{alphabet, aliases});
}

std::string print_dsl(const GroupFile& g) {
  const auto& L = g.lpres;
  std::ostringstream os;
  os << "group " << g.name << " {\n";
  os << "  generators: ";
  for (std::size_t i = 0; i < L.alphabet.size(); ++i) os << (i ? ", " : "") << L.alphabet.name(i);
  os << ";\n";
  if (!L.fixed.empty()) os << "  fixed: " << join(L.fixed, L.alphabet) << ";\n";
  for (const auto& phi : L.endos) {
    os << "  endo " << phi.name << ":";
    bool first = true;
    for (std::uint32_t s = 0; s < phi.images.size(); ++s) {
      if (phi.images[s] == Word::generator(s)) continue;
      os << (first ? " " : ", ") << L.alphabet.name(s) << " -> " << to_string(phi.images[s], L.alphabet);
      first = false;
    }
    os << ";\n";
  }
  if (!L.iterated.empty()) os << "  iterated: " << join(L.iterated, L.alphabet) << ";\n";
  if (g.recursion) {
    const auto& spec = *g.recursion;
    const auto& A = spec.alphabet;
    os << "  recursion degree " << spec.degree << " {\n";
    for (std::size_t k = 0; k < spec.recursion.size(); ++k) {
      const auto& r = spec.recursion[k];
      const bool moves = !is_identity(r.top);
      bool has_sections = false;
      for (const auto& s : r.sections) has_sections = has_sections || !s.empty();
      os << "    " << A.name(k) << " =";
      if (moves) os << " perm" << cycles(r.top);
      if (has_sections || !moves) os << " (" << join(r.sections, A) << ")";
      os << ";\n";
    }
    for (const auto& a : g.aliases) os << "    " << a.name << " := " << to_string(a.word, A) << ";\n";
    os << "  }\n";
    if (spec.contraction_D) os << "  contraction D = " << *spec.contraction_D << ";\n";
    if (!spec.reductions.empty()) {
      os << "  reduce:";
      for (std::size_t i = 0; i < spec.reductions.size(); ++i)
        os << (i ? ", " : " ") << to_string(spec.reductions[i].lhs, A) << " -> "
           << to_string(spec.reductions[i].rhs, A);
      os << ";\n";
    }
    if (!spec.branching.empty()) os << "  branching: " << join(spec.branching, A) << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::vector<Word> model_map(const GroupFile& g) {
  if (!g.recursion) throw InputError("group '" + g.name + "' has no recursion");
  const Scope rs{g.recursion->alphabet, g.aliases};
  std::vector<Word> out;
  for (const auto& name : g.lpres.alphabet.names()) {
    auto w = rs.lookup(name);
    if (!w) throw InputError("generator '" + name + "' has no counterpart in the recursion");
    out.push_back(*w);
  }
  return out;
}

std::string lpres_to_json(const LPresentation& L) {
  nlohmann::json j;
  j["alphabet"] = L.alphabet.names();
  auto words = [&](const std::vector<Word>& ws) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& w : ws) arr.push_back(to_string(w, L.alphabet));
    return arr;
  };
  j["fixed"] = words(L.fixed);
  j["iterated"] = words(L.iterated);
  nlohmann::json endos = nlohmann::json::object();
  for (const auto& phi : L.endos) {
    nlohmann::json m = nlohmann::json::object();
    for (std::size_t g = 0; g < phi.images.size(); ++g) m[L.alphabet.name(g)] = to_string(phi.images[g], L.alphabet);
    endos[phi.name] = m;
  }
  j["endos"] = endos;
  return j.dump(2) + "\n";
}

LPresentation lpres_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  try {
    LPresentation L;
    L.alphabet = Alphabet(j.at("alphabet").get<std::vector<std::string>>());
    for (const auto& w : j.value("fixed", nlohmann::json::array())) L.fixed.push_back(parse_word(w.get<std::string>(), L.alphabet));
    for (const auto& w : j.value("iterated", nlohmann::json::array()))
      L.iterated.push_back(parse_word(w.get<std::string>(), L.alphabet));
    // object keys come back sorted, matching the printed order
    const auto endos = j.value("endos", nlohmann::json::object());
    for (const auto& [name, map] : endos.items()) {
      Endomorphism phi = identity_endomorphism(L.alphabet.size(), name);
      for (const auto& [g, w] : map.items()) phi.images[L.alphabet.index(g)] = parse_word(w.get<std::string>(), L.alphabet);
      L.endos.push_back(std::move(phi));
    }
    L.validate();
    return L;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad L-presentation JSON: ") + e.what());
  }
}

}  // namespace endo
