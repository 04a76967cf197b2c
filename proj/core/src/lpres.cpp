#include "endopres/lpres.hpp"

#include <algorithm>
#include <set>

#include "endopres/errors.hpp"

namespace endo {

namespace {

Word shift_word(const Word& w, std::uint32_t offset) {
  std::vector<Letter> ls(w.begin(), w.end());
  for (auto& l : ls) l.gen += offset;
  return Word::reduce(ls);
}

/// Images that send generator g of an n-letter alphabet to g + offset.
std::vector<Word> shift_images(std::size_t n, std::uint32_t offset) {
  std::vector<Word> images;
  images.reserve(n);
  for (std::size_t g = 0; g < n; ++g)
    images.push_back(Word::generator(static_cast<std::uint32_t>(g) + offset));
  return images;
}

/// phi on an alphabet of `total` letters acting as `phi` on [offset, offset+|phi|)
/// and as the identity elsewhere.
Endomorphism embed_endo(const Endomorphism& phi, std::size_t total, std::uint32_t offset,
                        std::string name) {
  Endomorphism out = identity_endomorphism(total, std::move(name));
  for (std::size_t g = 0; g < phi.size(); ++g)
    out.images[g + offset] = shift_word(phi.images[g], offset);
  return out;
}

std::string fresh_name(const std::set<std::string>& taken, const std::string& base) {
  if (!taken.count(base)) return base;
  for (int k = 2;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (!taken.count(cand)) return cand;
  }
}

void require_ascending(const LPresentation& L, const char* what) {
  if (!L.ascending())
    throw UnsupportedError(std::string(what) + " requires an ascending L-presentation");
}

}  // namespace

void LPresentation::validate() const {
  const auto n = alphabet.size();
  for (const auto& w : fixed) check_alphabet(w, n);
  for (const auto& w : iterated) check_alphabet(w, n);
  for (const auto& e : endos) {
    if (e.size() != n)
      throw InputError("endomorphism '" + e.name + "' does not cover the alphabet");
    for (const auto& img : e.images) check_alphabet(img, n);
  }
}

LPresentation as_lpresentation(const FinitePresentation& p) {
  return {p.alphabet, p.relators, {}, {}};
}

// ---------------------------------------------------------------- enumeration

RelatorEnumerator::RelatorEnumerator(const LPresentation& L, DedupMode mode)
    : L_(&L), mode_(mode) {
  L.validate();
  for (const auto& q : L.fixed) emit(q);
  for (const auto& r : L.iterated) {
    emit(r);
    if (queue(r)) frontier_.push_back(r);
  }
  counts_.push_back(emitted_.size());
}

bool RelatorEnumerator::queue(const Word& w) {
  if (w.empty()) return false;
  return expanded_.insert(mode_ == DedupMode::exact ? w : cyclic_canonical(w)).second;
}

bool RelatorEnumerator::emit(const Word& w) {
  if (w.empty()) return false;
  Word key = mode_ == DedupMode::exact ? w : cyclic_canonical(w);
  if (!seen_.insert(std::move(key)).second) return false;
  emitted_.push_back(w);
  return true;
}

void RelatorEnumerator::advance() {
  std::vector<Word> next;
  for (const auto& w : frontier_) {
    for (const auto& phi : L_->endos) {
      Word img = apply_endomorphism(phi, w);
      emit(img);
      // a word already queued has had (or will have) its images explored at
      // an earlier or equal depth
      if (queue(img)) next.push_back(std::move(img));
    }
  }
  frontier_ = std::move(next);
  ++depth_;
  counts_.push_back(emitted_.size());
}

std::vector<Word> enumerate_relators(const LPresentation& L, std::size_t depth, DedupMode mode) {
  RelatorEnumerator e(L, mode);
  while (e.depth() < depth && !e.exhausted()) e.advance();
  return e.emitted();
}

FinitePresentation truncate(const LPresentation& L, std::size_t depth, DedupMode mode) {
  return {L.alphabet, enumerate_relators(L, depth, mode)};
}

// ---------------------------------------------------------------- Tietze moves

namespace {

LPresentation substitute(const LPresentation& L, const SubstituteMove& m) {
  const auto s = L.alphabet.index(m.gen);
  const auto t = L.alphabet.index(m.other);
  if (s == t) throw InputError("substitution needs two distinct generators");
  if (L.alphabet.find(m.new_name) && m.new_name != m.gen)
    throw InputError("generator name '" + m.new_name + "' already in use");
  const int sign = m.sign < 0 ? -1 : 1;

  auto names = L.alphabet.names();
  names[s] = m.new_name;
  // old s = s' t^-sign
  std::vector<Word> rho = shift_images(L.alphabet.size(), 0);
  rho[s] = Word{gen_letter(s), gen_letter(t, -sign)};
  const Word t_pow = Word::generator(t, sign);

  LPresentation out;
  out.alphabet = Alphabet(std::move(names));
  for (const auto& r : L.iterated) {
    Word w = apply_substitution(rho, r);
    if (!w.empty()) out.iterated.push_back(std::move(w));
  }
  for (const auto& phi : L.endos) {
    Endomorphism e{phi.name, {}};
    for (std::size_t g = 0; g < phi.size(); ++g) {
      if (g == s)
        e.images.push_back(
            apply_substitution(rho, multiply(phi.images[s], apply_endomorphism(phi, t_pow))));
      else
        e.images.push_back(apply_substitution(rho, phi.images[g]));
    }
    out.endos.push_back(std::move(e));
  }
  return out;
}

LPresentation add_generator(const LPresentation& L, const AddGeneratorMove& m) {
  auto names = L.alphabet.names();
  names.push_back(m.name);
  LPresentation out;
  out.alphabet = Alphabet(std::move(names));  // rejects duplicates
  const auto s = static_cast<std::uint32_t>(L.alphabet.size());
  out.iterated = L.iterated;
  out.iterated.push_back(Word::generator(s));
  for (const auto& phi : L.endos) {
    Endomorphism e = phi;
    e.images.emplace_back();
    out.endos.push_back(std::move(e));
  }
  return out;
}

LPresentation remove_generator(const LPresentation& L, const RemoveGeneratorMove& m) {
  const auto s = L.alphabet.index(m.name);
  const Word sw = Word::generator(s);
  const bool listed = std::any_of(L.iterated.begin(), L.iterated.end(),
                                  [&](const Word& r) { return r == sw || r == invert(sw); });
  if (!listed)
    throw InputError("generator '" + m.name + "' is not listed as a relator and cannot be removed");

  std::vector<std::string> names;
  std::vector<Word> rho;
  std::uint32_t next = 0;
  for (std::size_t g = 0; g < L.alphabet.size(); ++g) {
    if (g == s) {
      rho.emplace_back();
    } else {
      names.push_back(L.alphabet.name(g));
      rho.push_back(Word::generator(next++));
    }
  }
  LPresentation out;
  out.alphabet = Alphabet(std::move(names));
  auto keep = [&](Word w) {
    if (!w.empty() && std::find(out.iterated.begin(), out.iterated.end(), w) == out.iterated.end())
      out.iterated.push_back(std::move(w));
  };
  for (const auto& r : L.iterated) keep(apply_substitution(rho, r));
  for (const auto& phi : L.endos) {
    Endomorphism e{phi.name, {}};
    for (std::size_t g = 0; g < phi.size(); ++g)
      if (g != s) e.images.push_back(apply_substitution(rho, phi.images[g]));
    keep(apply_substitution(rho, phi.images[s]));
    out.endos.push_back(std::move(e));
  }
  return out;
}

}  // namespace

LPresentation change_generators(const LPresentation& L, const std::vector<TietzeMove>& moves) {
  require_ascending(L, "change_generators");
  L.validate();
  LPresentation cur = L;
  for (const auto& mv : moves) {
    cur = std::visit(
        [&](const auto& m) -> LPresentation {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, SubstituteMove>)
            return substitute(cur, m);
          else if constexpr (std::is_same_v<M, AddGeneratorMove>)
            return add_generator(cur, m);
          else
            return remove_generator(cur, m);
        },
        mv);
  }
  return cur;
}

// ---------------------------------------------------------------- combinators

std::vector<std::string> disjoint_names(const Alphabet& left, const Alphabet& right) {
  std::set<std::string> taken(left.names().begin(), left.names().end());
  taken.insert(right.names().begin(), right.names().end());
  std::set<std::string> left_names(left.names().begin(), left.names().end());
  std::vector<std::string> out;
  for (const auto& n : right.names()) {
    if (!left_names.count(n)) {
      out.push_back(n);
      continue;
    }
    std::string fresh = fresh_name(taken, n);
    taken.insert(fresh);
    out.push_back(std::move(fresh));
  }
  return out;
}

namespace {

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Endomorphism names of `right` made distinct from those of `left`.
std::vector<std::string> disjoint_endo_names(const std::vector<Endomorphism>& left,
                                             const std::vector<Endomorphism>& right) {
  std::set<std::string> taken;
  for (const auto& e : left) taken.insert(e.name);
  std::vector<std::string> out;
  for (const auto& e : right) {
    std::string n = fresh_name(taken, e.name);
    taken.insert(n);
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace

LPresentation free_product(const LPresentation& L1, const LPresentation& L2) {
  L1.validate();
  L2.validate();
  const auto n1 = static_cast<std::uint32_t>(L1.alphabet.size());
  const std::size_t total = L1.alphabet.size() + L2.alphabet.size();

  LPresentation out;
  out.alphabet = Alphabet(concat(L1.alphabet.names(), disjoint_names(L1.alphabet, L2.alphabet)));
  out.fixed = L1.fixed;
  for (const auto& p : L2.fixed) out.fixed.push_back(shift_word(p, n1));
  for (const auto& phi : L1.endos) out.endos.push_back(embed_endo(phi, total, 0, phi.name));
  auto psi_names = disjoint_endo_names(L1.endos, L2.endos);
  for (std::size_t k = 0; k < L2.endos.size(); ++k)
    out.endos.push_back(embed_endo(L2.endos[k], total, n1, psi_names[k]));
  out.iterated = L1.iterated;
  for (const auto& u : L2.iterated) out.iterated.push_back(shift_word(u, n1));
  return out;
}

LPresentation hnn_extension(const LPresentation& L, const std::vector<HnnGenerator>& gens,
                            const std::string& stable) {
  L.validate();
  const auto n = L.alphabet.size();
  for (const auto& g : gens) {
    check_alphabet(g.word, n);
    check_alphabet(g.image, n);
  }
  std::set<std::string> taken(L.alphabet.names().begin(), L.alphabet.names().end());
  auto names = L.alphabet.names();
  names.push_back(fresh_name(taken, stable));
  const Word p = Word::generator(static_cast<std::uint32_t>(n));

  LPresentation out;
  out.alphabet = Alphabet(std::move(names));
  out.fixed = L.fixed;
  for (const auto& g : gens) {
    Word rel = multiply(invert(g.image), conjugate(g.word, p));
    if (!rel.empty()) out.fixed.push_back(std::move(rel));
  }
  for (const auto& phi : L.endos) out.endos.push_back(embed_endo(phi, n + 1, 0, phi.name));
  out.iterated = L.iterated;
  return out;
}

LPresentation group_extension(const LPresentation& G, const LPresentation& H,
                              const ExtensionData& lifts, bool split) {
  G.validate();
  H.validate();
  if (!split && !H.iterated.empty())
    throw UnsupportedError(
        "non-split extensions need the quotient to be finitely presented (no iterated relators)");
  if (!lifts.relator_lifts.empty() && lifts.relator_lifts.size() != H.fixed.size())
    throw InputError("one relator lift is needed per fixed relator of the quotient");
  const auto ns = static_cast<std::uint32_t>(G.alphabet.size());
  const auto nt = static_cast<std::uint32_t>(H.alphabet.size());
  for (const auto& g : lifts.relator_lifts) {
    check_alphabet(g, ns);
    if (split && !g.empty()) throw InputError("split extensions have trivial relator lifts");
  }

  LPresentation out;
  out.alphabet = Alphabet(concat(G.alphabet.names(), disjoint_names(G.alphabet, H.alphabet)));
  const std::size_t total = ns + nt;
  out.fixed = G.fixed;
  for (std::size_t k = 0; k < H.fixed.size(); ++k) {
    Word p = shift_word(H.fixed[k], ns);
    Word g = lifts.relator_lifts.empty() ? Word{} : lifts.relator_lifts[k];
    Word rel = multiply(p, invert(g));
    if (!rel.empty()) out.fixed.push_back(std::move(rel));
  }
  for (std::uint32_t s = 0; s < ns; ++s) {
    for (std::uint32_t t = 0; t < nt; ++t) {
      auto it = lifts.conjugates.find({s, t});
      if (it == lifts.conjugates.end())
        throw InputError("missing conjugation lift for (" + G.alphabet.name(s) + ", " +
                         H.alphabet.name(t) + ")");
      check_alphabet(it->second, ns);
      Word rel = multiply(conjugate(Word::generator(s), Word::generator(ns + t)), invert(it->second));
      if (!rel.empty()) out.fixed.push_back(std::move(rel));
    }
  }
  for (const auto& phi : G.endos) out.endos.push_back(embed_endo(phi, total, 0, phi.name));
  auto psi_names = disjoint_endo_names(G.endos, H.endos);
  for (std::size_t k = 0; k < H.endos.size(); ++k)
    out.endos.push_back(embed_endo(H.endos[k], total, ns, psi_names[k]));
  out.iterated = G.iterated;
  for (const auto& u : H.iterated) out.iterated.push_back(shift_word(u, ns));
  return out;
}

LPresentation wreath_product(const LPresentation& G, const LPresentation& H) {
  G.validate();
  H.validate();
  const auto ns = static_cast<std::uint32_t>(G.alphabet.size());
  const auto nt = static_cast<std::uint32_t>(H.alphabet.size());
  auto names = concat(G.alphabet.names(), disjoint_names(G.alphabet, H.alphabet));
  std::set<std::string> taken(names.begin(), names.end());
  for (std::uint32_t s = 0; s < ns; ++s) {
    std::string bar = fresh_name(taken, G.alphabet.name(s) + "b");
    taken.insert(bar);
    names.push_back(std::move(bar));
  }
  const std::size_t total = names.size();
  const std::uint32_t bar0 = ns + nt;

  LPresentation out;
  out.alphabet = Alphabet(std::move(names));
  out.fixed = G.fixed;
  for (const auto& p : H.fixed) out.fixed.push_back(shift_word(p, ns));
  for (std::uint32_t s = 0; s < ns; ++s)
    out.fixed.push_back(Word{gen_letter(s, -1), gen_letter(bar0 + s)});

  for (const auto& phi : G.endos) out.endos.push_back(embed_endo(phi, total, 0, phi.name));
  auto psi_names = disjoint_endo_names(G.endos, H.endos);
  for (std::size_t k = 0; k < H.endos.size(); ++k)
    out.endos.push_back(embed_endo(H.endos[k], total, ns, psi_names[k]));
  std::set<std::string> endo_taken;
  for (const auto& e : out.endos) endo_taken.insert(e.name);
  for (std::uint32_t t = 0; t < nt; ++t) {
    std::string name = fresh_name(endo_taken, "omega_" + out.alphabet.name(ns + t));
    endo_taken.insert(name);
    Endomorphism omega = identity_endomorphism(total, std::move(name));
    for (std::uint32_t s = 0; s < ns; ++s)
      omega.images[bar0 + s] = conjugate(Word::generator(bar0 + s), Word::generator(ns + t));
    out.endos.push_back(std::move(omega));
  }

  out.iterated = G.iterated;
  for (const auto& u : H.iterated) out.iterated.push_back(shift_word(u, ns));
  for (std::uint32_t s1 = 0; s1 < ns; ++s1)
    for (std::uint32_t s2 = 0; s2 < ns; ++s2)
      out.iterated.push_back(commutator(Word::generator(s1), Word::generator(bar0 + s2)));
  return out;
}

LPresentation quotient(const LPresentation& L, const std::vector<Word>& extra) {
  L.validate();
  for (const auto& w : extra) check_alphabet(w, L.alphabet.size());
  LPresentation out = L;
  for (const auto& w : extra)
    if (!w.empty()) out.fixed.push_back(w);
  return out;
}

// ---------------------------------------------------------------- Reidemeister-Schreier

namespace {

class SchreierRewriter {
 public:
  SchreierRewriter(const CosetAction& action, const std::vector<Word>& transversal,
                   std::size_t alphabet_size)
      : action_(action), transversal_(transversal) {
    const std::size_t n = transversal.size();
    if (n == 0) throw InputError("transversal is empty");
    if (action.size() != alphabet_size)
      throw InputError("coset action needs one permutation per generator");
    inverse_.resize(action.size());
    for (std::size_t g = 0; g < action.size(); ++g) {
      if (action[g].size() != n) throw InputError("coset action has the wrong degree");
      inverse_[g].assign(n, static_cast<std::uint32_t>(n));
      for (std::size_t i = 0; i < n; ++i) {
        auto j = action[g][i];
        if (j >= n || inverse_[g][j] != n) throw InputError("coset action is not a permutation");
        inverse_[g][j] = static_cast<std::uint32_t>(i);
      }
    }
    if (!transversal[0].empty()) throw InputError("transversal must start with the identity");
    for (std::size_t i = 0; i < n; ++i) {
      check_alphabet(transversal[i], alphabet_size);
      std::uint32_t c = 0;
      for (std::size_t k = 0; k < transversal[i].size(); ++k) {
        c = step(c, transversal[i][k]);
        Word prefix = Word::reduce(transversal[i].letters().subspan(0, k + 1));
        if (transversal[c] != prefix)
          throw InputError("transversal is not prefix-closed (Schreier) at coset " +
                           std::to_string(i));
      }
      if (c != i) throw InputError("transversal word " + std::to_string(i) + " ends at coset " +
                                   std::to_string(c));
    }
  }

  std::uint32_t step(std::uint32_t c, Letter l) const {
    return l.sign > 0 ? action_[l.gen][c] : inverse_[l.gen][c];
  }
  std::uint32_t trace(std::uint32_t c, const Word& w) const {
    for (auto l : w) c = step(c, l);
    return c;
  }
  std::size_t cosets() const { return transversal_.size(); }
  const Word& rep(std::size_t i) const { return transversal_[i]; }

 private:
  const CosetAction& action_;
  const std::vector<Word>& transversal_;
  std::vector<std::vector<std::uint32_t>> inverse_;
};

}  // namespace

SubgroupPresentation subgroup_presentation(const LPresentation& L, const CosetAction& action,
                                           const std::vector<Word>& transversal) {
  L.validate();
  const auto ns = L.alphabet.size();
  SchreierRewriter rw(action, transversal, ns);
  const auto n = static_cast<std::uint32_t>(rw.cosets());

  SubgroupPresentation out;
  std::vector<std::string> names;
  std::set<std::string> taken;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t s = 0; s < ns; ++s) {
      const auto j = action[s][i];
      Word gw = multiply(multiply(rw.rep(i), Word::generator(s)), invert(rw.rep(j)));
      if (gw.empty()) continue;  // spanning-tree edge
      std::string name = fresh_name(taken, L.alphabet.name(s) + "_" + std::to_string(i));
      taken.insert(name);
      out.schreier_index[{i, s}] = static_cast<std::uint32_t>(names.size());
      names.push_back(std::move(name));
      out.generator_words.push_back(std::move(gw));
    }
  }

  // rewrite w read from coset `start`; must return to `finish`
  auto rewrite = [&](const Word& w, std::uint32_t start, std::uint32_t finish) {
    WordBuilder b;
    std::uint32_t c = start;
    for (auto l : w) {
      if (l.sign > 0) {
        auto it = out.schreier_index.find({c, l.gen});
        if (it != out.schreier_index.end()) b.push(gen_letter(it->second));
        c = action[l.gen][c];
      } else {
        std::uint32_t prev = rw.step(c, l);
        auto it = out.schreier_index.find({prev, l.gen});
        if (it != out.schreier_index.end()) b.push(gen_letter(it->second, -1));
        c = prev;
      }
    }
    if (c != finish)
      throw InputError("word does not act as expected on cosets; inconsistent coset action");
    return std::move(b).take();
  };

  out.lpres.alphabet = Alphabet(std::move(names));
  for (const auto& q : L.fixed)
    for (std::uint32_t i = 0; i < n; ++i) {
      Word r = rewrite(q, i, i);
      if (!r.empty()) out.lpres.fixed.push_back(std::move(r));
    }
  for (const auto& r : L.iterated)
    for (std::uint32_t i = 0; i < n; ++i) {
      Word w = rewrite(r, i, i);
      if (!w.empty()) out.lpres.iterated.push_back(std::move(w));
    }
  for (const auto& phi : L.endos) {
    Endomorphism induced{phi.name, {}};
    for (const auto& gw : out.generator_words) {
      Word img = apply_endomorphism(phi, gw);
      if (rw.trace(0, img) != 0)
        throw InputError("endomorphism '" + phi.name + "' does not preserve the subgroup");
      induced.images.push_back(rewrite(img, 0, 0));
    }
    out.lpres.endos.push_back(std::move(induced));
  }
  return out;
}

FinitePresentation hnn_embed(const LPresentation& L) {
  require_ascending(L, "hnn_embed");
  L.validate();
  const auto ns = static_cast<std::uint32_t>(L.alphabet.size());
  std::set<std::string> taken(L.alphabet.names().begin(), L.alphabet.names().end());
  auto names = L.alphabet.names();
  for (const auto& phi : L.endos) {
    std::string n = fresh_name(taken, phi.name);
    taken.insert(n);
    names.push_back(std::move(n));
  }
  FinitePresentation out;
  out.alphabet = Alphabet(std::move(names));
  for (std::size_t k = 0; k < L.endos.size(); ++k) {
    const Word stable = Word::generator(ns + static_cast<std::uint32_t>(k));
    for (std::uint32_t s = 0; s < ns; ++s)
      out.relators.push_back(
          multiply(conjugate(Word::generator(s), stable), invert(L.endos[k].images[s])));
  }
  for (const auto& r : L.iterated) out.relators.push_back(r);
  return out;
}

LPresentation relatively_free(const Alphabet& X, const Alphabet& Y, const Word& identity) {
  for (const auto& n : Y.names())
    if (X.find(n)) throw InputError("alphabets X and Y overlap in '" + n + "'");
  check_alphabet(identity, Y.size());
  const auto nx = static_cast<std::uint32_t>(X.size());
  const std::size_t total = X.size() + Y.size();

  LPresentation out;
  out.alphabet = Alphabet(concat(X.names(), Y.names()));
  for (std::uint32_t y = 0; y < Y.size(); ++y) out.fixed.push_back(Word::generator(nx + y));
  for (std::uint32_t x = 0; x < nx; ++x) {
    for (int sign : {1, -1}) {
      for (std::uint32_t y = 0; y < Y.size(); ++y) {
        std::string name = "phi_" + X.name(x) + (sign < 0 ? "inv" : "") + "_" + Y.name(y);
        Endomorphism phi = identity_endomorphism(total, std::move(name));
        phi.images[nx + y] = Word{gen_letter(x, sign), gen_letter(nx + y)};
        out.endos.push_back(std::move(phi));
      }
    }
  }
  out.iterated.push_back(shift_word(identity, nx));
  return out;
}

}  // namespace endo
