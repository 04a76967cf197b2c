#include "endopres/treeauto.hpp"

#include <algorithm>

#include "endopres/errors.hpp"

namespace endo {

// ---------------------------------------------------------------- permutations

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<std::uint32_t>(i);
  return q;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

namespace {

bool is_permutation_of(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto x : p) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

std::size_t ipow(std::size_t base, unsigned e, std::size_t cap) {
  std::size_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

void SelfSimilarSpec::validate() const {
  if (degree < 2) throw InputError("tree degree must be at least 2");
  if (recursion.size() != alphabet.size())
    throw InputError("every generator needs a wreath recursion");
  for (std::size_t g = 0; g < recursion.size(); ++g) {
    const auto& r = recursion[g];
    if (r.sections.size() != degree)
      throw InputError("generator '" + alphabet.name(g) + "' needs exactly " +
                       std::to_string(degree) + " sections");
    if (!is_permutation_of(r.top, degree))
      throw InputError("generator '" + alphabet.name(g) + "' has an invalid top permutation");
    for (const auto& s : r.sections) check_alphabet(s, alphabet.size());
  }
  for (const auto& k : branching) check_alphabet(k, alphabet.size());
  for (const auto& rule : reductions) {
    if (rule.lhs.empty()) throw InputError("reduction rules need a nonempty left side");
    check_alphabet(rule.lhs, alphabet.size());
    check_alphabet(rule.rhs, alphabet.size());
  }
}

// ---------------------------------------------------------------- vertex action

namespace {

class VertexWalker {
 public:
  explicit VertexWalker(const SelfSimilarSpec& spec) : spec_(spec) {
    spec.validate();
    for (const auto& r : spec.recursion) {
      top_inv_.push_back(inverse(r.top));
      std::vector<Word> inv;
      for (const auto& s : r.sections) inv.push_back(invert(s));
      inv_sections_.push_back(std::move(inv));
    }
  }

  void apply(Letter l, std::vector<std::uint32_t>& path, std::size_t pos) const {
    if (pos == path.size()) return;
    const auto& r = spec_.recursion[l.gen];
    const auto i = path[pos];
    if (l.sign > 0) {
      path[pos] = r.top[i];
      for (auto m : r.sections[i]) apply(m, path, pos + 1);
    } else {
      const auto j = top_inv_[l.gen][i];
      path[pos] = j;
      for (auto m : inv_sections_[l.gen][j]) apply(m, path, pos + 1);
    }
  }

 private:
  const SelfSimilarSpec& spec_;
  std::vector<Permutation> top_inv_;
  std::vector<std::vector<Word>> inv_sections_;
};

}  // namespace

TreeVertex act(const SelfSimilarSpec& spec, const Word& w, const TreeVertex& v) {
  check_alphabet(w, spec.alphabet.size());
  for (auto x : v.path)
    if (x >= spec.degree) throw InputError("vertex digit out of range");
  VertexWalker walker(spec);
  TreeVertex out = v;
  for (auto l : w) walker.apply(l, out.path, 0);
  return out;
}

// ---------------------------------------------------------------- wreath recursion

WreathForm wreath_decompose(const SelfSimilarSpec& spec, const Word& w) {
  check_alphabet(w, spec.alphabet.size());
  const unsigned d = spec.degree;
  std::vector<WordBuilder> sections(d);
  Permutation top = identity_permutation(d);
  for (auto l : w) {
    const auto& r = spec.recursion[l.gen];
    if (l.sign > 0) {
      for (unsigned i = 0; i < d; ++i) {
        sections[i].append(r.sections[top[i]]);
        top[i] = r.top[top[i]];
      }
    } else {
      Permutation inv = inverse(r.top);
      for (unsigned i = 0; i < d; ++i) {
        // (g^-1)_k = (g_{top^-1(k)})^-1
        sections[i].append_inverse(r.sections[inv[top[i]]]);
        top[i] = inv[top[i]];
      }
    }
  }
  WreathForm out;
  out.top = std::move(top);
  for (auto& b : sections) out.sections.push_back(std::move(b).take());
  return out;
}

Permutation top_permutation(const SelfSimilarSpec& spec, const Word& w) {
  check_alphabet(w, spec.alphabet.size());
  Permutation top = identity_permutation(spec.degree);
  std::vector<Permutation> inv;
  for (const auto& r : spec.recursion) inv.push_back(inverse(r.top));
  for (auto l : w) {
    const auto& p = l.sign > 0 ? spec.recursion[l.gen].top : inv[l.gen];
    for (auto& x : top) x = p[x];
  }
  return top;
}

// ---------------------------------------------------------------- level permutations

LevelAction::LevelAction(const SelfSimilarSpec& spec, unsigned level, std::size_t max_points)
    : level_(level) {
  spec.validate();
  points_ = ipow(spec.degree, level, max_points);
  if (points_ > max_points)
    throw ResourceError("level " + std::to_string(level) + " has more than " +
                        std::to_string(max_points) + " vertices");
  const std::size_t ngen = spec.alphabet.size();
  gens_.assign(ngen, Permutation{0});
  inverses_.assign(ngen, Permutation{0});
  std::size_t below = 1;  // vertices on the previous level
  for (unsigned k = 1; k <= level; ++k) {
    std::vector<Permutation> next(ngen);
    for (std::size_t g = 0; g < ngen; ++g) {
      const auto& r = spec.recursion[g];
      Permutation p(below * spec.degree);
      for (unsigned i = 0; i < spec.degree; ++i) {
        Permutation sec = identity_permutation(below);
        for (auto l : r.sections[i]) {
          const auto& q = l.sign > 0 ? gens_[l.gen] : inverses_[l.gen];
          for (auto& x : sec) x = q[x];
        }
        for (std::size_t u = 0; u < below; ++u)
          p[i * below + u] = static_cast<std::uint32_t>(r.top[i] * below + sec[u]);
      }
      next[g] = std::move(p);
    }
    gens_ = std::move(next);
    inverses_.clear();
    for (const auto& p : gens_) inverses_.push_back(inverse(p));
    below *= spec.degree;
  }
}

LevelPermutation LevelAction::of(const Word& w) const {
  check_alphabet(w, gens_.size());
  LevelPermutation out{level_, identity_permutation(points_)};
  for (auto l : w) {
    const auto& q = generator(l.gen, l.sign);
    for (auto& x : out.images) x = q[x];
  }
  return out;
}

bool LevelAction::fixes_level(const Word& w) const { return of(w).is_identity(); }

LevelPermutation level_permutation(const SelfSimilarSpec& spec, const Word& w, unsigned n) {
  return LevelAction(spec, n).of(w);
}

// ---------------------------------------------------------------- section oracle

std::optional<unsigned> SectionOracle::first_nontrivial_level(const Word& w, unsigned max_level) {
  if (w.empty() || max_level == 0) return std::nullopt;
  if (auto it = memo_.find(w); it != memo_.end()) {
    const auto& e = it->second;
    if (e.value) return *e.value <= max_level ? e.value : std::nullopt;
    if (e.bound >= max_level) return std::nullopt;
  }
  std::optional<unsigned> result;
  WreathForm form = wreath_decompose(*spec_, w);
  if (!is_identity(form.top)) {
    result = 1;
  } else {
    for (const auto& s : form.sections) {
      auto r = first_nontrivial_level(s, max_level - 1);
      if (r && (!result || *r + 1 < *result)) result = *r + 1;
    }
  }
  auto& e = memo_[w];
  if (result)
    e.value = result;
  else
    e.bound = std::max(e.bound, max_level);
  return result;
}

std::optional<unsigned> first_nontrivial_level(const SelfSimilarSpec& spec, const Word& w,
                                               unsigned max_level) {
  spec.validate();
  check_alphabet(w, spec.alphabet.size());
  SectionOracle oracle(spec);
  return oracle.first_nontrivial_level(w, max_level);
}

// ---------------------------------------------------------------- Schreier-Sims

namespace {

class StabilizerChain {
 public:
  StabilizerChain(std::span<const Permutation> gens, std::size_t n) : n_(n) {
    for (const auto& g : gens) {
      if (g.size() != n) throw InputError("generator has the wrong degree");
      if (!is_identity(g)) add_generator(g);
    }
    for (std::size_t k = 0; k < gens_.size(); ++k) ensure_moved_base_point(gens_[k]);
  }

  void run() {
    long i = static_cast<long>(base_.size()) - 1;
    while (i >= 0) {
      const auto lvl = static_cast<std::size_t>(i);
      compute_orbit(lvl);
      bool restarted = false;
      const auto points = orbits_[lvl].points;  // copy: the orbit may be recomputed below
      const auto level_gens = level_generators(lvl);
      for (auto p : points) {
        Permutation up = representative(lvl, p);
        for (auto gi : level_gens) {
          const Permutation& s = gens_[gi];
          Permutation us = compose(up, s);
          Permutation ups = representative(lvl, s[p]);
          Permutation schreier = compose(us, inverse(ups));
          if (is_identity(schreier)) continue;
          auto [h, j] = strip(std::move(schreier), lvl + 1);
          if (j < base_.size() || !is_identity(h)) {
            add_generator(h);
            if (j == base_.size()) ensure_moved_base_point(gens_.back());
            orbits_.resize(base_.size());
            for (std::size_t l = lvl + 1; l <= j && l < base_.size(); ++l) compute_orbit(l);
            i = static_cast<long>(j);
            restarted = true;
            break;
          }
        }
        if (restarted) break;
      }
      if (!restarted) --i;
    }
  }

  BigInt order() const {
    BigInt r = 1;
    for (const auto& o : orbits_) r *= o.points.size();
    return r;
  }

 private:
  struct Orbit {
    std::vector<std::int32_t> via;  // -2 root, -1 absent, else generator index reaching the point
    std::vector<std::uint32_t> points;
  };

  void add_generator(Permutation g) {
    inverses_.push_back(inverse(g));
    gens_.push_back(std::move(g));
  }

  void ensure_moved_base_point(const Permutation& g) {
    for (auto b : base_)
      if (g[b] != b) return;
    for (std::uint32_t x = 0; x < n_; ++x)
      if (g[x] != x) {
        base_.push_back(x);
        orbits_.resize(base_.size());
        return;
      }
  }

  std::vector<std::size_t> level_generators(std::size_t lvl) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      bool fixes = true;
      for (std::size_t j = 0; j < lvl && fixes; ++j) fixes = gens_[k][base_[j]] == base_[j];
      if (fixes) out.push_back(k);
    }
    return out;
  }

  void compute_orbit(std::size_t lvl) {
    orbits_.resize(base_.size());
    Orbit& o = orbits_[lvl];
    o.via.assign(n_, -1);
    o.points.clear();
    const auto b = base_[lvl];
    o.via[b] = -2;
    o.points.push_back(b);
    const auto lg = level_generators(lvl);
    for (std::size_t k = 0; k < o.points.size(); ++k) {
      const auto p = o.points[k];
      for (auto gi : lg) {
        const auto q = gens_[gi][p];
        if (o.via[q] == -1) {
          o.via[q] = static_cast<std::int32_t>(gi);
          o.points.push_back(q);
        }
      }
    }
  }

  /// u with base[lvl]^u = p.
  Permutation representative(std::size_t lvl, std::uint32_t p) const {
    const Orbit& o = orbits_[lvl];
    std::vector<std::size_t> path;
    while (o.via[p] != -2) {
      const auto gi = static_cast<std::size_t>(o.via[p]);
      path.push_back(gi);
      p = inverses_[gi][p];
    }
    Permutation u = identity_permutation(n_);
    for (auto it = path.rbegin(); it != path.rend(); ++it) u = compose(u, gens_[*it]);
    return u;
  }

  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const {
    for (std::size_t j = from; j < base_.size(); ++j) {
      const Orbit& o = orbits_[j];
      auto p = g[base_[j]];
      if (o.via.empty() || o.via[p] == -1) return {std::move(g), j};
      while (o.via[p] != -2) {
        const auto gi = static_cast<std::size_t>(o.via[p]);
        g = compose(g, inverses_[gi]);
        p = inverses_[gi][p];
      }
    }
    return {std::move(g), base_.size()};
  }

  std::size_t n_;
  std::vector<std::uint32_t> base_;
  std::vector<Permutation> gens_;
  std::vector<Permutation> inverses_;
  std::vector<Orbit> orbits_;
};

}  // namespace

BigInt permutation_group_order(std::span<const Permutation> gens, std::size_t n) {
  StabilizerChain chain(gens, n);
  chain.run();
  return chain.order();
}

BigInt level_quotient_order(const SelfSimilarSpec& spec, unsigned n, std::size_t max_points) {
  LevelAction action(spec, n, max_points);
  std::vector<Permutation> gens;
  for (std::uint32_t g = 0; g < spec.alphabet.size(); ++g) gens.push_back(action.generator(g));
  return permutation_group_order(gens, action.points());
}

// ---------------------------------------------------------------- normal form

Word normalize(const SelfSimilarSpec& spec, const Word& w) {
  Word cur = w;
  if (spec.reductions.empty()) return cur;
  const std::size_t cap = 16 * (w.size() + 8);
  for (std::size_t pass = 0;; ++pass) {
    if (pass > cap) throw ResourceError("reduction rules do not terminate on a word");
    bool changed = false;
    auto ls = cur.letters();
    for (std::size_t pos = 0; pos < ls.size() && !changed; ++pos) {
      for (const auto& rule : spec.reductions) {
        const auto len = rule.lhs.size();
        if (pos + len > ls.size()) continue;
        if (!std::equal(rule.lhs.begin(), rule.lhs.end(), ls.begin() + static_cast<std::ptrdiff_t>(pos)))
          continue;
        WordBuilder b;
        for (std::size_t k = 0; k < pos; ++k) b.push(ls[k]);
        b.append(rule.rhs);
        for (std::size_t k = pos + len; k < ls.size(); ++k) b.push(ls[k]);
        cur = std::move(b).take();
        changed = true;
        break;
      }
    }
    if (!changed) return cur;
  }
}

}  // namespace endo
