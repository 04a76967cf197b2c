#pragma once

// Test-side oracles. Nothing here calls the library routine it is compared
// against; only plain data types (Word, Letter, specs) are shared.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "endopres/bigint.hpp"
#include "endopres/random.hpp"
#include "endopres/treeauto.hpp"
#include "endopres/words.hpp"

namespace oracle {

using endo::Letter;
using endo::Word;

using Letters = std::vector<Letter>;

inline Letters letters_of(const Word& w) { return {w.begin(), w.end()}; }

/// Repeated scan for adjacent inverse pairs until none is left.
inline Letters naive_reduce(Letters v) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i].gen == v[i + 1].gen && v[i].sign == -v[i + 1].sign) {
        v.erase(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return v;
}

/// Letters of arbitrary (unreduced) sequences.
inline Letters random_letters(endo::Rng& rng, std::size_t alphabet, std::size_t length) {
  Letters out;
  for (std::size_t i = 0; i < length; ++i)
    out.push_back(endo::gen_letter(static_cast<std::uint32_t>(rng.below(alphabet)),
                                   rng.below(2) ? 1 : -1));
  return out;
}

inline Letters inverse_letters(const Letters& v) {
  Letters out;
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Letters concat(Letters a, const Letters& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ------------------------------------------------------------ tree action

using Path = std::vector<std::uint32_t>;

Path act_letter(const endo::SelfSimilarSpec& s, Letter l, Path v, std::size_t from);

inline Path act_letters(const endo::SelfSimilarSpec& s, const Letters& w, Path v,
                        std::size_t from) {
  for (Letter l : w) v = act_letter(s, l, std::move(v), from);
  return v;
}

/// x^g for g = top.(sections): first digit i goes to top[i], the rest is
/// acted on by section i. For g^-1 the digit j goes to i with top[i] = j and
/// the rest by the inverse of section i.
inline Path act_letter(const endo::SelfSimilarSpec& s, Letter l, Path v, std::size_t from) {
  if (from >= v.size()) return v;
  const auto& rec = s.recursion[l.gen];
  std::uint32_t digit = v[from];
  if (l.sign > 0) {
    v[from] = rec.top[digit];
    return act_letters(s, letters_of(rec.sections[digit]), std::move(v), from + 1);
  }
  std::uint32_t i = 0;
  while (rec.top[i] != digit) ++i;
  v[from] = i;
  return act_letters(s, inverse_letters(letters_of(rec.sections[i])), std::move(v), from + 1);
}

inline std::size_t path_index(const Path& p, unsigned d) {
  std::size_t x = 0;
  for (auto digit : p) x = x * d + digit;
  return x;
}

inline Path index_path(std::size_t x, unsigned d, unsigned level) {
  Path p(level);
  for (unsigned i = level; i-- > 0;) {
    p[i] = static_cast<std::uint32_t>(x % d);
    x /= d;
  }
  return p;
}

inline std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Level permutation of a word by acting on every vertex separately.
inline std::vector<std::uint32_t> level_images(const endo::SelfSimilarSpec& s, const Word& w,
                                               unsigned level) {
  std::size_t n = ipow(s.degree, level);
  std::vector<std::uint32_t> out(n);
  Letters ls = letters_of(w);
  for (std::size_t x = 0; x < n; ++x)
    out[x] = static_cast<std::uint32_t>(
        path_index(act_letters(s, ls, index_path(x, s.degree, level), 0), s.degree));
  return out;
}

/// Size of the group generated by permutations, by closing the element set
/// under right multiplication by generators. Only for small groups.
inline std::size_t orbit_closure_order(const std::vector<std::vector<std::uint32_t>>& gens,
                                       std::size_t n, std::size_t cap = 200000) {
  std::vector<std::uint32_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::set<std::vector<std::uint32_t>> seen{id};
  std::vector<std::vector<std::uint32_t>> queue{id};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& g : gens) {
      std::vector<std::uint32_t> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = g[queue[q][i]];
      if (seen.insert(next).second) {
        queue.push_back(std::move(next));
        if (seen.size() > cap) return 0;
      }
    }
  }
  return seen.size();
}

// ------------------------------------------------------------ small cancellation

inline Letters cyclic_core(Letters v) {
  v = naive_reduce(std::move(v));
  while (v.size() >= 2 && v.front().gen == v.back().gen && v.front().sign == -v.back().sign) {
    v.erase(v.begin());
    v.pop_back();
  }
  return v;
}

inline std::set<Letters> symmetrize(const std::vector<Letters>& ws) {
  std::set<Letters> out;
  for (const auto& w : ws) {
    Letters c = cyclic_core(w);
    if (c.empty()) continue;
    for (const Letters& base : {c, inverse_letters(c)}) {
      for (std::size_t r = 0; r < base.size(); ++r) {
        Letters rot(base.begin() + static_cast<long>(r), base.end());
        rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(r));
        out.insert(rot);
      }
    }
  }
  return out;
}

/// C'(num/den) by comparing every ordered pair of distinct symmetrized words.
inline bool small_cancellation_holds(const std::vector<Letters>& ws, long num, long den) {
  auto sym = symmetrize(ws);
  std::vector<Letters> all(sym.begin(), sym.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j) continue;
      std::size_t p = 0;
      while (p < all[i].size() && p < all[j].size() && all[i][p] == all[j][p]) ++p;
      std::size_t m = std::min(all[i].size(), all[j].size());
      if (static_cast<long>(p) * den >= num * static_cast<long>(m)) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ abelian invariants

/// Invariant factors of Z^cols / (row lattice) from determinantal divisors:
/// d_k is the gcd of all k x k minors and the k-th factor is d_k / d_(k-1).
/// Returns (torsion factors >= 2, free rank). Only for a handful of columns.
inline std::pair<std::vector<endo::BigInt>, std::size_t> determinantal_invariants(
    std::vector<std::vector<long>> rows, std::size_t cols) {
  using endo::BigInt;
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::erase_if(rows, [](const auto& r) { return std::all_of(r.begin(), r.end(), [](long x) { return x == 0; }); });
  // integer row echelon by Euclid steps; unimodular, so the row lattice is kept
  {
    std::size_t top = 0;
    for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
      for (;;) {
        std::size_t piv = rows.size();
        for (std::size_t i = top; i < rows.size(); ++i)
          if (rows[i][c] != 0 && (piv == rows.size() || std::labs(rows[i][c]) < std::labs(rows[piv][c])))
            piv = i;
        if (piv == rows.size()) break;
        std::swap(rows[top], rows[piv]);
        bool done = true;
        for (std::size_t i = top + 1; i < rows.size(); ++i) {
          long q = rows[i][c] / rows[top][c];
          for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[top][j];
          done = done && rows[i][c] == 0;
        }
        if (done) {
          ++top;
          break;
        }
      }
    }
    rows.resize(top);
  }
  auto det = [](std::vector<std::vector<BigInt>> m) {
    // fraction-free Bareiss elimination
    std::size_t n = m.size();
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return BigInt(0);
      if (p != k) {
        std::swap(m[p], m[k]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      prev = m[k][k];
    }
    return BigInt(sign * m[n - 1][n - 1]);
  };
  auto subsets = [](std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  };
  std::vector<BigInt> d{1};
  std::size_t rank = 0;
  for (std::size_t k = 1; k <= std::min(rows.size(), cols); ++k) {
    BigInt g = 0;
    for (const auto& rs : subsets(rows.size(), k))
      for (const auto& cs : subsets(cols, k)) {
        std::vector<std::vector<BigInt>> m(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = rows[rs[i]][cs[j]];
        BigInt v = det(std::move(m));
        if (v < 0) v = -v;
        g = boost::multiprecision::gcd(g, v);
      }
    if (g == 0) break;
    d.push_back(g);
    rank = k;
  }
  std::vector<BigInt> torsion;
  for (std::size_t k = 1; k <= rank; ++k) {
    BigInt f = d[k] / d[k - 1];
    if (f != 1) torsion.push_back(f);
  }
  return {torsion, cols - rank};
}

// ------------------------------------------------------------ files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace oracle
