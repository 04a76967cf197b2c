#include "endopres/coset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "endopres/errors.hpp"

namespace endo {

// ---------------------------------------------------------------- Todd-Coxeter

namespace {

constexpr std::int64_t undefined = -1;

std::vector<std::size_t> columns(const Word& w) {
  std::vector<std::size_t> out;
  for (auto l : w) out.push_back(2 * l.gen + (l.sign < 0 ? 1 : 0));
  return out;
}

class Enumerator {
 public:
  Enumerator(std::size_t ngens, std::size_t max_cosets) : ncols_(2 * ngens), max_(max_cosets) {}

  bool run(const std::vector<std::vector<std::size_t>>& relators,
           const std::vector<std::vector<std::size_t>>& subgroup) {
    if (!define_new()) return false;
    for (const auto& w : subgroup)
      if (!scan_and_fill(0, w)) return false;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      for (const auto& r : relators) {
        if (!scan_and_fill(c, r)) return false;
        if (!live(c)) break;
      }
      if (!live(c)) continue;
      for (std::size_t x = 0; x < ncols_; ++x)
        if (table_[c][x] == undefined && !define(c, x)) return false;
    }
    return true;
  }

  std::size_t defined() const noexcept { return table_.size(); }

  /// Live cosets renumbered in order of definition.
  std::vector<std::vector<std::uint32_t>> compact() const {
    std::vector<std::int64_t> number(table_.size(), undefined);
    std::uint32_t next = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (live(c)) number[c] = next++;
    std::vector<std::vector<std::uint32_t>> rows;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      std::vector<std::uint32_t> row(ncols_);
      for (std::size_t x = 0; x < ncols_; ++x)
        row[x] = static_cast<std::uint32_t>(number[rep(table_[c][x])]);
      rows.push_back(std::move(row));
    }
    return rows;
  }

 private:
  bool live(std::size_t c) const { return parent_[c] == static_cast<std::int64_t>(c); }

  std::size_t rep(std::int64_t c) const {
    auto r = static_cast<std::size_t>(c);
    while (parent_[r] != static_cast<std::int64_t>(r)) r = static_cast<std::size_t>(parent_[r]);
    return r;
  }

  std::size_t find(std::size_t c) {
    std::size_t r = rep(static_cast<std::int64_t>(c));
    while (parent_[c] != static_cast<std::int64_t>(r)) {
      auto up = static_cast<std::size_t>(parent_[c]);
      parent_[c] = static_cast<std::int64_t>(r);
      c = up;
    }
    return r;
  }

  bool define_new() {
    if (table_.size() >= max_) return false;
    table_.emplace_back(ncols_, undefined);
    parent_.push_back(static_cast<std::int64_t>(table_.size() - 1));
    return true;
  }

  bool define(std::size_t c, std::size_t x) {
    if (!define_new()) return false;
    const auto n = static_cast<std::int64_t>(table_.size() - 1);
    table_[c][x] = n;
    table_[static_cast<std::size_t>(n)][x ^ 1] = static_cast<std::int64_t>(c);
    return true;
  }

  bool scan_and_fill(std::size_t c, const std::vector<std::size_t>& w) {
    if (w.empty()) return true;
    std::size_t f = c, b = c;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    for (;;) {
      while (i < j && table_[f][w[i]] != undefined) f = static_cast<std::size_t>(table_[f][w[i++]]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j > i && table_[b][w[j - 1] ^ 1] != undefined)
        b = static_cast<std::size_t>(table_[b][w[--j] ^ 1]);
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        table_[f][w[i]] = static_cast<std::int64_t>(b);
        table_[b][w[i] ^ 1] = static_cast<std::int64_t>(f);
        return true;
      }
      if (!define(f, w[i])) return false;
    }
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    k = find(k);
    l = find(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = static_cast<std::int64_t>(k);
    queue.push_back(l);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const auto e = queue[q];
      for (std::size_t x = 0; x < ncols_; ++x) {
        if (table_[e][x] == undefined) continue;
        const auto f = static_cast<std::size_t>(table_[e][x]);
        if (table_[f][x ^ 1] == static_cast<std::int64_t>(e)) table_[f][x ^ 1] = undefined;
        const auto e1 = find(e);
        const auto f1 = find(f);
        if (table_[e1][x] != undefined) {
          merge(f1, static_cast<std::size_t>(table_[e1][x]), queue);
        } else if (table_[f1][x ^ 1] != undefined) {
          merge(e1, static_cast<std::size_t>(table_[f1][x ^ 1]), queue);
        } else {
          table_[e1][x] = static_cast<std::int64_t>(f1);
          table_[f1][x ^ 1] = static_cast<std::int64_t>(e1);
        }
      }
    }
  }

  std::size_t ncols_;
  std::size_t max_;
  std::vector<std::vector<std::int64_t>> table_;
  std::vector<std::int64_t> parent_;
};

}  // namespace

CosetAction CosetTable::action() const {
  CosetAction out;
  if (rows.empty()) return out;
  const std::size_t ngens = rows.front().size() / 2;
  out.assign(ngens, std::vector<std::uint32_t>(rows.size()));
  for (std::size_t c = 0; c < rows.size(); ++c)
    for (std::size_t g = 0; g < ngens; ++g) out[g][c] = rows[c][2 * g];
  return out;
}

CosetTable todd_coxeter(const FinitePresentation& p, const std::vector<Word>& subgroup,
                        std::size_t max_cosets) {
  if (max_cosets < 1) throw InputError("max_cosets must be at least 1");
  const auto n = p.alphabet.size();
  std::vector<std::vector<std::size_t>> rels, subs;
  std::set<Word> seen;
  for (const auto& r : p.relators) {
    check_alphabet(r, n);
    Word core = cyclic_reduce(r).core;
    if (!core.empty() && seen.insert(core).second) rels.push_back(columns(core));
  }
  for (const auto& w : subgroup) {
    check_alphabet(w, n);
    subs.push_back(columns(w));
  }
  Enumerator e(n, max_cosets);
  CosetTable t;
  const bool ok = e.run(rels, subs);
  t.defined = e.defined();
  if (!ok) return t;
  t.status = CosetStatus::closed;
  t.rows = e.compact();
  return t;
}

bool validate_coset_table(const CosetTable& t, const FinitePresentation& p,
                          const std::vector<Word>& subgroup) {
  if (!t.closed() || t.rows.empty()) return false;
  const auto n = t.rows.size();
  const auto ncols = 2 * p.alphabet.size();
  for (const auto& row : t.rows)
    if (row.size() != ncols) return false;
  for (std::size_t x = 0; x < ncols; x += 2) {
    std::vector<bool> hit(n, false);
    for (std::size_t c = 0; c < n; ++c) {
      const auto d = t.rows[c][x];
      if (d >= n || hit[d] || t.rows[d][x + 1] != c) return false;
      hit[d] = true;
    }
  }
  auto trace = [&](std::size_t c, const Word& w) {
    for (auto l : w) c = t.rows[c][2 * l.gen + (l.sign < 0 ? 1 : 0)];
    return c;
  };
  for (const auto& r : p.relators)
    for (std::size_t c = 0; c < n; ++c)
      if (trace(c, r) != c) return false;
  for (const auto& w : subgroup)
    if (trace(0, w) != 0) return false;
  return true;
}

std::optional<std::size_t> order_from_presentation(const LPresentation& L, std::size_t depth,
                                                   std::size_t max_cosets) {
  FinitePresentation p = truncate(L, depth, DedupMode::cyclic);
  CosetTable t = todd_coxeter(p, {}, max_cosets);
  if (!t.closed()) return std::nullopt;
  return t.size();
}

// ---------------------------------------------------------------- Smith normal form

AbelianInvariants smith_normal_form(IntMatrix m, std::size_t cols) {
  for (const auto& row : m)
    if (row.size() != cols) throw InputError("ragged integer matrix");
  // zero rows carry no information
  std::erase_if(m, [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](const BigInt& x) { return x == 0; });
  });
  const std::size_t rows = m.size();
  std::vector<BigInt> diagonal;

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : m) std::swap(row[a], row[b]);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the remaining block becomes the pivot
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (!best || abs(m[i][j]) < abs(m[best->first][best->second])))
          best = {i, j};
    if (!best) break;
    std::swap(m[t], m[best->first]);
    swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        BigInt q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        BigInt q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) {
        // move the smallest remainder in row t or column t to the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (m[i][t] != 0 && abs(m[i][t]) < abs(m[bi][bj])) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[t][j] != 0 && abs(m[t][j]) < abs(m[bi][bj])) bi = t, bj = j;
        std::swap(m[t], m[bi]);
        swap_cols(t, bj);
        continue;
      }
      // the pivot must divide the whole remaining block
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < rows && !bad; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      for (std::size_t j = t; j < cols; ++j) m[t][j] += m[*bad][j];
    }
    diagonal.push_back(abs(m[t][t]));
  }

  AbelianInvariants out;
  out.free_rank = cols - diagonal.size();
  for (auto& d : diagonal)
    if (d > 1) out.torsion.push_back(d);
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

IntMatrix exponent_matrix(const std::vector<Word>& relators, std::size_t alphabet_size) {
  std::set<std::vector<long>> rows;
  for (const auto& r : relators) rows.insert(exponent_sums(r, alphabet_size));
  IntMatrix m;
  for (const auto& row : rows) {
    std::vector<BigInt> big(row.begin(), row.end());
    m.push_back(std::move(big));
  }
  return m;
}

Abelianization abelianization(const LPresentation& L, std::size_t depth) {
  L.validate();
  const auto n = L.alphabet.size();
  RelatorEnumerator e(L, DedupMode::exact);
  for (std::size_t k = 0; k < depth; ++k) e.advance();
  Abelianization out;
  out.depth = depth;
  out.relators = e.emitted().size();
  out.invariants = smith_normal_form(exponent_matrix(e.emitted(), n), n);
  if (depth > 0) {
    const auto& counts = e.counts_by_depth();
    std::vector<Word> before(e.emitted().begin(),
                             e.emitted().begin() + static_cast<std::ptrdiff_t>(counts[depth - 1]));
    out.stabilized = smith_normal_form(exponent_matrix(before, n), n) == out.invariants;
  }
  return out;
}

std::string to_string(const AbelianInvariants& a) {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : a.torsion) {
    os << (first ? "" : " x ") << "Z/" << d;
    first = false;
  }
  if (a.free_rank > 0) {
    os << (first ? "" : " x ") << "Z";
    if (a.free_rank > 1) os << "^" << a.free_rank;
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

}  // namespace endo
