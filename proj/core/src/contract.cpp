#include "endopres/contract.hpp"

#include <algorithm>
#include <limits>

#include "endopres/errors.hpp"
#include "endopres/random.hpp"

namespace endo {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::vector<Letter> all_letters(std::size_t n) {
  std::vector<Letter> out;
  for (std::uint32_t g = 0; g < n; ++g) {
    out.push_back(gen_letter(g, 1));
    out.push_back(gen_letter(g, -1));
  }
  return out;
}

Word extend(const Word& w, Letter l) {
  std::vector<Letter> ls(w.begin(), w.end());
  ls.push_back(l);
  return Word::reduce(ls);
}

}  // namespace

Flag FlagTable::at(const Word& w) const {
  auto it = flags.find(w);
  if (it == flags.end()) throw InputError("word is not in the flag table");
  return it->second;
}

FlagTable build_flag_table(const SelfSimilarSpec& spec, unsigned D,
                           std::optional<std::uint64_t> sweep_seed) {
  spec.validate();
  if (D < 1) throw InputError("the flag table needs D >= 1");
  const auto letters = all_letters(spec.alphabet.size());

  std::vector<Word> words{Word{}};
  for (std::size_t begin = 0, len = 1; len <= D; ++len) {
    const std::size_t end = words.size();
    for (std::size_t k = begin; k < end; ++k)
      for (auto l : letters) {
        if (!words[k].empty() && words[k].letters().back().cancels(l)) continue;
        words.push_back(extend(words[k], l));
      }
    begin = end;
  }

  struct Node {
    bool moves = false;
    std::vector<std::size_t> sections;  // indices into words
  };
  std::unordered_map<Word, std::size_t> index;
  for (std::size_t k = 0; k < words.size(); ++k) index.emplace(words[k], k);

  std::vector<Node> nodes(words.size());
  for (std::size_t k = 1; k < words.size(); ++k) {
    WreathForm form = wreath_decompose(spec, words[k]);
    if (!is_identity(form.top)) {
      nodes[k].moves = true;
      continue;
    }
    for (const auto& s : form.sections) {
      Word n = normalize(spec, s);
      if (n.size() > D)
        throw CertificateError("a section of a short stabilizer word is longer than D = " +
                                   std::to_string(D),
                               to_string(words[k], spec.alphabet));
      nodes[k].sections.push_back(index.at(n));
    }
  }

  std::vector<std::optional<Flag>> flag(words.size());
  flag[0] = Flag::trivial;
  std::vector<std::size_t> order;
  for (std::size_t k = 1; k < words.size(); ++k) order.push_back(k);
  if (sweep_seed) {
    Rng rng(*sweep_seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  }

  for (bool changed = true; changed;) {
    changed = false;
    for (auto k : order) {
      if (flag[k]) continue;
      if (nodes[k].moves) {
        flag[k] = Flag::nontrivial;
        changed = true;
        continue;
      }
      bool all_trivial = true;
      bool some_nontrivial = false;
      for (auto s : nodes[k].sections) {
        if (!flag[s])
          all_trivial = false;
        else if (*flag[s] == Flag::nontrivial)
          some_nontrivial = true;
      }
      if (some_nontrivial) {
        flag[k] = Flag::nontrivial;
        changed = true;
      } else if (all_trivial) {
        flag[k] = Flag::trivial;
        changed = true;
      }
    }
  }

  FlagTable table;
  table.D = D;
  for (std::size_t k = 0; k < words.size(); ++k)
    table.flags.emplace(words[k], flag[k].value_or(Flag::trivial));
  return table;
}

WordProblemSolver::WordProblemSolver(const SelfSimilarSpec& spec, FlagTable table,
                                     unsigned max_depth)
    : spec_(&spec), table_(std::move(table)), max_depth_(max_depth) {
  spec.validate();
}

namespace {
FlagTable table_from_metadata(const SelfSimilarSpec& spec) {
  if (!spec.contraction_D) throw InputError("the recursion has no contraction constant D");
  return build_flag_table(spec, *spec.contraction_D);
}
}  // namespace

WordProblemSolver::WordProblemSolver(const SelfSimilarSpec& spec)
    : WordProblemSolver(spec, table_from_metadata(spec)) {}

bool WordProblemSolver::is_trivial(const Word& w) {
  check_alphabet(w, spec_->alphabet.size());
  return decide(w, 0).trivial;
}

WordProblemSolver::Verdict WordProblemSolver::decide(const Word& w, std::size_t depth) {
  Word n = normalize(*spec_, w);
  if (n.size() <= table_.D) return {table_.at(n) == Flag::trivial, npos};
  if (auto it = memo_.find(n); it != memo_.end()) return {it->second, npos};
  // a word met again below itself stabilizes every level on the way
  if (auto it = active_.find(n); it != active_.end()) return {true, it->second};
  if (depth > max_depth_)
    throw ResourceError("word problem recursion deeper than " + std::to_string(max_depth_) +
                        "; the contraction constant D = " + std::to_string(table_.D) +
                        " is probably too small");

  WreathForm form = wreath_decompose(*spec_, n);
  if (!is_identity(form.top)) {
    memo_.emplace(n, false);
    return {false, npos};
  }
  active_.emplace(n, depth);
  bool trivial = true;
  std::size_t assumed = npos;
  for (const auto& s : form.sections) {
    Verdict v = decide(s, depth + 1);
    if (!v.trivial) {
      trivial = false;
      break;
    }
    assumed = std::min(assumed, v.assumed);
  }
  active_.erase(n);
  if (!trivial) {
    memo_.emplace(n, false);
    return {false, npos};
  }
  if (assumed >= depth) {
    memo_.emplace(n, true);
    return {true, npos};
  }
  return {true, assumed};
}

bool is_trivial(const SelfSimilarSpec& spec, const FlagTable& table, const Word& w) {
  WordProblemSolver solver(spec, table);
  return solver.is_trivial(w);
}

ContractionCertificate check_contraction(const SelfSimilarSpec& spec, unsigned D,
                                         unsigned max_length, std::size_t max_violations) {
  spec.validate();
  ContractionCertificate cert;
  cert.D = D;
  cert.checked_length = max_length;
  const auto letters = all_letters(spec.alphabet.size());
  // normal forms are closed under prefixes, so grow them letter by letter
  std::vector<Word> layer{Word{}};
  for (unsigned len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (auto l : letters) {
        if (!w.empty() && w.letters().back().cancels(l)) continue;
        Word x = extend(w, l);
        if (normalize(spec, x) != x) continue;
        next.push_back(std::move(x));
      }
    layer = std::move(next);
    if (len <= D) continue;
    for (const auto& w : layer) {
      WreathForm form = wreath_decompose(spec, w);
      if (!is_identity(form.top)) continue;
      ++cert.words_checked;
      for (const auto& s : form.sections)
        if (normalize(spec, s).size() >= w.size()) {
          if (cert.violations.size() < max_violations) cert.violations.push_back(w);
          break;
        }
    }
  }
  return cert;
}

}  // namespace endo
