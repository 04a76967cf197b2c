#include "endopres/random.hpp"

#include <limits>

#include "endopres/errors.hpp"

namespace endo {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InputError("empty sampling range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const auto x = engine_();
    if (x < limit) return x % n;
  }
}

Word random_word(Rng& rng, std::size_t alphabet_size, std::size_t length) {
  if (alphabet_size == 0) {
    if (length > 0) throw InputError("cannot draw letters from an empty alphabet");
    return {};
  }
  WordBuilder b;
  std::optional<Letter> last;
  for (std::size_t i = 0; i < length; ++i) {
    // 2n letters, minus the inverse of the previous one
    const std::uint64_t choices = 2 * alphabet_size - (last ? 1 : 0);
    auto k = rng.below(choices);
    Letter l{};
    for (std::uint32_t idx = 0;; ++idx) {
      Letter cand = gen_letter(idx / 2, idx % 2 == 0 ? 1 : -1);
      if (last && cand.cancels(*last)) continue;
      if (k-- == 0) {
        l = cand;
        break;
      }
    }
    b.push(l);
    last = l;
  }
  return std::move(b).take();
}

}  // namespace endo
