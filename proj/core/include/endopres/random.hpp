#pragma once

#include <cstdint>
#include <random>

#include "endopres/words.hpp"

namespace endo {

/// Seeded generator with its own bounded sampling, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  long between(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Uniform freely reduced word of exactly `length` letters.
Word random_word(Rng& rng, std::size_t alphabet_size, std::size_t length);

}  // namespace endo
