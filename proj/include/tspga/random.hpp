#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>

namespace tspga {

/// Seeded pseudo-random source shared by the operators and the GA.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Range reduction is done here by rejection instead of through
/// std::uniform_int_distribution, whose algorithm differs between standard
/// libraries; that keeps draw sequences identical across platforms.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi] (inclusive).
  int uniform(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("RandomStream::uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    // draws below this threshold would bias the low residues
    const std::uint64_t threshold = (0 - span) % span;
    std::uint64_t draw = engine_();
    while (draw < threshold) draw = engine_();
    return static_cast<int>(static_cast<std::int64_t>(lo) + static_cast<std::int64_t>(draw % span));
  }

  /// Uniform index in [0, n).
  int index(int n) { return uniform(0, n - 1); }

  /// Fisher-Yates shuffle driven by this stream.
  template <typename T>
  void shuffle(std::span<T> values) {
    for (int i = static_cast<int>(values.size()) - 1; i > 0; --i) {
      std::swap(values[i], values[uniform(0, i)]);
    }
  }

  std::uint64_t next_raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tspga
