#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace verinews {

/// Deterministic permutation source for SGD epochs.
///
/// std::mt19937_64 seeded through std::seed_seq, both fully specified by the
/// standard, drives a Fisher-Yates shuffle. Bounded draws use rejection
/// sampling instead of std::uniform_int_distribution, whose output is
/// implementation-defined. Any change to this sequence must bump kVersion.
class Shuffler {
 public:
  static constexpr std::string_view kName = "mt19937_64/seed_seq/fisher-yates";
  static constexpr int kVersion = 1;

  Shuffler(std::uint64_t seed, std::uint64_t stream) : engine_(make_engine(seed, stream)) {}

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x;
    do {
      x = engine_();
    } while (x < threshold);
    return x % n;
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
  }

  std::mt19937_64 engine_;
};

}  // namespace verinews
