#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <vector>

namespace iadof {

// The standard distributions are implementation-defined, so the conversions
// from raw engine output are spelled out here to keep runs reproducible
// across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Engine keyed by (seed, tag...), e.g. (seed, trial index).
  RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags)
      : engine_(make_seq(seed, tags)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer on [lo, hi], rejection sampled.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = std::uint64_t(hi - lo) + 1;
    if (span == 0) return std::int64_t(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + std::int64_t(draw % span);
  }

  /// Standard normal via Box-Muller; the second variate is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::mt19937_64 make_seq(std::uint64_t seed,
                                  std::initializer_list<std::uint64_t> tags) {
    std::vector<std::uint32_t> words{std::uint32_t(seed),
                                     std::uint32_t(seed >> 32)};
    for (auto t : tags) {
      words.push_back(std::uint32_t(t));
      words.push_back(std::uint32_t(t >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace iadof
