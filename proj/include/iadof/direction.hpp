#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "iadof/channel_model.hpp"

namespace iadof {

struct Factor {
  std::uint32_t key;  // packed CoefficientId
  std::int32_t exponent;

  friend constexpr auto operator<=>(const Factor&, const Factor&) = default;
};

/// Hard cap on the total degree of a direction.
inline constexpr std::int64_t kMaxDegree = 1'000'000;

/// A monomial in the channel gains with positive integer exponents, kept as a
/// sparse exponent vector sorted by coefficient. The empty vector is the unit
/// direction 1. Directions compare as formal monomials, never numerically.
class Direction {
 public:
  Direction() = default;

  /// c^exponent; exponent 0 yields the unit direction.
  static Direction power(const CoefficientId& c, std::int32_t exponent = 1);

  /// Canonicalizes arbitrary factors: sorts, merges repeated keys and drops
  /// zero exponents. Negative exponents are rejected.
  static Direction from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  std::int32_t exponent(const CoefficientId& c) const;
  std::int64_t degree() const;

  /// "H[k,j](n,m)^e" factors joined by '*', or "1" for the unit direction.
  std::string to_string() const;

  friend auto operator<=>(const Direction&, const Direction&) = default;
  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  explicit Direction(std::vector<Factor> canonical)
      : factors_(std::move(canonical)) {}

  friend Direction mono_mul(const Direction& a, const Direction& b);

  std::vector<Factor> factors_;
};

/// Exponent-wise product. Throws std::overflow_error past kMaxDegree.
Direction mono_mul(const Direction& a, const Direction& b);

inline Direction operator*(const Direction& a, const Direction& b) {
  return mono_mul(a, b);
}

/// Numeric value of d on a channel realization (powers by squaring).
/// Throws std::out_of_range if d mentions a coefficient the channel lacks.
double mono_eval(const Direction& d, const ChannelRealization& h);

/// Deduplicated set of directions in ascending canonical order.
class DirectionSet {
 public:
  using const_iterator = std::vector<Direction>::const_iterator;

  DirectionSet() = default;
  explicit DirectionSet(std::vector<Direction> members);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const_iterator begin() const { return members_.begin(); }
  const_iterator end() const { return members_.end(); }
  const Direction& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Direction>& members() const { return members_; }

  bool contains(const Direction& d) const;
  /// Returns false if d was already present.
  bool insert(Direction d);

  friend bool operator==(const DirectionSet&, const DirectionSet&) = default;

 private:
  std::vector<Direction> members_;
};

DirectionSet set_union(const DirectionSet& a, const DirectionSet& b);
DirectionSet set_difference(const DirectionSet& a, const DirectionSet& b);
DirectionSet set_intersection(const DirectionSet& a, const DirectionSet& b);
bool disjoint(const DirectionSet& a, const DirectionSet& b);
bool is_subset(const DirectionSet& a, const DirectionSet& b);
/// d.S = { d * s : s in S }.
DirectionSet scale(const DirectionSet& s, const Direction& d);

}  // namespace iadof
