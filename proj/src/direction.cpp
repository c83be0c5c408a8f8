#include "iadof/direction.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace iadof {

namespace {

void check_degree(std::int64_t degree) {
  if (degree > kMaxDegree)
    throw std::overflow_error("direction degree " + std::to_string(degree) +
                              " exceeds the cap of " +
                              std::to_string(kMaxDegree));
}

double ipow(double base, std::int32_t exponent) {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace

Direction Direction::power(const CoefficientId& c, std::int32_t exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  check_degree(exponent);
  if (exponent == 0) return {};
  return Direction({Factor{c.key(), exponent}});
}

Direction Direction::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.key < b.key; });
  std::vector<Factor> merged;
  merged.reserve(factors.size());
  std::int64_t degree = 0;
  for (const auto& f : factors) {
    if (f.exponent < 0) throw std::invalid_argument("negative exponent");
    degree += f.exponent;
    check_degree(degree);
    if (f.exponent == 0) continue;
    if (!merged.empty() && merged.back().key == f.key)
      merged.back().exponent += f.exponent;
    else
      merged.push_back(f);
  }
  return Direction(std::move(merged));
}

std::int32_t Direction::exponent(const CoefficientId& c) const {
  const auto key = c.key();
  auto it = std::lower_bound(
      factors_.begin(), factors_.end(), key,
      [](const Factor& f, std::uint32_t k) { return f.key < k; });
  return (it != factors_.end() && it->key == key) ? it->exponent : 0;
}

std::int64_t Direction::degree() const {
  std::int64_t total = 0;
  for (const auto& f : factors_) total += f.exponent;
  return total;
}

std::string Direction::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& f : factors_) {
    const auto c = CoefficientId::from_key(f.key);
    if (!out.empty()) out += '*';
    out += "H[" + std::to_string(c.rx_user) + "," + std::to_string(c.tx_user) +
           "](" + std::to_string(c.rx_ant) + "," + std::to_string(c.tx_ant) + ")";
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
  }
  return out;
}

Direction mono_mul(const Direction& a, const Direction& b) {
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  std::vector<Factor> out;
  out.reserve(a.factors_.size() + b.factors_.size());
  std::int64_t degree = 0;
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->key < ib->key)) {
      out.push_back(*ia++);
    } else if (ia == a.factors_.end() || ib->key < ia->key) {
      out.push_back(*ib++);
    } else {
      out.push_back({ia->key, ia->exponent + ib->exponent});
      ++ia;
      ++ib;
    }
    degree += out.back().exponent;
  }
  check_degree(degree);
  return Direction(std::move(out));
}

double mono_eval(const Direction& d, const ChannelRealization& h) {
  double value = 1.0;
  for (const auto& f : d.factors()) {
    const auto c = CoefficientId::from_key(f.key);
    if (!h.contains(c))
      throw std::out_of_range("direction mentions a coefficient missing from "
                              "the channel: " + d.to_string());
    value *= ipow(h.coefficient(c), f.exponent);
  }
  return value;
}

DirectionSet::DirectionSet(std::vector<Direction> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool DirectionSet::contains(const Direction& d) const {
  return std::binary_search(members_.begin(), members_.end(), d);
}

bool DirectionSet::insert(Direction d) {
  auto it = std::lower_bound(members_.begin(), members_.end(), d);
  if (it != members_.end() && *it == d) return false;
  members_.insert(it, std::move(d));
  return true;
}

DirectionSet set_union(const DirectionSet& a, const DirectionSet& b) {
  std::vector<Direction> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return DirectionSet(std::move(out));
}

DirectionSet set_difference(const DirectionSet& a, const DirectionSet& b) {
  std::vector<Direction> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return DirectionSet(std::move(out));
}

DirectionSet set_intersection(const DirectionSet& a, const DirectionSet& b) {
  std::vector<Direction> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return DirectionSet(std::move(out));
}

bool disjoint(const DirectionSet& a, const DirectionSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return false;
  }
  return true;
}

bool is_subset(const DirectionSet& a, const DirectionSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

DirectionSet scale(const DirectionSet& s, const Direction& d) {
  std::vector<Direction> out;
  out.reserve(s.size());
  for (const auto& member : s) out.push_back(mono_mul(member, d));
  return DirectionSet(std::move(out));
}

}  // namespace iadof
