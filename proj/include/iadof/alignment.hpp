#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "iadof/channel_model.hpp"
#include "iadof/direction.hpp"
#include "iadof/rational.hpp"

// Construction and symbolic verification of the monomial alignment scheme.
//
// Transmitter k sends on antenna m the superposition
//   X_km = sum_n H_kk(n,m) X_km(n),
// where X_km(n) carries integer symbols along the directions of the stream
// (k, m, n), i.e. data meant for receive antenna n of user k. Every direction
// is a product of "pair generators" destined for antenna n,
//   P_n(j, m', n', i) = H_jj(n, m') * H_ij(n', m'),   (i, n') != (j, n),
// with exponents in [0, gamma - 1] for the own family (j = k, m' = m), in
// [0, gamma] for every family with j != k, and 0 for (j = k, m' != m).
namespace iadof {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

/// Data stream destined for receive antenna `rx_ant` of `user`, sent from
/// transmit antenna `tx_ant`.
struct StreamId {
  int user = 1;
  int tx_ant = 1;
  int rx_ant = 1;
  friend constexpr auto operator<=>(const StreamId&, const StreamId&) = default;
};

struct ClosedFormCounts {
  BigInt per_stream;    // |T_km(n)|
  BigInt interference;  // L' at one receive antenna
};

class EnumerationTooLarge : public std::runtime_error {
 public:
  EnumerationTooLarge(const ClosedFormCounts& counts, std::uint64_t budget);
  const ClosedFormCounts& counts() const { return counts_; }
  std::uint64_t budget() const { return budget_; }

 private:
  ClosedFormCounts counts_;
  std::uint64_t budget_;
};

ClosedFormCounts cardinality_closed_form(const SystemConfig& config);

/// P_n(j, m', n', i) as a direction. Throws std::invalid_argument for the
/// excluded (i, n') == (j, n) combination.
Direction pair_generator(int destined_rx_ant, int j, int m_prime,
                         int n_prime, int i);

struct TransmitPlan {
  SystemConfig config;
  std::map<StreamId, DirectionSet> streams;
  std::optional<std::size_t> truncation_cap;

  const DirectionSet& at(int k, int m, int n) const;
  bool truncated() const { return truncation_cap.has_value(); }
};

/// Enumerates every stream's direction set. Throws EnumerationTooLarge when
/// the closed-form per-stream count exceeds `budget`.
TransmitPlan build_transmit_directions(
    const SystemConfig& config,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// Keeps the `cap` smallest directions (canonical order) of every stream.
/// Returns the plan unchanged when no stream has more than `cap` members.
TransmitPlan truncate_plan(const TransmitPlan& plan, std::size_t cap);

/// The N reference sets T_r(n): all monomials whose pair exponents over the
/// generators destined for antenna n lie in [0, gamma]. Membership is decided
/// by factoring a monomial into those generators, so the sets are never
/// materialized unless asked.
class ReferenceFamily {
 public:
  ReferenceFamily(int users, int tx_antennas, int rx_antennas, int gamma)
      : users_(users), tx_(tx_antennas), rx_(rx_antennas), gamma_(gamma) {}

  bool contains(const Direction& d, int rx_ant) const;
  bool contains_any(const Direction& d) const;

  /// |T_r(n)| = (gamma+1)^(K M (K N - 1)).
  BigInt cardinality() const;

  /// Explicit enumeration of T_r(n); throws EnumerationTooLarge beyond
  /// `budget` members.
  DirectionSet materialize(int rx_ant, std::uint64_t budget) const;

  int rx_antennas() const { return rx_; }

 private:
  int users_;
  int tx_;
  int rx_;
  int gamma_;
};

/// One term of the symbolic expansion of Y_kn: the symbols of `stream` at
/// position `index` arrive along `direction`.
struct ReceivedTerm {
  Direction direction;
  StreamId stream;
  std::size_t index = 0;
  bool desired = false;
};

/// Every (stream, symbol) contribution to antenna n of user k, desired terms
/// first, in deterministic order.
std::vector<ReceivedTerm> received_terms(const TransmitPlan& plan, int k,
                                         int n);

struct ReceiverProfile {
  int user = 1;
  int rx_ant = 1;
  std::vector<DirectionSet> desired;  // one set per transmit antenna
  DirectionSet interference;
  ReferenceFamily reference;
  std::size_t desired_count = 0;       // sum over m of |desired[m]|
  std::size_t interference_count = 0;  // |interference|
  std::size_t distinct_count = 0;      // distinct directions at the antenna
};

ReceiverProfile expand_received(const TransmitPlan& plan, int k, int n);

struct AntennaCheck {
  int user = 1;
  int rx_ant = 1;
  std::size_t stream_count_observed = 0;  // smallest |T_km(n)| over m
  std::size_t desired_count = 0;
  std::size_t interference_count = 0;
  std::size_t distinct_count = 0;
  bool desired_pairwise_disjoint = false;
  bool desired_disjoint_from_interference = false;
  bool interference_within_reference = false;
  bool interference_within_closed_form = false;
  std::optional<bool> stream_count_matches;  // untruncated plans only

  bool pass() const {
    return desired_pairwise_disjoint && desired_disjoint_from_interference &&
           interference_within_reference && interference_within_closed_form &&
           stream_count_matches.value_or(true);
  }
};

struct AlignmentReport {
  SystemConfig config;
  ClosedFormCounts closed_form;
  std::optional<std::size_t> truncation_cap;
  std::vector<AntennaCheck> per_antenna;
  bool pass = false;
};

AlignmentReport verify_alignment(const TransmitPlan& plan);

struct AchievableDof {
  Rational per_antenna;
  Rational total;
};

/// DoF of the scheme at a finite gamma:
///   per antenna  M L / (1 + M L + N (gamma+1)^(KN-1 + (K-1)M(KN-1))),
///   total        K N times that.
AchievableDof achievable_dof_gamma(const SystemConfig& config);

}  // namespace iadof
