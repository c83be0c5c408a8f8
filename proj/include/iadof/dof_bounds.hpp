#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "iadof/rational.hpp"

// Exact degrees-of-freedom bounds for the K-user M x N MIMO interference
// channel. Everything here is exact rational arithmetic.
namespace iadof {

enum class Regime { exact_small_k, open_gap, exact_large_k };
enum class BalanceSign { minus, plus, exact };

std::string_view to_string(Regime r);
std::string_view to_string(BalanceSign s);

/// Cooperative two-group partition of L = l1 + l2 users that certifies an
/// upper bound. For the signed cases
///   max(M,N) l_min = min(M,N) l_max -/+ gcd(M,N) mu.
struct PartitionWitness {
  int l1 = 0;
  int l2 = 0;
  int l_min = 0;
  int l_max = 0;
  std::optional<int> mu;
  BalanceSign sign = BalanceSign::exact;
  Rational bound;
};

struct UpperBound {
  Rational value;
  PartitionWitness witness;
};

/// Solutions of the signed balance equation for one mu. `values` holds the
/// l_min entries (minus sign) or the l_max entries (plus sign); `extremal` is
/// their maximum, or 0 when there is no solution.
struct BalanceSolutions {
  std::vector<int> values;
  int extremal = 0;
};

struct ReferenceBounds {
  Rational achievable;
  Rational upper;
};

struct DofReport {
  int tx_antennas = 0;
  int rx_antennas = 0;
  int users = 0;
  Rational achievable;
  UpperBound upper;
  ReferenceBounds reference;  // earlier time-varying-channel results
  Regime regime = Regime::open_gap;

  Rational achievable_per_user() const { return achievable / users; }
  Rational upper_per_user() const { return upper.value / users; }
};

/// Exact DoF of the two-user MIMO interference channel with M1, M2 transmit
/// and N1, N2 receive antennas.
int two_user_dof(int m1, int m2, int n1, int n2);

/// (K / (l1 + l2)) * max{max(M,N) l_min, min(M,N) l_max}: the bound obtained
/// by letting l1 and l2 users cooperate as two super-users.
/// Requires l1, l2 >= 0 and 1 <= l1 + l2 <= K.
Rational partition_bound(int M, int N, int K, int l1, int l2);

/// Enumerates all (l_min, l_max) with 0 <= l_min <= l_max, l_min + l_max <= K
/// satisfying the signed balance equation for `mu` (mu >= 1).
BalanceSolutions balance_solutions(int M, int N, int K, int mu,
                                   BalanceSign sign);

/// The closed-form upper bound: MN/(M+N) K once K >= (M+N)/gcd(M,N),
/// otherwise the minimum over mu of the two signed balance bounds.
UpperBound upper_bound_dof(int M, int N, int K);

/// Independent oracle: minimum of partition_bound over every (L, l1).
Rational brute_force_upper_bound(int M, int N, int K);

/// MN/(M+N) K.
Rational achievable_dof(int M, int N, int K);

/// Reference bounds with R = floor(max/min): K min(M,N) for both when
/// K <= R, otherwise R/(R+1) min(M,N) K achievable and max(M,N)/(R+1) K upper.
ReferenceBounds prior_reference_bounds(int M, int N, int K);

Regime regime_classify(int M, int N, int K);

/// Aggregates every bound. Throws std::logic_error if achievable > upper.
DofReport dof_report(int M, int N, int K);

}  // namespace iadof
