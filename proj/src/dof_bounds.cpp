#include "iadof/dof_bounds.hpp"

#include <algorithm>
#include <iomanip>
#include <locale>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace iadof {

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& r, int significant_digits) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(significant_digits) << r.convert_to<double>();
  return out.str();
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::exact_small_k: return "exact_small_K";
    case Regime::open_gap: return "open_gap";
    case Regime::exact_large_k: return "exact_large_K";
  }
  return "unknown";
}

std::string_view to_string(BalanceSign s) {
  switch (s) {
    case BalanceSign::minus: return "minus";
    case BalanceSign::plus: return "plus";
    case BalanceSign::exact: return "exact";
  }
  return "unknown";
}

namespace {

void require_positive(int M, int N, int K) {
  if (M < 1 || N < 1 || K < 1)
    throw std::invalid_argument("M, N and K must all be >= 1");
}

// (MN L + mu c g) / ((M+N) L + mu g) * K, with c = min(M,N) for the minus
// family and max(M,N) for the plus family.
Rational signed_bound(int M, int N, int K, int l, int mu, int c) {
  const int g = std::gcd(M, N);
  const BigInt num = BigInt(M) * N * l + BigInt(mu) * c * g;
  const BigInt den = BigInt(M + N) * l + BigInt(mu) * g;
  return Rational(num, den) * K;
}

}  // namespace

int two_user_dof(int m1, int m2, int n1, int n2) {
  if (m1 < 0 || m2 < 0 || n1 < 0 || n2 < 0)
    throw std::invalid_argument("antenna counts must be non-negative");
  return std::min({m1 + m2, n1 + n2, std::max(m1, n2), std::max(m2, n1)});
}

Rational partition_bound(int M, int N, int K, int l1, int l2) {
  require_positive(M, N, K);
  if (l1 < 0 || l2 < 0 || l1 + l2 < 1 || l1 + l2 > K)
    throw std::invalid_argument("partition sizes must satisfy l1, l2 >= 0 and "
                                "1 <= l1 + l2 <= K");
  const int l_min = std::min(l1, l2);
  const int l_max = std::max(l1, l2);
  const int relaxed =
      std::max(std::max(M, N) * l_min, std::min(M, N) * l_max);
  return Rational(BigInt(K) * relaxed, BigInt(l1 + l2));
}

BalanceSolutions balance_solutions(int M, int N, int K, int mu,
                                   BalanceSign sign) {
  require_positive(M, N, K);
  if (mu < 1) throw std::invalid_argument("mu must be >= 1");
  if (sign == BalanceSign::exact)
    throw std::invalid_argument("balance solutions need a signed equation");
  const int hi = std::max(M, N);
  const int lo = std::min(M, N);
  const int g = std::gcd(M, N);
  const int offset = sign == BalanceSign::minus ? -g * mu : g * mu;

  BalanceSolutions out;
  // Both groups of users must be nonempty; l_min = 0 is the degenerate case
  // handled by the caller through an empty solution set.
  for (int l_min = 1; 2 * l_min <= K; ++l_min)
    for (int l_max = l_min; l_min + l_max <= K; ++l_max)
      if (hi * l_min == lo * l_max + offset)
        out.values.push_back(sign == BalanceSign::minus ? l_min : l_max);
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()),
                   out.values.end());
  if (!out.values.empty()) out.extremal = out.values.back();
  return out;
}

UpperBound upper_bound_dof(int M, int N, int K) {
  require_positive(M, N, K);
  const int hi = std::max(M, N);
  const int lo = std::min(M, N);
  const int g = std::gcd(M, N);

  if (K * g >= M + N) {
    PartitionWitness w;
    w.l_min = w.l1 = lo / g;
    w.l_max = w.l2 = hi / g;
    w.sign = BalanceSign::exact;
    w.bound = achievable_dof(M, N, K);
    return {w.bound, w};
  }

  // Beyond these mu the solution sets are empty and only the degenerate
  // l = 0 terms remain, which the loops below already cover at mu = 1.
  const int mu_cap_minus = std::max(1, lo * K / g);
  const int mu_cap_plus = std::max(1, (hi - lo) * K / (2 * g));
  if (mu_cap_minus > (M + N) * K || mu_cap_plus > (M + N) * K)
    throw std::logic_error("mu search exceeded its hard cap");

  std::optional<UpperBound> best;
  bool best_degenerate = true;
  auto consider = [&](BalanceSign sign, int mu) {
    const auto sol = balance_solutions(M, N, K, mu, sign);
    const int l = sol.extremal;
    const int c = sign == BalanceSign::minus ? lo : hi;
    Rational value = signed_bound(M, N, K, l, mu, c);
    const bool degenerate = sol.values.empty();
    if (best && (value > best->value ||
                 (value == best->value && (degenerate || !best_degenerate))))
      return;

    PartitionWitness w;
    w.mu = mu;
    w.sign = sign;
    w.bound = value;
    if (!degenerate) {
      if (sign == BalanceSign::minus) {
        w.l_min = l;
        w.l_max = (hi * l + g * mu) / lo;
      } else {
        w.l_max = l;
        w.l_min = (lo * l + g * mu) / hi;
      }
    }
    w.l1 = w.l_min;
    w.l2 = w.l_max;
    best = UpperBound{std::move(value), w};
    best_degenerate = degenerate;
  };

  for (int mu = 1; mu <= mu_cap_minus; ++mu) consider(BalanceSign::minus, mu);
  for (int mu = 1; mu <= mu_cap_plus; ++mu) consider(BalanceSign::plus, mu);
  return *best;
}

Rational brute_force_upper_bound(int M, int N, int K) {
  require_positive(M, N, K);
  std::optional<Rational> best;
  for (int total = 1; total <= K; ++total)
    for (int l1 = 0; l1 <= total; ++l1) {
      Rational b = partition_bound(M, N, K, l1, total - l1);
      if (!best || b < *best) best = std::move(b);
    }
  return *best;
}

Rational achievable_dof(int M, int N, int K) {
  require_positive(M, N, K);
  return Rational(BigInt(M) * N * K, BigInt(M + N));
}

ReferenceBounds prior_reference_bounds(int M, int N, int K) {
  require_positive(M, N, K);
  const int hi = std::max(M, N);
  const int lo = std::min(M, N);
  const int ratio = hi / lo;
  if (K <= ratio) {
    Rational v(BigInt(K) * lo);
    return {v, v};
  }
  return {Rational(BigInt(ratio) * lo * K, BigInt(ratio + 1)),
          Rational(BigInt(hi) * K, BigInt(ratio + 1))};
}

Regime regime_classify(int M, int N, int K) {
  require_positive(M, N, K);
  if (K <= std::max(M, N) / std::min(M, N)) return Regime::exact_small_k;
  if (K * std::gcd(M, N) >= M + N) return Regime::exact_large_k;
  return Regime::open_gap;
}

DofReport dof_report(int M, int N, int K) {
  DofReport r;
  r.tx_antennas = M;
  r.rx_antennas = N;
  r.users = K;
  r.achievable = achievable_dof(M, N, K);
  r.upper = upper_bound_dof(M, N, K);
  r.reference = prior_reference_bounds(M, N, K);
  r.regime = regime_classify(M, N, K);
  if (r.achievable > r.upper.value)
    throw std::logic_error("achievable DoF exceeds the upper bound for M=" +
                           std::to_string(M) + " N=" + std::to_string(N) +
                           " K=" + std::to_string(K));
  return r;
}

}  // namespace iadof
