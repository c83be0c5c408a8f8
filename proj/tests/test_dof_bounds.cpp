#include "doctest.h"

#include <numeric>
#include <stdexcept>

#include "iadof/dof_bounds.hpp"
#include "oracles.hpp"

using namespace iadof;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }
}  // namespace

TEST_CASE("two-user DoF") {
  CHECK(two_user_dof(1, 1, 1, 1) == 1);
  CHECK(two_user_dof(5, 5, 2, 2) == 4);
  CHECK(two_user_dof(2, 1, 1, 2) == 1);
}

TEST_CASE("partition bound values") {
  CHECK(partition_bound(5, 2, 4, 1, 3) == 6);
  CHECK(partition_bound(5, 2, 4, 3, 1) == 6);
  CHECK(partition_bound(5, 2, 4, 2, 2) == 10);
  for (int t = 1; t <= 6; ++t) {
    CHECK(partition_bound(5, 2, 6, 0, t) == 12);
    CHECK(partition_bound(3, 4, 6, t, 0) == 18);
  }
  CHECK_THROWS_AS(partition_bound(5, 2, 4, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(partition_bound(5, 2, 4, 3, 2), std::invalid_argument);
}

TEST_CASE("balance equation solution sets") {
  auto s = balance_solutions(5, 2, 4, 1, BalanceSign::minus);
  CHECK(s.values == std::vector<int>{1});
  CHECK(s.extremal == 1);

  s = balance_solutions(5, 2, 4, 2, BalanceSign::minus);
  CHECK(s.values.empty());
  CHECK(s.extremal == 0);

  s = balance_solutions(2, 1, 2, 1, BalanceSign::plus);
  CHECK(std::find(s.values.begin(), s.values.end(), 1) != s.values.end());
  CHECK(s.extremal == 1);

  CHECK_THROWS_AS(balance_solutions(5, 2, 4, 0, BalanceSign::minus),
                  std::invalid_argument);
}

TEST_CASE("upper bound examples") {
  auto u = upper_bound_dof(5, 2, 4);
  CHECK(u.value == 6);
  CHECK(u.value / 4 == q(3, 2));
  REQUIRE(u.witness.mu.has_value());
  CHECK(*u.witness.mu == 1);
  CHECK(u.witness.sign == BalanceSign::minus);
  CHECK(u.witness.l_min == 1);
  CHECK(u.witness.l_max == 3);

  CHECK(upper_bound_dof(5, 2, 7).value == 10);
  CHECK(upper_bound_dof(2, 1, 2).value == 2);
  for (int M = 1; M <= 6; ++M)
    for (int K = 2; K <= 10; ++K) CHECK(upper_bound_dof(M, M, K).value == q(M * K, 2));

  CHECK(brute_force_upper_bound(5, 2, 4) == 6);
  CHECK(brute_force_upper_bound(1, 1, 3) == q(3, 2));
  CHECK(brute_force_upper_bound(5, 2, 7) == 10);
}

TEST_CASE("witnesses satisfy the balance equation they claim") {
  for (int M = 1; M <= 6; ++M)
    for (int N = 1; N <= 6; ++N)
      for (int K = 1; K <= 12; ++K) {
        const auto u = upper_bound_dof(M, N, K);
        const auto& w = u.witness;
        CHECK(w.l_min == std::min(w.l1, w.l2));
        CHECK(w.l_max == std::max(w.l1, w.l2));
        CHECK(w.l1 + w.l2 <= K);
        CHECK(w.bound == u.value);
        if (w.sign == BalanceSign::exact || (w.l_min == 0 && w.l_max == 0))
          continue;
        const int g = std::gcd(M, N), hi = std::max(M, N), lo = std::min(M, N);
        const int off = w.sign == BalanceSign::minus ? -g * *w.mu : g * *w.mu;
        CHECK(hi * w.l_min == lo * w.l_max + off);
      }
}

TEST_CASE("closed-form bound equals exhaustive partition search") {
  for (int M = 1; M <= 6; ++M)
    for (int N = 1; N <= 6; ++N)
      for (int K = 1; K <= 12; ++K) {
        CAPTURE(M);
        CAPTURE(N);
        CAPTURE(K);
        const auto expect = oracle::upper(M, N, K);
        CHECK(brute_force_upper_bound(M, N, K) == expect);
        CHECK(upper_bound_dof(M, N, K).value == expect);
      }
}

TEST_CASE("partition bound relaxes the two-user DoF") {
  for (int M = 1; M <= 6; ++M)
    for (int N = 1; N <= 6; ++N)
      for (int l1 = 0; l1 <= 12; ++l1)
        for (int l2 = 0; l2 <= 12; ++l2) {
          const int lo = std::min(l1, l2), hi = std::max(l1, l2);
          const int relaxed =
              std::max(std::max(M, N) * lo, std::min(M, N) * hi);
          CHECK(two_user_dof(l1 * M, l2 * M, l1 * N, l2 * N) <= relaxed);
          CHECK(two_user_dof(l1 * M, l2 * M, l1 * N, l2 * N) ==
                oracle::two_user(l1 * M, l2 * M, l1 * N, l2 * N));
        }
}

TEST_CASE("achievable, references and regimes") {
  CHECK(achievable_dof(1, 2, 3) == 2);
  CHECK(achievable_dof(5, 2, 4) == q(40, 7));
  for (int K = 1; K <= 20; ++K) CHECK(achievable_dof(1, 1, K) == q(K, 2));

  auto r = prior_reference_bounds(5, 2, 4);
  CHECK(r.achievable == q(16, 3));
  CHECK(r.upper == q(20, 3));
  r = prior_reference_bounds(2, 1, 2);
  CHECK(r.achievable == 2);
  CHECK(r.upper == 2);
  r = prior_reference_bounds(1, 1, 3);
  CHECK(r.achievable == q(3, 2));
  CHECK(r.upper == q(3, 2));

  CHECK(regime_classify(5, 2, 2) == Regime::exact_small_k);
  CHECK(regime_classify(5, 2, 4) == Regime::open_gap);
  CHECK(regime_classify(5, 2, 7) == Regime::exact_large_k);
  CHECK(to_string(Regime::open_gap) == "open_gap");
}

TEST_CASE("reports") {
  auto r = dof_report(5, 2, 4);
  CHECK(r.achievable == q(40, 7));
  CHECK(r.upper.value == 6);
  CHECK(r.upper_per_user() == q(3, 2));
  CHECK(r.achievable_per_user() == q(10, 7));
  CHECK(r.regime == Regime::open_gap);

  r = dof_report(1, 1, 3);
  CHECK(r.achievable == q(3, 2));
  CHECK(r.upper.value == q(3, 2));
  CHECK(r.regime == Regime::exact_large_k);

  r = dof_report(3, 3, 5);
  CHECK(r.achievable == q(15, 2));
  CHECK(r.upper.value == q(15, 2));

  CHECK_THROWS_AS(dof_report(0, 1, 1), std::invalid_argument);
  CHECK(to_string(q(3, 2)) == "3/2");
  CHECK(to_string(q(6)) == "6");
  CHECK(to_decimal(q(10, 7)) == "1.42857142857");
}

TEST_CASE("lattice properties: sandwich, symmetry, dominance") {
  for (int M = 1; M <= 6; ++M)
    for (int N = 1; N <= 6; ++N)
      for (int K = 1; K <= 12; ++K) {
        CAPTURE(M);
        CAPTURE(N);
        CAPTURE(K);
        const auto r = dof_report(M, N, K);
        const auto s = dof_report(N, M, K);
        CHECK(r.achievable <= r.upper.value);
        CHECK((r.achievable == r.upper.value) ==
              (r.regime == Regime::exact_large_k));
        CHECK(r.achievable == s.achievable);
        CHECK(r.upper.value == s.upper.value);
        CHECK(r.regime == s.regime);

        const auto [gj_ach, gj_up] = oracle::prior(M, N, K);
        CHECK(r.reference.achievable == gj_ach);
        CHECK(r.reference.upper == gj_up);
        if (K > std::max(M, N) / std::min(M, N)) {
          CHECK(r.upper.value <= gj_up);
          CHECK(r.achievable >= gj_ach);
        } else {
          CHECK(r.upper.value == K * std::min(M, N));
        }
      }
}
