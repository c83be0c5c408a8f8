#include "doctest.h"

#include <cmath>

#include "iadof/link_sim.hpp"
#include "oracles.hpp"

using namespace iadof;

namespace {

SystemConfig cfg(int K, int M, int N, int gamma, std::uint64_t seed = 1,
                 int Q = 2) {
  SystemConfig c;
  c.users = K;
  c.tx_antennas = M;
  c.rx_antennas = N;
  c.gamma = gamma;
  c.seed = seed;
  c.symbol_range = Q;
  return c;
}

TransmitPlan truncated(const SystemConfig& c, std::size_t cap) {
  return truncate_plan(build_transmit_directions(c), cap);
}

}  // namespace

TEST_CASE("encoding") {
  const auto c = cfg(3, 1, 1, 1, 4);
  const auto plan = truncated(c, 2);
  const auto h = generate_channel(c);

  const auto zero = encode(plan, h, zero_messages(plan), 1.7);
  for (double v : zero.values) CHECK(v == 0.0);

  RandomStream rng(11);
  const auto a = random_messages(plan, 3, rng);
  const auto b = random_messages(plan, 3, rng);
  MessageMatrix sum = a;
  for (auto& [id, syms] : sum.symbols)
    for (std::size_t i = 0; i < syms.size(); ++i) syms[i] += b.symbols.at(id)[i];
  const auto xa = encode(plan, h, a, 0.9), xb = encode(plan, h, b, 0.9);
  const auto xs = encode(plan, h, sum, 0.9);
  for (std::size_t i = 0; i < xs.values.size(); ++i)
    CHECK(xs.values[i] ==
          doctest::Approx(xa.values[i] + xb.values[i]).epsilon(1e-10));

  for (const auto& [id, syms] : a.symbols)
    for (auto u : syms) {
      CHECK(u >= -2);
      CHECK(u <= 2);
    }
}

TEST_CASE("single stream with the unit direction sends the direct gain") {
  const auto c = cfg(1, 1, 1, 1, 8);
  const auto plan = build_transmit_directions(c);
  REQUIRE(plan.at(1, 1, 1).size() == 1);
  REQUIRE(plan.at(1, 1, 1)[0].is_unit());
  const auto h = generate_channel(c);
  auto msgs = zero_messages(plan);
  msgs.symbols.at(StreamId{1, 1, 1})[0] = 1;
  const auto x = encode(plan, h, msgs, 1.0);
  CHECK(x.at(1, 1) == doctest::Approx(h.coefficient(1, 1, 1, 1)));
}

TEST_CASE("propagation") {
  const auto c = cfg(1, 2, 3, 1, 9);
  const auto h = generate_channel(c);
  AntennaSignal x{1, 2, {0.3, -1.1}};
  const auto y = propagate(h, x, nullptr);
  for (int n = 1; n <= 3; ++n)
    CHECK(y.at(1, n) == doctest::Approx(h.coefficient(1, 1, n, 1) * 0.3 +
                                        h.coefficient(1, 1, n, 2) * -1.1));

  const auto y0 = propagate(h, AntennaSignal{1, 2, {0.0, 0.0}}, std::nullopt);
  for (double v : y0.values) CHECK(v == 0.0);

  CHECK(propagate(h, x, std::optional<std::uint64_t>(5)).values ==
        propagate(h, x, std::optional<std::uint64_t>(5)).values);
}

TEST_CASE("noise has unit variance") {
  const auto h = generate_channel(cfg(1, 1, 1, 1, 2));
  RandomStream noise(77);
  const AntennaSignal x{1, 1, {0.0}};
  double sum = 0.0, sq = 0.0;
  const int draws = 100'000;
  for (int i = 0; i < draws; ++i) {
    const double v = propagate(h, x, &noise).values[0];
    sum += v;
    sq += v * v;
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("power accounting") {
  CHECK(symbol_variance(2) == doctest::Approx(2.0 / 3.0));
  CHECK(symbol_variance(4) == doctest::Approx(4.0));
  // Uniform on {-(Q-1),...,Q-1}: direct computation.
  for (int Q = 2; Q <= 6; ++Q) {
    double s = 0.0;
    for (int u = -(Q - 1); u <= Q - 1; ++u) s += double(u) * u;
    CHECK(symbol_variance(Q) == doctest::Approx(s / (2 * Q - 1)));
  }

  const auto c = cfg(3, 2, 1, 1, 21, 3);
  const auto plan = truncated(c, 2);
  const auto h = generate_channel(c);
  const double rho = 1e3;
  const double A = amplitude_for_power(plan, h, 3, rho);
  const double budget = rho / 6.0;
  double tight = 0.0;
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 2; ++m) {
      const double p = expected_transmit_power(plan, h, 3, A, k, m);
      CHECK(p <= budget * (1 + 1e-6));
      tight = std::max(tight, p);
    }
  CHECK(tight == doctest::Approx(budget));

  RandomStream rng(5);
  std::vector<double> power(6, 0.0);
  const int draws = 40'000;
  for (int i = 0; i < draws; ++i) {
    const auto x = encode(plan, h, random_messages(plan, 3, rng), A);
    for (std::size_t j = 0; j < 6; ++j) power[j] += x.values[j] * x.values[j];
  }
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 2; ++m) {
      const double empirical = power[std::size_t((k - 1) * 2 + m - 1)] / draws;
      const double expected = expected_transmit_power(plan, h, 3, A, k, m);
      CHECK(empirical == doctest::Approx(expected).epsilon(0.05));
    }
}

TEST_CASE("minimum distance") {
  SUBCASE("single direction, single user") {
    const auto c = cfg(1, 1, 1, 1, 3);
    const auto plan = build_transmit_directions(c);
    const auto h = generate_channel(c);
    const double g = h.coefficient(1, 1, 1, 1);
    CHECK(min_distance(plan, h, 1, 1, 2, 1.0) == doctest::Approx(g * g));
    CHECK(min_distance(plan, h, 1, 1, 2, 2.5) == doctest::Approx(2.5 * g * g));
  }
  SUBCASE("agrees with a pairwise search over the constellation") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      for (int Q : {2, 3}) {
        const auto c = cfg(3, 1, 1, 1, seed, Q);
        const auto plan = truncated(c, seed % 2 ? 1 : 2);
        const auto h = generate_channel(c);
        for (int k = 1; k <= 3; ++k) {
          auto con = build_constellation(plan, h, k, 1, Q);
          const double expect = oracle::pairwise_min_distance(con);
          CHECK(expect > 0.0);
          CHECK(AntennaDecoder(con).min_distance() ==
                doctest::Approx(expect).epsilon(1e-9));
          CHECK(min_distance(plan, h, k, 1, Q, 3.0) ==
                doctest::Approx(3.0 * expect).epsilon(1e-9));
        }
      }
  }
  SUBCASE("constellation values come from the received directions") {
    const auto c = cfg(3, 1, 1, 1, 6);
    const auto plan = truncated(c, 2);
    const auto h = generate_channel(c);
    const auto con = build_constellation(plan, h, 2, 1, 2);
    const auto prof = expand_received(plan, 2, 1);
    CHECK(con.desired_values.size() == prof.desired_count);
    CHECK(con.interference_values.size() == prof.interference_count);
    for (std::size_t i = 0; i < con.desired_values.size(); ++i) {
      const auto& s = con.desired_streams[i];
      const auto d = oracle::h(2, 2, 1, s.tx_ant, 2) *
                     plan.at(s.user, s.tx_ant, s.rx_ant)[con.desired_indices[i]];
      CHECK(con.desired_values[i] == doctest::Approx(oracle::eval(d, h)));
    }
    for (double v : con.interference_values) {
      bool found = false;
      for (const auto& d : prof.interference)
        found = found || std::abs(oracle::eval(d, h) - v) <= 1e-12 * std::abs(v);
      CHECK(found);
    }
  }
  SUBCASE("budget") {
    const auto c = cfg(3, 1, 1, 1, 2, 2);
    const auto plan = build_transmit_directions(c);  // 16 directions per stream
    const auto h = generate_channel(c);
    CHECK_THROWS_AS(min_distance(plan, h, 1, 1, 2, 1.0), DecodeBudgetExceeded);
    const auto small = truncated(c, 1);
    CHECK_THROWS_AS(AntennaDecoder(build_constellation(small, h, 1, 1, 2), 26),
                    DecodeBudgetExceeded);
    CHECK_NOTHROW(AntennaDecoder(build_constellation(small, h, 1, 1, 2), 27));
  }
}

TEST_CASE("exhaustive decoder recovers every noiseless point") {
  const auto c = cfg(3, 1, 1, 1, 12, 3);
  const auto plan = truncated(c, 1);
  const auto h = generate_channel(c);
  const AntennaDecoder dec(build_constellation(plan, h, 1, 1, 3));
  const auto& con = dec.constellation();
  REQUIRE(con.desired_values.size() == 1);
  for (int u = -2; u <= 2; ++u)
    for (std::int64_t a = -con.interference_bounds[0]; a <= con.interference_bounds[0]; ++a)
      for (std::int64_t b = -con.interference_bounds[1]; b <= con.interference_bounds[1]; ++b) {
        const double y = con.desired_values[0] * u +
                         con.interference_values[0] * double(a) +
                         con.interference_values[1] * double(b);
        CHECK(dec.decode(y) == std::vector<std::int32_t>{u});
      }
}

TEST_CASE("separation exponent") {
  const auto one = cfg(1, 1, 1, 1, 3);
  const auto plan1 = build_transmit_directions(one);
  const auto h1 = generate_channel(one);
  const auto fit1 = separation_exponent(plan1, h1, 1, 1, {2, 4, 8, 16});
  CHECK(fit1.slope == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fit1.floor == doctest::Approx(-(double(fit1.directions) + 0.1)));
  CHECK_THROWS_AS(separation_exponent(plan1, h1, 1, 1, {2, 4, 8}),
                  std::invalid_argument);

  int good = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto c = cfg(3, 1, 1, 1, seed);
    const auto plan = truncated(c, 1);
    const auto h = generate_channel(c);
    const auto fit = separation_exponent(plan, h, 1, 1, {2, 4, 8, 16});
    const auto again = separation_exponent(plan, h, 1, 1, {2, 4, 8, 16});
    CHECK(fit.slope == again.slope);
    if (fit.finite() && fit.slope >= -(double(fit.directions) + 1.0)) ++good;
  }
  CHECK(good >= 90);
}

TEST_CASE("link simulation") {
  SimConfig sim;
  sim.snr_points = {1e2, 1e4, 1e6};
  sim.trials = 1000;

  SUBCASE("noiseless decoding is exact") {
    auto s = sim;
    s.noiseless = true;
    s.trials = 200;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto r = run_link_sim(cfg(3, 1, 1, 1, seed), s, 1);
      for (const auto& p : r.ser) CHECK(p.symbol_errors == 0);
      CHECK(r.d_min > 0.0);
    }
    const auto r = run_link_sim(cfg(2, 2, 1, 1, 3, 3), s, 1);
    for (const auto& p : r.ser) CHECK(p.ser == 0.0);
    CHECK(r.decoded_rate == doctest::Approx(2 * std::log2(5.0)));
  }
  SUBCASE("error rate falls with SNR") {
    const auto r = run_link_sim(cfg(3, 1, 1, 1, 4), sim, 1);
    REQUIRE(r.ser.size() == 3);
    CHECK(r.ser[2].ser < r.ser[0].ser);
    for (std::size_t i = 1; i < r.ser.size(); ++i) {
      const double p = r.ser[i - 1].ser;
      const double se = std::sqrt(std::max(p * (1 - p), 1e-12) /
                                  double(r.ser[i - 1].symbols));
      CHECK(r.ser[i].ser <= p + 2 * se);
    }
    for (const auto& p : r.ser) CHECK(p.symbols == 3u * 1000u);
  }
  SUBCASE("doubling the amplitude does not raise the error rate") {
    auto s = sim;
    s.snr_points = {30.0, 120.0};
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto r = run_link_sim(cfg(3, 1, 1, 1, seed), s, 1);
      CHECK(r.ser[1].amplitude == doctest::Approx(2 * r.ser[0].amplitude));
      ok += r.ser[1].ser <= r.ser[0].ser;
    }
    CHECK(ok >= 19);
  }
  SUBCASE("runs are reproducible") {
    auto s = sim;
    s.trials = 100;
    s.separation_q = {2, 3, 4, 5};
    const auto a = run_link_sim(cfg(3, 1, 1, 1, 9), s, 1);
    const auto b = run_link_sim(cfg(3, 1, 1, 1, 9), s, 1);
    for (std::size_t i = 0; i < a.ser.size(); ++i)
      CHECK(a.ser[i].symbol_errors == b.ser[i].symbol_errors);
    REQUIRE(a.separation.has_value());
    CHECK(a.separation->slope == b.separation->slope);
  }
  SUBCASE("invalid settings") {
    auto s = sim;
    s.trials = 0;
    CHECK_THROWS_AS(run_link_sim(cfg(3, 1, 1, 1), s, 1), std::invalid_argument);
    s = sim;
    s.snr_points.clear();
    CHECK_THROWS_AS(run_link_sim(cfg(3, 1, 1, 1), s, 1), std::invalid_argument);
    s = sim;
    s.decode_budget = 10;
    CHECK_THROWS_AS(run_link_sim(cfg(3, 1, 1, 1), s, 1), DecodeBudgetExceeded);
  }
}
