#include "iadof/alignment.hpp"

#include <algorithm>
#include <string>

namespace iadof {

namespace {

// Dense index of H_kj(n,m); increasing dense index is increasing key order.
struct DenseLayout {
  int users, tx, rx;

  std::size_t size() const {
    return std::size_t(users) * users * rx * tx;
  }
  std::size_t index(int k, int j, int n, int m) const {
    return ((std::size_t(k - 1) * users + std::size_t(j - 1)) * rx +
            std::size_t(n - 1)) *
               tx +
           std::size_t(m - 1);
  }
  std::vector<std::uint32_t> keys() const {
    std::vector<std::uint32_t> out;
    out.reserve(size());
    for (int k = 1; k <= users; ++k)
      for (int j = 1; j <= users; ++j)
        for (int n = 1; n <= rx; ++n)
          for (int m = 1; m <= tx; ++m)
            out.push_back(CoefficientId{k, j, n, m}.key());
    return out;
  }
};

struct Generator {
  std::size_t first;   // H_jj(n, m')
  std::size_t second;  // H_ij(n', m')
  int max_exponent;
};

void add_pair_family(const DenseLayout& layout, int n, int j, int m_prime,
                     int max_exponent, std::vector<Generator>& out) {
  if (max_exponent <= 0) return;
  for (int i = 1; i <= layout.users; ++i)
    for (int n_prime = 1; n_prime <= layout.rx; ++n_prime) {
      if (i == j && n_prime == n) continue;
      out.push_back({layout.index(j, j, n, m_prime),
                     layout.index(i, j, n_prime, m_prime), max_exponent});
    }
}

BigInt count_assignments(const std::vector<Generator>& gens) {
  BigInt count = 1;
  for (const auto& g : gens) count *= g.max_exponent + 1;
  return count;
}

// Visits every exponent assignment of the generators, materializing each
// product as a canonical direction.
std::vector<Direction> enumerate_products(const DenseLayout& layout,
                                          const std::vector<Generator>& gens) {
  const auto keys = layout.keys();
  std::vector<std::int32_t> dense(layout.size(), 0);
  std::vector<int> exps(gens.size(), 0);
  std::vector<Direction> out;
  out.reserve(count_assignments(gens).convert_to<std::size_t>());

  std::vector<Factor> factors;
  for (;;) {
    factors.clear();
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (dense[i] != 0) factors.push_back({keys[i], dense[i]});
    out.push_back(Direction::from_factors(factors));

    std::size_t v = 0;
    while (v < gens.size() && exps[v] == gens[v].max_exponent) {
      dense[gens[v].first] -= exps[v];
      dense[gens[v].second] -= exps[v];
      exps[v] = 0;
      ++v;
    }
    if (v == gens.size()) break;
    ++exps[v];
    ++dense[gens[v].first];
    ++dense[gens[v].second];
  }
  return out;
}

std::vector<Generator> stream_generators(const SystemConfig& c, int k, int m,
                                         int n) {
  const DenseLayout layout{c.users, c.tx_antennas, c.rx_antennas};
  std::vector<Generator> gens;
  add_pair_family(layout, n, k, m, c.gamma - 1, gens);
  for (int j = 1; j <= c.users; ++j) {
    if (j == k) continue;
    for (int mp = 1; mp <= c.tx_antennas; ++mp)
      add_pair_family(layout, n, j, mp, c.gamma, gens);
  }
  return gens;
}

Direction coefficient_pair(const CoefficientId& a, const CoefficientId& b) {
  return mono_mul(Direction::power(a), Direction::power(b));
}

}  // namespace

EnumerationTooLarge::EnumerationTooLarge(const ClosedFormCounts& counts,
                                         std::uint64_t budget)
    : std::runtime_error("enumeration too large: " + counts.per_stream.str() +
                         " directions per stream exceeds the budget of " +
                         std::to_string(budget)),
      counts_(counts),
      budget_(budget) {}

ClosedFormCounts cardinality_closed_form(const SystemConfig& c) {
  c.validate();
  const unsigned pairs_per_family = unsigned(c.users * c.rx_antennas - 1);
  const unsigned cross = unsigned(c.users - 1) * c.tx_antennas * pairs_per_family;
  const BigInt gamma = c.gamma;
  ClosedFormCounts out;
  out.per_stream = boost::multiprecision::pow(gamma, pairs_per_family) *
                   boost::multiprecision::pow(gamma + 1, cross);
  out.interference = BigInt(c.tx_antennas - 1) * out.per_stream +
                     BigInt(c.rx_antennas) *
                         boost::multiprecision::pow(gamma + 1,
                                                    pairs_per_family + cross);
  return out;
}

Direction pair_generator(int destined_rx_ant, int j, int m_prime, int n_prime,
                         int i) {
  if (i == j && n_prime == destined_rx_ant)
    throw std::invalid_argument("pair generator would square a direct gain");
  return coefficient_pair(CoefficientId{j, j, destined_rx_ant, m_prime},
                          CoefficientId{i, j, n_prime, m_prime});
}

const DirectionSet& TransmitPlan::at(int k, int m, int n) const {
  auto it = streams.find(StreamId{k, m, n});
  if (it == streams.end())
    throw std::out_of_range("no stream (" + std::to_string(k) + "," +
                            std::to_string(m) + "," + std::to_string(n) +
                            ") in plan");
  return it->second;
}

TransmitPlan build_transmit_directions(const SystemConfig& config,
                                       std::uint64_t budget) {
  const auto counts = cardinality_closed_form(config);
  if (counts.per_stream > budget) throw EnumerationTooLarge(counts, budget);

  const DenseLayout layout{config.users, config.tx_antennas,
                           config.rx_antennas};
  TransmitPlan plan;
  plan.config = config;
  for (int k = 1; k <= config.users; ++k)
    for (int m = 1; m <= config.tx_antennas; ++m)
      for (int n = 1; n <= config.rx_antennas; ++n)
        plan.streams.emplace(
            StreamId{k, m, n},
            DirectionSet(enumerate_products(
                layout, stream_generators(config, k, m, n))));
  return plan;
}

TransmitPlan truncate_plan(const TransmitPlan& plan, std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("truncation cap must be >= 1");
  TransmitPlan out;
  out.config = plan.config;
  out.truncation_cap = plan.truncation_cap;
  bool shrunk = false;
  for (const auto& [id, set] : plan.streams) {
    if (set.size() <= cap) {
      out.streams.emplace(id, set);
      continue;
    }
    shrunk = true;
    out.streams.emplace(
        id, DirectionSet(std::vector<Direction>(set.begin(), set.begin() + cap)));
  }
  if (shrunk)
    out.truncation_cap =
        out.truncation_cap ? std::min(*out.truncation_cap, cap) : cap;
  return out;
}

bool ReferenceFamily::contains(const Direction& d, int rx_ant) const {
  // Off-antenna factors identify their generator uniquely (the second
  // factor); the direct gains H_jj(rx_ant, m) must then carry exactly the
  // sum of the exponents of their generators.
  std::vector<std::int64_t> expected(std::size_t(users_) * tx_, 0);
  std::vector<std::int64_t> actual(std::size_t(users_) * tx_, 0);
  for (const auto& f : d.factors()) {
    const auto c = CoefficientId::from_key(f.key);
    if (c.rx_user < 1 || c.rx_user > users_ || c.tx_user < 1 ||
        c.tx_user > users_ || c.rx_ant < 1 || c.rx_ant > rx_ || c.tx_ant < 1 ||
        c.tx_ant > tx_)
      return false;
    const auto slot = std::size_t(c.tx_user - 1) * tx_ + std::size_t(c.tx_ant - 1);
    if (c.rx_user == c.tx_user && c.rx_ant == rx_ant) {
      actual[slot] = f.exponent;
    } else {
      if (f.exponent > gamma_) return false;
      expected[slot] += f.exponent;
    }
  }
  return expected == actual;
}

bool ReferenceFamily::contains_any(const Direction& d) const {
  for (int n = 1; n <= rx_; ++n)
    if (contains(d, n)) return true;
  return false;
}

BigInt ReferenceFamily::cardinality() const {
  const unsigned gens = unsigned(users_) * tx_ * unsigned(users_ * rx_ - 1);
  return boost::multiprecision::pow(BigInt(gamma_ + 1), gens);
}

DirectionSet ReferenceFamily::materialize(int rx_ant,
                                          std::uint64_t budget) const {
  if (rx_ant < 1 || rx_ant > rx_)
    throw std::out_of_range("receive antenna out of range");
  const DenseLayout layout{users_, tx_, rx_};
  std::vector<Generator> gens;
  for (int j = 1; j <= users_; ++j)
    for (int mp = 1; mp <= tx_; ++mp)
      add_pair_family(layout, rx_ant, j, mp, gamma_, gens);
  const BigInt count = count_assignments(gens);
  if (count > budget) {
    ClosedFormCounts counts;
    counts.per_stream = count;
    throw EnumerationTooLarge(counts, budget);
  }
  return DirectionSet(enumerate_products(layout, gens));
}

std::vector<ReceivedTerm> received_terms(const TransmitPlan& plan, int k,
                                         int n) {
  const auto& c = plan.config;
  if (k < 1 || k > c.users || n < 1 || n > c.rx_antennas)
    throw std::out_of_range("receiver index out of range");

  std::vector<ReceivedTerm> terms;
  auto push_stream = [&](int j, int m, int n_prime, const Direction& mult,
                         bool desired) {
    const StreamId id{j, m, n_prime};
    const auto& set = plan.at(j, m, n_prime);
    for (std::size_t l = 0; l < set.size(); ++l)
      terms.push_back({mono_mul(set[l], mult), id, l, desired});
  };

  for (int m = 1; m <= c.tx_antennas; ++m)
    push_stream(k, m, n, Direction::power(CoefficientId{k, k, n, m}, 2), true);

  for (int j = 1; j <= c.users; ++j)
    for (int m = 1; m <= c.tx_antennas; ++m)
      for (int n_prime = 1; n_prime <= c.rx_antennas; ++n_prime) {
        if (j == k && n_prime == n) continue;
        // Self terms H_kk(n,m) H_kk(n',m); cross terms H_kj(n,m) H_jj(n',m).
        push_stream(j, m, n_prime,
                    coefficient_pair(CoefficientId{k, j, n, m},
                                     CoefficientId{j, j, n_prime, m}),
                    false);
      }
  return terms;
}

ReceiverProfile expand_received(const TransmitPlan& plan, int k, int n) {
  const auto& c = plan.config;
  auto terms = received_terms(plan, k, n);

  std::vector<std::vector<Direction>> desired(std::size_t(c.tx_antennas));
  std::vector<Direction> interference;
  for (auto& t : terms) {
    if (t.desired)
      desired[std::size_t(t.stream.tx_ant - 1)].push_back(std::move(t.direction));
    else
      interference.push_back(std::move(t.direction));
  }

  ReceiverProfile p{
      k,  n, {}, DirectionSet(std::move(interference)),
      ReferenceFamily(c.users, c.tx_antennas, c.rx_antennas, c.gamma)};
  DirectionSet all = p.interference;
  for (auto& d : desired) {
    p.desired.emplace_back(std::move(d));
    p.desired_count += p.desired.back().size();
    all = set_union(all, p.desired.back());
  }
  p.interference_count = p.interference.size();
  p.distinct_count = all.size();
  return p;
}

AlignmentReport verify_alignment(const TransmitPlan& plan) {
  const auto& c = plan.config;
  AlignmentReport report;
  report.config = c;
  report.closed_form = cardinality_closed_form(c);
  report.truncation_cap = plan.truncation_cap;
  report.pass = true;

  for (int k = 1; k <= c.users; ++k)
    for (int n = 1; n <= c.rx_antennas; ++n) {
      const auto profile = expand_received(plan, k, n);
      AntennaCheck check;
      check.user = k;
      check.rx_ant = n;
      check.desired_count = profile.desired_count;
      check.interference_count = profile.interference_count;
      check.distinct_count = profile.distinct_count;

      check.desired_pairwise_disjoint = true;
      DirectionSet desired_union;
      for (std::size_t a = 0; a < profile.desired.size(); ++a) {
        for (std::size_t b = a + 1; b < profile.desired.size(); ++b)
          if (!disjoint(profile.desired[a], profile.desired[b]))
            check.desired_pairwise_disjoint = false;
        desired_union = set_union(desired_union, profile.desired[a]);
      }
      check.desired_disjoint_from_interference =
          disjoint(desired_union, profile.interference);
      check.interference_within_reference = std::all_of(
          profile.interference.begin(), profile.interference.end(),
          [&](const Direction& d) { return profile.reference.contains_any(d); });
      check.interference_within_closed_form =
          BigInt(profile.interference_count) <= report.closed_form.interference;

      check.stream_count_observed = SIZE_MAX;
      bool counts_match = true;
      for (int m = 1; m <= c.tx_antennas; ++m) {
        const auto size = plan.at(k, m, n).size();
        check.stream_count_observed = std::min(check.stream_count_observed, size);
        counts_match = counts_match &&
                       BigInt(size) == report.closed_form.per_stream;
      }
      if (!plan.truncated()) check.stream_count_matches = counts_match;

      report.pass = report.pass && check.pass();
      report.per_antenna.push_back(check);
    }
  return report;
}

AchievableDof achievable_dof_gamma(const SystemConfig& config) {
  const auto counts = cardinality_closed_form(config);
  const int K = config.users;
  const int M = config.tx_antennas;
  const int N = config.rx_antennas;
  const unsigned pairs_per_family = unsigned(K * N - 1);
  const unsigned cross = unsigned(K - 1) * M * pairs_per_family;
  const BigInt desired = BigInt(M) * counts.per_stream;
  const BigInt interference =
      BigInt(N) * boost::multiprecision::pow(BigInt(config.gamma + 1),
                                             pairs_per_family + cross);
  AchievableDof out;
  out.per_antenna = Rational(desired, 1 + desired + interference);
  out.total = out.per_antenna * (K * N);
  return out;
}

}  // namespace iadof
