#include "iadof/link_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace iadof {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

}  // namespace

MessageMatrix zero_messages(const TransmitPlan& plan) {
  MessageMatrix msgs;
  for (const auto& [id, set] : plan.streams)
    msgs.symbols.emplace(id, std::vector<std::int32_t>(set.size(), 0));
  return msgs;
}

MessageMatrix random_messages(const TransmitPlan& plan, int symbol_range,
                              RandomStream& rng) {
  MessageMatrix msgs;
  for (const auto& [id, set] : plan.streams) {
    std::vector<std::int32_t> u(set.size());
    for (auto& s : u)
      s = std::int32_t(rng.uniform_int(-(symbol_range - 1), symbol_range - 1));
    msgs.symbols.emplace(id, std::move(u));
  }
  return msgs;
}

AntennaSignal encode(const TransmitPlan& plan, const ChannelRealization& h,
                     const MessageMatrix& msgs, double amplitude) {
  const auto& c = plan.config;
  AntennaSignal x{c.users, c.tx_antennas,
                  std::vector<double>(std::size_t(c.users) * c.tx_antennas)};
  for (const auto& [id, set] : plan.streams) {
    auto it = msgs.symbols.find(id);
    if (it == msgs.symbols.end() || it->second.size() != set.size())
      throw std::invalid_argument("message matrix does not match the plan");
    double stream = 0.0;
    for (std::size_t l = 0; l < set.size(); ++l)
      stream += double(it->second[l]) * mono_eval(set[l], h);
    x.values[std::size_t(id.user - 1) * c.tx_antennas + std::size_t(id.tx_ant - 1)] +=
        h.coefficient(id.user, id.user, id.rx_ant, id.tx_ant) * amplitude *
        stream;
  }
  return x;
}

AntennaSignal propagate(const ChannelRealization& h, const AntennaSignal& x,
                        RandomStream* noise) {
  if (x.users != h.users() || x.antennas != h.tx_antennas() ||
      x.values.size() != std::size_t(x.users) * x.antennas)
    throw std::invalid_argument("transmit signal does not match the channel");
  const int K = h.users();
  const int N = h.rx_antennas();
  const int M = h.tx_antennas();
  AntennaSignal y{K, N, std::vector<double>(std::size_t(K) * N)};
  for (int k = 1; k <= K; ++k)
    for (int n = 1; n <= N; ++n) {
      double sum = 0.0;
      for (int j = 1; j <= K; ++j)
        for (int m = 1; m <= M; ++m)
          sum += h.coefficient(k, j, n, m) * x.at(j, m);
      if (noise) sum += noise->gaussian();
      y.values[std::size_t(k - 1) * N + std::size_t(n - 1)] = sum;
    }
  return y;
}

AntennaSignal propagate(const ChannelRealization& h, const AntennaSignal& x,
                        std::optional<std::uint64_t> noise_seed) {
  if (!noise_seed) return propagate(h, x, static_cast<RandomStream*>(nullptr));
  RandomStream rng(*noise_seed);
  return propagate(h, x, &rng);
}

double symbol_variance(int symbol_range) {
  return double(symbol_range - 1) * symbol_range / 3.0;
}

double expected_transmit_power(const TransmitPlan& plan,
                               const ChannelRealization& h, int symbol_range,
                               double amplitude, int k, int m) {
  double energy = 0.0;
  for (int n = 1; n <= plan.config.rx_antennas; ++n) {
    double directions = 0.0;
    for (const auto& t : plan.at(k, m, n)) {
      const double v = mono_eval(t, h);
      directions += v * v;
    }
    const double g = h.coefficient(k, k, n, m);
    energy += g * g * directions;
  }
  return amplitude * amplitude * energy * symbol_variance(symbol_range);
}

double amplitude_for_power(const TransmitPlan& plan,
                           const ChannelRealization& h, int symbol_range,
                           double power) {
  const auto& c = plan.config;
  const double budget = power / (double(c.users) * c.tx_antennas);
  double amplitude = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= c.users; ++k)
    for (int m = 1; m <= c.tx_antennas; ++m) {
      const double unit = expected_transmit_power(plan, h, symbol_range, 1.0, k, m);
      if (unit > 0.0) amplitude = std::min(amplitude, std::sqrt(budget / unit));
    }
  if (!std::isfinite(amplitude))
    throw std::invalid_argument("plan carries no symbols");
  return amplitude;
}

std::uint64_t AntennaConstellation::point_count() const {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < desired_values.size(); ++i)
    count = saturating_mul(count, std::uint64_t(2 * symbol_range - 1));
  for (auto b : interference_bounds)
    count = saturating_mul(count, std::uint64_t(2 * b + 1));
  return count;
}

AntennaConstellation build_constellation(const TransmitPlan& plan,
                                         const ChannelRealization& h, int k,
                                         int n, int symbol_range) {
  AntennaConstellation out;
  out.user = k;
  out.rx_ant = n;
  out.symbol_range = symbol_range;

  std::map<Direction, std::size_t> desired_seen;
  std::map<Direction, std::int64_t> aligned;
  for (auto& term : received_terms(plan, k, n)) {
    if (term.desired) {
      if (!desired_seen.emplace(term.direction, out.desired_values.size()).second)
        throw std::logic_error("two desired symbols share a direction");
      out.desired_values.push_back(mono_eval(term.direction, h));
      out.desired_streams.push_back(term.stream);
      out.desired_indices.push_back(term.index);
    } else {
      ++aligned[term.direction];
    }
  }
  for (const auto& [d, count] : aligned) {
    if (desired_seen.count(d))
      throw std::logic_error("interference overlaps a desired direction: " +
                             d.to_string());
    out.interference_values.push_back(mono_eval(d, h));
    out.interference_bounds.push_back(count * (symbol_range - 1));
  }
  for (const auto& [d, _] : desired_seen)
    out.non_unit_directions += !d.is_unit();
  for (const auto& [d, _] : aligned) out.non_unit_directions += !d.is_unit();
  return out;
}

DecodeBudgetExceeded::DecodeBudgetExceeded(std::uint64_t required,
                                           std::uint64_t budget)
    : std::runtime_error("exhaustive search needs " + std::to_string(required) +
                         " constellation points, budget is " +
                         std::to_string(budget)),
      required_(required) {}

AntennaDecoder::AntennaDecoder(AntennaConstellation constellation,
                               std::uint64_t budget)
    : constellation_(std::move(constellation)) {
  const auto& c = constellation_;
  const std::uint64_t count = c.point_count();
  if (count > budget) throw DecodeBudgetExceeded(count, budget);

  // Coordinates most significant first: desired symbols, then aggregates.
  std::vector<double> values = c.desired_values;
  std::vector<std::int64_t> bounds(c.desired_values.size(), c.symbol_range - 1);
  values.insert(values.end(), c.interference_values.begin(),
                c.interference_values.end());
  bounds.insert(bounds.end(), c.interference_bounds.begin(),
                c.interference_bounds.end());
  for (auto b : c.interference_bounds) interference_radix_ *= std::uint64_t(2 * b + 1);

  const std::size_t dims = values.size();
  std::vector<std::int64_t> digit(dims, 0);
  // partial[i] = sum of coordinates 0..i-1, recomputed from the changed
  // digit onwards so rounding never accumulates across points.
  std::vector<double> partial(dims + 1, 0.0);
  auto refresh = [&](std::size_t from) {
    for (std::size_t i = from; i < dims; ++i)
      partial[i + 1] = partial[i] + double(digit[i] - bounds[i]) * values[i];
  };
  refresh(0);

  points_.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    points_.push_back({partial[dims], code});
    std::size_t i = dims;
    while (i > 0) {
      --i;
      if (digit[i] < 2 * bounds[i]) {
        ++digit[i];
        refresh(i);
        break;
      }
      digit[i] = 0;
    }
  }
  std::sort(points_.begin(), points_.end(), [](const Point& a, const Point& b) {
    return a.value < b.value || (a.value == b.value && a.code < b.code);
  });
}

std::vector<std::int32_t> AntennaDecoder::decode(double y) const {
  auto value_less = [](const Point& p, double v) { return p.value < v; };
  auto hi = std::lower_bound(points_.begin(), points_.end(), y, value_less);
  auto best = hi;
  if (hi == points_.end()) {
    best = std::lower_bound(points_.begin(), points_.end(),
                            std::prev(hi)->value, value_less);
  } else if (hi != points_.begin()) {
    auto lo = std::lower_bound(points_.begin(), points_.end(),
                               std::prev(hi)->value, value_less);
    const double d_lo = y - lo->value;
    const double d_hi = hi->value - y;
    if (d_lo < d_hi || (d_lo == d_hi && lo->code < hi->code)) best = lo;
  }

  const auto& c = constellation_;
  std::vector<std::int32_t> symbols(c.desired_values.size());
  std::uint64_t label = desired_label(best->code);
  const std::uint64_t radix = std::uint64_t(2 * c.symbol_range - 1);
  for (std::size_t i = symbols.size(); i > 0; --i) {
    symbols[i - 1] = std::int32_t(label % radix) - (c.symbol_range - 1);
    label /= radix;
  }
  return symbols;
}

double AntennaDecoder::min_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (desired_label(points_[i].code) != desired_label(points_[i - 1].code))
      best = std::min(best, points_[i].value - points_[i - 1].value);
  return best;
}

double min_distance(const TransmitPlan& plan, const ChannelRealization& h,
                    int k, int n, int symbol_range, double amplitude,
                    std::uint64_t budget) {
  auto constellation = build_constellation(plan, h, k, n, symbol_range);
  if (constellation.direction_count() > kMaxDirectionsPerAntenna)
    throw DecodeBudgetExceeded(constellation.direction_count(),
                               kMaxDirectionsPerAntenna);
  return amplitude * AntennaDecoder(std::move(constellation), budget).min_distance();
}

bool SeparationFit::finite() const { return std::isfinite(slope); }

SeparationFit separation_exponent(const TransmitPlan& plan,
                                  const ChannelRealization& h, int k, int n,
                                  const std::vector<int>& q_values,
                                  double epsilon, std::uint64_t budget) {
  if (q_values.size() < 4)
    throw std::invalid_argument("separation fit needs at least four Q values");
  SeparationFit fit;
  fit.q_values = q_values;
  fit.directions = build_constellation(plan, h, k, n, 2).non_unit_directions;
  fit.floor = -(double(fit.directions) + epsilon);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  bool degenerate = false;
  for (int q : q_values) {
    if (q < 2) throw std::invalid_argument("Q must be >= 2");
    const double d = min_distance(plan, h, k, n, q, 1.0, budget);
    fit.d_min.push_back(d);
    if (!(d > 0.0) || !std::isfinite(d)) {
      degenerate = true;
      continue;
    }
    const double x = std::log(double(q));
    const double y = std::log(d);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double count = double(q_values.size());
  const double denom = count * sxx - sx * sx;
  if (degenerate || denom == 0.0)
    fit.slope = -std::numeric_limits<double>::infinity();
  else
    fit.slope = (count * sxy - sx * sy) / denom;
  return fit;
}

void SimConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (snr_points.empty()) throw std::invalid_argument("no SNR points given");
  for (double rho : snr_points)
    if (!(rho > 0.0) || !std::isfinite(rho))
      throw std::invalid_argument("SNR points must be positive");
}

SimResult run_link_sim(const SystemConfig& config, const SimConfig& sim,
                       std::size_t cap) {
  config.validate();
  sim.validate();
  const auto plan =
      truncate_plan(build_transmit_directions(config, sim.enumeration_budget), cap);
  auto result = run_link_sim(plan, generate_channel(config), sim);
  result.cap = cap;
  return result;
}

SimResult run_link_sim(const TransmitPlan& plan, const ChannelRealization& h,
                       const SimConfig& sim) {
  sim.validate();
  const auto& c = plan.config;
  if (h.users() != c.users || h.tx_antennas() != c.tx_antennas ||
      h.rx_antennas() != c.rx_antennas)
    throw std::invalid_argument("channel does not match the plan");
  const int Q = c.symbol_range;

  SimResult result;
  result.config = c;
  result.cap = plan.truncation_cap.value_or(0);

  std::vector<AntennaDecoder> decoders;
  result.d_min = std::numeric_limits<double>::infinity();
  result.streams_per_antenna = SIZE_MAX;
  for (int k = 1; k <= c.users; ++k)
    for (int n = 1; n <= c.rx_antennas; ++n) {
      decoders.emplace_back(build_constellation(plan, h, k, n, Q),
                            sim.decode_budget);
      const double d = decoders.back().min_distance();
      result.d_min_per_antenna.push_back(d);
      result.d_min = std::min(result.d_min, d);
      result.streams_per_antenna =
          std::min(result.streams_per_antenna,
                   decoders.back().constellation().desired_values.size());
    }

  for (double rho : sim.snr_points) {
    SerPoint point;
    point.rho = rho;
    point.trials = sim.trials;
    point.amplitude = amplitude_for_power(plan, h, Q, rho);
    for (int t = 0; t < sim.trials; ++t) {
      RandomStream message_rng(c.seed, {std::uint64_t(t), 0});
      RandomStream noise_rng(c.seed, {std::uint64_t(t), 1});
      const auto msgs = random_messages(plan, Q, message_rng);
      const auto x = encode(plan, h, msgs, point.amplitude);
      const auto y = propagate(h, x, sim.noiseless ? nullptr : &noise_rng);
      for (const auto& decoder : decoders) {
        const auto& con = decoder.constellation();
        const auto decoded = decoder.decode(y.at(con.user, con.rx_ant) / point.amplitude);
        for (std::size_t i = 0; i < decoded.size(); ++i) {
          const auto sent =
              msgs.symbols.at(con.desired_streams[i])[con.desired_indices[i]];
          point.symbol_errors += decoded[i] != sent;
        }
        point.symbols += decoded.size();
      }
    }
    point.ser = point.symbols ? double(point.symbol_errors) / double(point.symbols) : 0.0;
    result.ser.push_back(point);
  }

  double best_rho = -1.0;
  for (const auto& p : result.ser)
    if (p.ser < 1e-3 && p.rho > best_rho) best_rho = p.rho;
  if (best_rho > 0.0)
    result.decoded_rate =
        double(result.streams_per_antenna) * std::log2(double(2 * Q - 1));

  if (!sim.separation_q.empty())
    result.separation = separation_exponent(plan, h, 1, 1, sim.separation_q,
                                            sim.epsilon, sim.decode_budget);
  return result;
}

}  // namespace iadof
