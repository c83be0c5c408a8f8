#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "iadof/alignment.hpp"
#include "iadof/channel_model.hpp"
#include "iadof/random.hpp"

// Numerical exercise of the alignment scheme on concrete channels: integer
// symbols along monomial directions, linear propagation with unit-variance
// Gaussian noise, and exhaustive nearest-point decoding per receive antenna.
namespace iadof {

inline constexpr std::uint64_t kDefaultDecodeBudget = 10'000'000;
inline constexpr std::size_t kMaxDirectionsPerAntenna = 12;

/// u_kml(n): one integer symbol in (-Q, Q) per direction of every stream.
struct MessageMatrix {
  std::map<StreamId, std::vector<std::int32_t>> symbols;
};

MessageMatrix zero_messages(const TransmitPlan& plan);
MessageMatrix random_messages(const TransmitPlan& plan, int symbol_range,
                              RandomStream& rng);

/// Per-antenna samples indexed (user-1) * antennas + (antenna-1).
struct AntennaSignal {
  int users = 0;
  int antennas = 0;
  std::vector<double> values;

  double at(int user, int antenna) const {
    return values[std::size_t(user - 1) * antennas + std::size_t(antenna - 1)];
  }
};

/// X_km = sum_n H_kk(n,m) * A * sum_l u_kml(n) T_kml(n).
AntennaSignal encode(const TransmitPlan& plan, const ChannelRealization& h,
                     const MessageMatrix& msgs, double amplitude);

/// Y_kn = sum_{j,m} H_kj(n,m) X_jm + Z_kn with Z ~ N(0,1) drawn from `noise`,
/// or noiseless when `noise` is null.
AntennaSignal propagate(const ChannelRealization& h, const AntennaSignal& x,
                        RandomStream* noise);
/// Same, with the noise stream keyed by `noise_seed` when present.
AntennaSignal propagate(const ChannelRealization& h, const AntennaSignal& x,
                        std::optional<std::uint64_t> noise_seed);

/// Variance of a symbol uniform on (-Q, Q): (Q-1) Q / 3.
double symbol_variance(int symbol_range);

/// Expected E[X_km^2] for i.i.d. uniform symbols.
double expected_transmit_power(const TransmitPlan& plan,
                               const ChannelRealization& h, int symbol_range,
                               double amplitude, int k, int m);

/// Largest common amplitude A keeping every antenna at or below rho/(K M)
/// average power.
double amplitude_for_power(const TransmitPlan& plan,
                           const ChannelRealization& h, int symbol_range,
                           double power);

/// Received constellation of one antenna in the coordinates of its distinct
/// directions: desired directions carry one symbol in (-Q, Q); each
/// interference direction carries the aggregate of all symbols aligned onto
/// it, bounded by (number of contributors) * (Q - 1).
struct AntennaConstellation {
  int user = 1;
  int rx_ant = 1;
  std::vector<double> desired_values;
  std::vector<StreamId> desired_streams;
  std::vector<std::size_t> desired_indices;
  std::vector<double> interference_values;
  std::vector<std::int64_t> interference_bounds;
  int symbol_range = 2;
  std::size_t non_unit_directions = 0;

  std::size_t direction_count() const {
    return desired_values.size() + interference_values.size();
  }
  /// Number of candidate points (saturates at UINT64_MAX).
  std::uint64_t point_count() const;
};

AntennaConstellation build_constellation(const TransmitPlan& plan,
                                         const ChannelRealization& h, int k,
                                         int n, int symbol_range);

class DecodeBudgetExceeded : public std::runtime_error {
 public:
  DecodeBudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

/// Exhaustive nearest-point decoder over the joint box of desired symbols and
/// interference aggregates (unit amplitude; callers divide by A).
class AntennaDecoder {
 public:
  explicit AntennaDecoder(AntennaConstellation constellation,
                          std::uint64_t budget = kDefaultDecodeBudget);

  /// Desired symbols of the nearest point to y, in constellation order. Ties
  /// go to the lexicographically smallest symbol vector.
  std::vector<std::int32_t> decode(double y) const;

  /// Minimum distance between points whose desired symbols differ.
  double min_distance() const;

  const AntennaConstellation& constellation() const { return constellation_; }
  std::size_t size() const { return points_.size(); }

 private:
  struct Point {
    double value;
    std::uint64_t code;  // mixed radix, desired digits most significant
  };

  std::uint64_t desired_label(std::uint64_t code) const {
    return code / interference_radix_;
  }

  AntennaConstellation constellation_;
  std::vector<Point> points_;
  std::uint64_t interference_radix_ = 1;
};

/// d_min at antenna (k, n) for amplitude A. Requires at most
/// kMaxDirectionsPerAntenna distinct directions and a point count within
/// `budget`.
double min_distance(const TransmitPlan& plan, const ChannelRealization& h,
                    int k, int n, int symbol_range, double amplitude,
                    std::uint64_t budget = kDefaultDecodeBudget);

struct SeparationFit {
  std::vector<int> q_values;
  std::vector<double> d_min;
  double slope = 0.0;        // least squares of log d_min against log Q
  double floor = 0.0;        // -(non-unit directions + epsilon)
  std::size_t directions = 0;
  bool finite() const;
};

SeparationFit separation_exponent(const TransmitPlan& plan,
                                  const ChannelRealization& h, int k, int n,
                                  const std::vector<int>& q_values,
                                  double epsilon = 0.1,
                                  std::uint64_t budget = kDefaultDecodeBudget);

struct SimConfig {
  std::vector<double> snr_points;
  int trials = 1000;
  double epsilon = 0.1;
  bool noiseless = false;
  std::uint64_t decode_budget = kDefaultDecodeBudget;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
  std::vector<int> separation_q;  // optional slope probe at antenna (1, 1)

  void validate() const;
};

struct SerPoint {
  double rho = 0.0;
  double amplitude = 0.0;
  double ser = 0.0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t symbols = 0;
  int trials = 0;
};

struct SimResult {
  SystemConfig config;
  std::size_t cap = 0;
  double d_min = 0.0;  // smallest per-antenna d_min at unit amplitude
  std::vector<double> d_min_per_antenna;
  std::vector<SerPoint> ser;
  std::optional<SeparationFit> separation;
  std::size_t streams_per_antenna = 0;
  double decoded_rate = 0.0;
};

/// Builds the plan, truncates it to `cap` directions per stream, draws the
/// channel from config.seed and runs `trials` transmissions per SNR point.
/// Messages and noise of trial t are keyed by (seed, t), so every SNR point
/// sees the same draws.
SimResult run_link_sim(const SystemConfig& config, const SimConfig& sim,
                       std::size_t cap);

/// Same on a caller-supplied plan and channel.
SimResult run_link_sim(const TransmitPlan& plan, const ChannelRealization& h,
                       const SimConfig& sim);

}  // namespace iadof
