#include "iadof/channel_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "iadof/random.hpp"

namespace iadof {

void SystemConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(users >= 1 && users <= kMaxDimension, "user count must be in [1, 255]");
  require(tx_antennas >= 1 && tx_antennas <= kMaxDimension,
          "transmit antenna count must be in [1, 255]");
  require(rx_antennas >= 1 && rx_antennas <= kMaxDimension,
          "receive antenna count must be in [1, 255]");
  require(gamma >= 1, "gamma must be >= 1");
  require(symbol_range >= 2, "symbol range Q must be >= 2");
  require(std::isfinite(power) && power > 0.0, "power must be positive");
}

ChannelRealization::ChannelRealization(int users, int tx_antennas,
                                       int rx_antennas, std::uint64_t seed,
                                       std::vector<double> gains)
    : users_(users),
      tx_(tx_antennas),
      rx_(rx_antennas),
      seed_(seed),
      gains_(std::move(gains)) {
  if (users < 1 || tx_antennas < 1 || rx_antennas < 1 ||
      users > kMaxDimension || tx_antennas > kMaxDimension ||
      rx_antennas > kMaxDimension)
    throw std::invalid_argument("channel dimensions out of range");
  const auto expected = std::size_t(users) * std::size_t(users) *
                        std::size_t(rx_antennas) * std::size_t(tx_antennas);
  if (gains_.size() != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) +
                                " gains, got " +
                                std::to_string(gains_.size()));
  for (double g : gains_)
    if (!std::isfinite(g) || g == 0.0)
      throw std::invalid_argument("channel gains must be finite and nonzero");
}

std::size_t ChannelRealization::index(int k, int j, int n, int m) const {
  if (k < 1 || k > users_ || j < 1 || j > users_ || n < 1 || n > rx_ ||
      m < 1 || m > tx_)
    throw std::out_of_range("channel coefficient index out of range: H[" +
                            std::to_string(k) + "," + std::to_string(j) +
                            "](" + std::to_string(n) + "," +
                            std::to_string(m) + ")");
  return ((std::size_t(k - 1) * users_ + std::size_t(j - 1)) * rx_ +
          std::size_t(n - 1)) *
             tx_ +
         std::size_t(m - 1);
}

double ChannelRealization::coefficient(int k, int j, int n, int m) const {
  return gains_[index(k, j, n, m)];
}

bool ChannelRealization::contains(const CoefficientId& id) const {
  return id.rx_user >= 1 && id.rx_user <= users_ && id.tx_user >= 1 &&
         id.tx_user <= users_ && id.rx_ant >= 1 && id.rx_ant <= rx_ &&
         id.tx_ant >= 1 && id.tx_ant <= tx_;
}

CoefficientId ChannelRealization::id_at(std::size_t i) const {
  if (i >= gains_.size()) throw std::out_of_range("gain index out of range");
  CoefficientId id;
  id.tx_ant = int(i % tx_) + 1;
  i /= tx_;
  id.rx_ant = int(i % rx_) + 1;
  i /= rx_;
  id.tx_user = int(i % users_) + 1;
  id.rx_user = int(i / users_) + 1;
  return id;
}

ChannelRealization generate_channel(const SystemConfig& config) {
  config.validate();
  const auto count = std::size_t(config.users) * config.users *
                     config.rx_antennas * config.tx_antennas;
  RandomStream rng(config.seed);
  std::vector<double> gains(count);
  for (auto& g : gains) g = rng.uniform(0.5, 1.5);
  return ChannelRealization(config.users, config.tx_antennas,
                            config.rx_antennas, config.seed, std::move(gains));
}

}  // namespace iadof
