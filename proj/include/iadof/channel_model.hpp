#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace iadof {

/// Parameters of a K-user M x N constant real MIMO interference channel
/// together with the alignment and signalling knobs used by the achievable
/// scheme.
struct SystemConfig {
  int users = 1;          // K
  int tx_antennas = 1;    // M, per transmitter
  int rx_antennas = 1;    // N, per receiver
  int gamma = 1;          // exponent range of the alignment directions
  int symbol_range = 2;   // Q: symbols live in (-Q, Q)
  double power = 1.0;     // total transmit power rho
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when a field is outside its domain.
  void validate() const;
};

/// Index of one real channel gain H_kj(n,m): gain from antenna m of
/// transmitter j to antenna n of receiver k. All indices are 1-based.
struct CoefficientId {
  int rx_user = 1;
  int tx_user = 1;
  int rx_ant = 1;
  int tx_ant = 1;

  // Packing keeps the lexicographic (k, j, n, m) order on the integer key.
  constexpr std::uint32_t key() const {
    return (std::uint32_t(rx_user) << 24) | (std::uint32_t(tx_user) << 16) |
           (std::uint32_t(rx_ant) << 8) | std::uint32_t(tx_ant);
  }
  static constexpr CoefficientId from_key(std::uint32_t key) {
    return {int(key >> 24), int((key >> 16) & 0xff), int((key >> 8) & 0xff),
            int(key & 0xff)};
  }

  friend constexpr auto operator<=>(const CoefficientId&,
                                    const CoefficientId&) = default;
};

/// Upper limit on K, M and N imposed by the packed coefficient key.
inline constexpr int kMaxDimension = 255;

/// One fixed realization of all K^2 N M channel gains. Immutable.
class ChannelRealization {
 public:
  /// Builds a realization from gains listed in lexicographic (k, j, n, m)
  /// order. Every gain must be finite and nonzero.
  ChannelRealization(int users, int tx_antennas, int rx_antennas,
                     std::uint64_t seed, std::vector<double> gains);

  int users() const { return users_; }
  int tx_antennas() const { return tx_; }
  int rx_antennas() const { return rx_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return gains_.size(); }

  /// H_kj(n,m). Throws std::out_of_range on an invalid index.
  double coefficient(int k, int j, int n, int m) const;
  double coefficient(const CoefficientId& id) const {
    return coefficient(id.rx_user, id.tx_user, id.rx_ant, id.tx_ant);
  }
  bool contains(const CoefficientId& id) const;

  /// Identifier of the i-th stored gain (lexicographic order).
  CoefficientId id_at(std::size_t i) const;
  const std::vector<double>& gains() const { return gains_; }

  friend bool operator==(const ChannelRealization&,
                         const ChannelRealization&) = default;

 private:
  std::size_t index(int k, int j, int n, int m) const;

  int users_;
  int tx_;
  int rx_;
  std::uint64_t seed_;
  std::vector<double> gains_;
};

/// Draws every gain i.i.d. uniform on [0.5, 1.5] from a generator seeded with
/// config.seed. Bit-for-bit reproducible for a fixed seed.
ChannelRealization generate_channel(const SystemConfig& config);

}  // namespace iadof
