#include "iadof/serialize.hpp"

#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>

namespace iadof {

using nlohmann::json;

std::string format_double(double v, int significant_digits) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(significant_digits) << v;
  return out.str();
}

json channel_to_json(const ChannelRealization& h) {
  json gains = json::array();
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto id = h.id_at(i);
    gains.push_back({{"k", id.rx_user},
                     {"j", id.tx_user},
                     {"n", id.rx_ant},
                     {"m", id.tx_ant},
                     {"v", h.gains()[i]}});
  }
  return {{"K", h.users()},
          {"M", h.tx_antennas()},
          {"N", h.rx_antennas()},
          {"seed", h.seed()},
          {"gains", std::move(gains)}};
}

ChannelRealization channel_from_json(const json& j) {
  const int K = j.at("K").get<int>();
  const int M = j.at("M").get<int>();
  const int N = j.at("N").get<int>();
  if (K < 1 || M < 1 || N < 1 || K > kMaxDimension || M > kMaxDimension ||
      N > kMaxDimension)
    throw std::invalid_argument("channel dimensions out of range");
  const auto seed = j.at("seed").get<std::uint64_t>();
  const auto count = std::size_t(K) * K * N * M;
  const auto& entries = j.at("gains");
  if (entries.size() != count)
    throw std::invalid_argument("channel JSON has " +
                                std::to_string(entries.size()) +
                                " gains, expected " + std::to_string(count));

  std::vector<double> gains(count, 0.0);
  std::vector<bool> seen(count, false);
  for (const auto& e : entries) {
    const int k = e.at("k").get<int>();
    const int jj = e.at("j").get<int>();
    const int n = e.at("n").get<int>();
    const int m = e.at("m").get<int>();
    if (k < 1 || k > K || jj < 1 || jj > K || n < 1 || n > N || m < 1 || m > M)
      throw std::invalid_argument("channel JSON index out of range");
    const auto idx = ((std::size_t(k - 1) * K + std::size_t(jj - 1)) * N +
                      std::size_t(n - 1)) *
                         M +
                     std::size_t(m - 1);
    if (seen[idx]) throw std::invalid_argument("duplicate gain in channel JSON");
    seen[idx] = true;
    gains[idx] = e.at("v").get<double>();
  }
  return ChannelRealization(K, M, N, seed, std::move(gains));
}

json rational_to_json(const Rational& r) {
  return {{"num", boost::multiprecision::numerator(r).str()},
          {"den", boost::multiprecision::denominator(r).str()},
          {"text", to_string(r)},
          {"decimal", to_decimal(r)}};
}

json dof_report_to_json(const DofReport& r) {
  const auto& w = r.upper.witness;
  json witness = {{"L1", w.l1},
                  {"L2", w.l2},
                  {"L_min", w.l_min},
                  {"L_max", w.l_max},
                  {"mu", w.mu ? json(*w.mu) : json(nullptr)},
                  {"sign", std::string(to_string(w.sign))},
                  {"bound", rational_to_json(w.bound)}};
  return {{"schema", kSchema},
          {"M", r.tx_antennas},
          {"N", r.rx_antennas},
          {"K", r.users},
          {"regime", std::string(to_string(r.regime))},
          {"achievable", rational_to_json(r.achievable)},
          {"achievable_per_user", rational_to_json(r.achievable_per_user())},
          {"upper", rational_to_json(r.upper.value)},
          {"upper_per_user", rational_to_json(r.upper_per_user())},
          {"witness", std::move(witness)},
          {"gj_achievable", rational_to_json(r.reference.achievable)},
          {"gj_upper", rational_to_json(r.reference.upper)}};
}

json alignment_report_to_json(const AlignmentReport& r) {
  json antennas = json::array();
  for (const auto& a : r.per_antenna) {
    json checks = {
        {"desired_pairwise_disjoint", a.desired_pairwise_disjoint},
        {"desired_disjoint_from_interference",
         a.desired_disjoint_from_interference},
        {"interference_within_reference", a.interference_within_reference},
        {"interference_within_closed_form", a.interference_within_closed_form},
        {"stream_count_matches", a.stream_count_matches
                                     ? json(*a.stream_count_matches)
                                     : json(nullptr)}};
    antennas.push_back({{"k", a.user},
                        {"n", a.rx_ant},
                        {"L_observed", a.stream_count_observed},
                        {"L_total", a.desired_count},
                        {"L_prime_observed", a.interference_count},
                        {"m_star", a.distinct_count},
                        {"checks", std::move(checks)},
                        {"pass", a.pass()}});
  }
  return {{"schema", kSchema},
          {"config",
           {{"K", r.config.users},
            {"M", r.config.tx_antennas},
            {"N", r.config.rx_antennas},
            {"gamma", r.config.gamma}}},
          {"closed_form",
           {{"L", r.closed_form.per_stream.str()},
            {"L_prime", r.closed_form.interference.str()}}},
          {"truncation_cap",
           r.truncation_cap ? json(*r.truncation_cap) : json(nullptr)},
          {"per_antenna", std::move(antennas)},
          {"pass", r.pass}};
}

json sim_result_to_json(const SimResult& r) {
  json points = json::array();
  for (const auto& p : r.ser)
    points.push_back({{"rho", p.rho},
                      {"amplitude", p.amplitude},
                      {"ser", p.ser},
                      {"symbol_errors", p.symbol_errors},
                      {"symbols", p.symbols},
                      {"trials", p.trials}});
  json out = {{"schema", kSchema},
              {"config",
               {{"K", r.config.users},
                {"M", r.config.tx_antennas},
                {"N", r.config.rx_antennas},
                {"gamma", r.config.gamma},
                {"Q", r.config.symbol_range},
                {"seed", r.config.seed}}},
              {"cap", r.cap},
              {"d_min", r.d_min},
              {"d_min_per_antenna", r.d_min_per_antenna},
              {"ser", std::move(points)},
              {"streams_per_antenna", r.streams_per_antenna},
              {"decoded_rate", r.decoded_rate}};
  if (r.separation) {
    const auto& s = *r.separation;
    out["separation"] = {{"q", s.q_values},
                         {"d_min", s.d_min},
                         {"slope", s.finite() ? json(s.slope) : json(nullptr)},
                         {"floor", s.floor},
                         {"directions", s.directions}};
  }
  return out;
}

void write_sweep_csv(std::ostream& out, int M, int N, int k_min, int k_max) {
  out << "K,achievable_total,upper_total,upper_per_user,gj_ach,gj_upper,regime,"
         "upper_per_user_decimal\n";
  for (int K = k_min; K <= k_max; ++K) {
    const auto r = dof_report(M, N, K);
    out << K << ',' << to_string(r.achievable) << ','
        << to_string(r.upper.value) << ',' << to_string(r.upper_per_user())
        << ',' << to_string(r.reference.achievable) << ','
        << to_string(r.reference.upper) << ',' << to_string(r.regime) << ','
        << to_decimal(r.upper_per_user()) << '\n';
  }
}

void write_ser_csv(std::ostream& out, const SimResult& r) {
  out << "rho,ser,trials\n";
  for (const auto& p : r.ser)
    out << format_double(p.rho) << ',' << format_double(p.ser) << ','
        << p.trials << '\n';
}

}  // namespace iadof
