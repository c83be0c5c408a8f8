#pragma once

#include <ostream>

#include "json.hpp"

#include "iadof/alignment.hpp"
#include "iadof/channel_model.hpp"
#include "iadof/dof_bounds.hpp"
#include "iadof/link_sim.hpp"

namespace iadof {

inline constexpr const char* kSchema = "ia-dof/1";

/// {"K","M","N","seed","gains":[{"k","j","n","m","v"},...]}
nlohmann::json channel_to_json(const ChannelRealization& h);
/// Inverse of channel_to_json; every coefficient must appear exactly once.
ChannelRealization channel_from_json(const nlohmann::json& j);

/// {"num","den","text","decimal"} with num/den as decimal strings.
nlohmann::json rational_to_json(const Rational& r);

nlohmann::json dof_report_to_json(const DofReport& r);
nlohmann::json alignment_report_to_json(const AlignmentReport& r);
nlohmann::json sim_result_to_json(const SimResult& r);

/// Header K,achievable_total,upper_total,upper_per_user,gj_ach,gj_upper,regime
/// followed by upper_per_user_decimal; one row per K in [k_min, k_max].
void write_sweep_csv(std::ostream& out, int M, int N, int k_min, int k_max);

/// Header rho,ser,trials.
void write_ser_csv(std::ostream& out, const SimResult& r);

/// Locale-independent %.{digits}g rendering.
std::string format_double(double v, int significant_digits = 12);

}  // namespace iadof
