#pragma once

#include <string>

#include <json.hpp>

#include "gbcfb/classifier.hpp"
#include "gbcfb/lowpower.hpp"
#include "gbcfb/model.hpp"
#include "gbcfb/montecarlo.hpp"
#include "gbcfb/regions.hpp"
#include "gbcfb/search.hpp"
#include "gbcfb/zf_scheme.hpp"

namespace gbcfb {

/// Parses a variance value; "inf" (case-insensitive) is the only accepted
/// infinity spelling, everything else must be a plain finite number.
double parse_real_or_inf(const std::string& text);

/// %.17g rendering: '.' decimal separator, round-trippable doubles.
std::string format_real(double value);

/// Numeric JSON value that survives infinities: non-finite doubles are
/// emitted as the strings "inf"/"-inf" instead of null.
nlohmann::json json_real(double value);

nlohmann::json to_json(const ChannelParams& params);
ChannelParams channel_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RatePair& rates);
nlohmann::json to_json(const SchemeParams& scheme);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const LowPowerCertificate& cert);
nlohmann::json to_json(const EnlargementWitness& w);
nlohmann::json to_json(const SimReport& report);

std::string boundary_csv(const std::vector<BoundarySample>& samples);
std::string sweep_csv(const SweepGrid& grid);

} // namespace gbcfb
