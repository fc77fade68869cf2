#include "gbcfb/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

namespace gbcfb {

using nlohmann::json;

double parse_real_or_inf(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "inf") return std::numeric_limits<double>::infinity();
  std::size_t consumed = 0;
  double value;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, "not a number: '" + text + "'");
  }
  if (consumed != text.size() || !std::isfinite(value))
    throw Error(Errc::invalid_argument,
                "not a finite number or 'inf': '" + text + "'");
  return value;
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json json_real(double value) {
  if (std::isfinite(value)) return value;
  return value > 0 ? "inf" : "-inf";
}

json to_json(const ChannelParams& params) {
  return json{{"sigma1_sq", params.sigma1_sq},
              {"sigma2_sq", params.sigma2_sq},
              {"sigma_fb1_sq", json_real(params.sigma_fb1_sq)},
              {"sigma_fb2_sq", json_real(params.sigma_fb2_sq)},
              {"power", params.power}};
}

namespace {

double real_field(const json& j, const char* key) {
  if (!j.contains(key))
    throw Error(Errc::invalid_argument,
                std::string("missing field: ") + key);
  const json& v = j.at(key);
  if (v.is_string()) return parse_real_or_inf(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw Error(Errc::invalid_argument,
              std::string("field must be a number or 'inf': ") + key);
}

} // namespace

ChannelParams channel_params_from_json(const json& j) {
  if (!j.is_object())
    throw Error(Errc::invalid_argument, "channel config must be an object");
  ChannelParams params{real_field(j, "sigma1_sq"), real_field(j, "sigma2_sq"),
                       real_field(j, "sigma_fb1_sq"),
                       real_field(j, "sigma_fb2_sq"), real_field(j, "power")};
  return validate(params);
}

json to_json(const RatePair& rates) {
  return json{{"r1_bits", rates.r1}, {"r2_bits", rates.r2}};
}

json to_json(const SchemeParams& scheme) {
  return json{{"theta_prime", scheme.theta_prime},
              {"gamma1", scheme.gamma1},
              {"gamma2", scheme.gamma2}};
}

json to_json(const Classification& c) {
  return json{{"verdict", verdict_name(c.verdict)},
              {"margin", json_real(c.margin)}};
}

json to_json(const LowPowerCertificate& cert) {
  return json{{"theta", cert.theta},
              {"a1", cert.a1},
              {"a2", cert.a2},
              {"mu", cert.mu},
              {"g_at_xstar", cert.g_at_xstar},
              {"x_star", cert.x_star},
              {"feasible", cert.feasible}};
}

json to_json(const EnlargementWitness& w) {
  return json{{"epsilon", w.epsilon},
              {"scheme", to_json(w.scheme)},
              {"rates", to_json(w.rates)},
              {"excess", w.excess}};
}

json to_json(const SimReport& report) {
  return json{{"n_blocks", report.n_blocks},
              {"seed", report.seed},
              {"emp_var_s1", report.emp_var_s1},
              {"emp_var_s2", report.emp_var_s2},
              {"emp_power_odd", report.emp_power_odd},
              {"emp_power_even", report.emp_power_even},
              {"emp_cross1", report.emp_cross1},
              {"emp_cross2", report.emp_cross2},
              {"emp_zf_cross1", report.emp_zf_cross1},
              {"emp_zf_cross2", report.emp_zf_cross2}};
}

std::string boundary_csv(const std::vector<BoundarySample>& samples) {
  std::string out = "theta,r1_bits,r2_bits\n";
  for (const BoundarySample& s : samples) {
    out += format_real(s.theta);
    out += ',';
    out += format_real(s.rates.r1);
    out += ',';
    out += format_real(s.rates.r2);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const SweepGrid& grid) {
  std::string out = "x,y,verdict,margin\n";
  for (std::size_t iy = 0; iy < grid.y_values.size(); ++iy) {
    for (std::size_t ix = 0; ix < grid.x_values.size(); ++ix) {
      const Classification& c = grid.at(iy, ix);
      out += format_real(grid.x_values[ix]);
      out += ',';
      out += format_real(grid.y_values[iy]);
      out += ',';
      out += verdict_name(c.verdict);
      out += ',';
      out += format_real(c.margin);
      out += '\n';
    }
  }
  return out;
}

} // namespace gbcfb
