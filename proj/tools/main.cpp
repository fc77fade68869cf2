#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gbcfb/io.hpp"

namespace {

using gbcfb::ChannelParams;
using nlohmann::json;

struct ChannelOpts {
  std::string sigma1, sigma2, fb1, fb2, power;
  std::string config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--sigma1-sq", sigma1, "Forward noise variance, receiver 1");
    cmd->add_option("--sigma2-sq", sigma2, "Forward noise variance, receiver 2");
    cmd->add_option("--sigma-fb1-sq", fb1,
                    "Feedback noise variance from receiver 1 ('inf' = none)");
    cmd->add_option("--sigma-fb2-sq", fb2,
                    "Feedback noise variance from receiver 2 ('inf' = none)");
    cmd->add_option("--power", power, "Average transmit power P");
    cmd->add_option("--config", config,
                    "JSON file with the channel parameters; flags override")
        ->check(CLI::ExistingFile);
  }

  ChannelParams resolve() const {
    std::optional<ChannelParams> base;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in)
        throw gbcfb::Error(gbcfb::Errc::invalid_argument,
                           "cannot open config file: " + config);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw gbcfb::Error(gbcfb::Errc::invalid_argument,
                           std::string("config is not valid JSON: ") + e.what());
      }
      base = gbcfb::channel_params_from_json(j);
    }
    ChannelParams params = base.value_or(ChannelParams{0, 0, 0, 0, 0});
    const auto apply = [&](const std::string& text, double& field,
                           const char* name) {
      if (!text.empty())
        field = gbcfb::parse_real_or_inf(text);
      else if (!base)
        throw gbcfb::Error(gbcfb::Errc::invalid_argument,
                           std::string("missing --") + name +
                               " (and no --config given)");
    };
    apply(sigma1, params.sigma1_sq, "sigma1-sq");
    apply(sigma2, params.sigma2_sq, "sigma2-sq");
    apply(fb1, params.sigma_fb1_sq, "sigma-fb1-sq");
    apply(fb2, params.sigma_fb2_sq, "sigma-fb2-sq");
    apply(power, params.power, "power");
    return gbcfb::validate(params);
  }
};

struct OutputOpts {
  std::string format;
  std::string path = "stdout";

  void attach(CLI::App* cmd, const std::string& default_format) {
    format = default_format;
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", path, "Output file path, or 'stdout'");
  }

  void write(const std::string& payload) const {
    if (path == "stdout" || path == "-") {
      std::cout << payload;
      return;
    }
    std::ofstream out(path);
    if (!out)
      throw gbcfb::Error(gbcfb::Errc::invalid_argument,
                         "cannot open output file: " + path);
    out << payload;
  }
};

void flatten(const json& j, const std::string& prefix, json& flat) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object())
      flatten(value, name, flat);
    else
      flat[name] = value;
  }
}

std::string scalar_csv(const json& j) {
  json flat(json::value_t::object);
  flatten(j, "", flat);
  std::string header, row;
  for (const auto& [key, value] : flat.items()) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += key;
    if (value.is_number_float())
      row += gbcfb::format_real(value.get<double>());
    else if (value.is_string())
      row += value.get<std::string>();
    else
      row += value.dump();
  }
  return header + "\n" + row + "\n";
}

std::string render(const json& j, const OutputOpts& out) {
  if (out.format == "csv") return scalar_csv(j);
  return j.dump() + "\n";
}

std::string rows_json(const std::vector<gbcfb::BoundarySample>& samples) {
  json rows = json::array();
  for (const auto& s : samples)
    rows.push_back(json{{"theta", s.theta},
                        {"r1_bits", s.rates.r1},
                        {"r2_bits", s.rates.r2}});
  return rows.dump() + "\n";
}

std::string sweep_json(const gbcfb::SweepGrid& grid) {
  json rows = json::array();
  for (std::size_t iy = 0; iy < grid.y_values.size(); ++iy)
    for (std::size_t ix = 0; ix < grid.x_values.size(); ++ix) {
      const gbcfb::Classification& c = grid.at(iy, ix);
      rows.push_back(json{{"x", grid.x_values[ix]},
                          {"y", grid.y_values[iy]},
                          {"verdict", gbcfb::verdict_name(c.verdict)},
                          {"margin", gbcfb::json_real(c.margin)}});
    }
  return rows.dump() + "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian broadcast channel with passive noisy feedback: "
               "capacity thresholds, region boundaries, zero-forcing scheme "
               "evaluation and validation"};
  app.require_subcommand(1);

  auto* classify_cmd =
      app.add_subcommand("classify", "Does feedback enlarge the capacity region?");
  ChannelOpts classify_ch;
  classify_ch.attach(classify_cmd);
  OutputOpts classify_out;
  classify_out.attach(classify_cmd, "json");

  auto* boundary_cmd =
      app.add_subcommand("boundary", "Sample a capacity-region boundary");
  ChannelOpts boundary_ch;
  boundary_ch.attach(boundary_cmd);
  OutputOpts boundary_out;
  boundary_out.attach(boundary_cmd, "csv");
  std::string boundary_kind = "nofb";
  int boundary_samples = 101;
  boundary_cmd->add_option("--kind", boundary_kind, "Region kind")
      ->check(CLI::IsMember({"nofb", "weakfb"}));
  boundary_cmd->add_option("--samples", boundary_samples, "Sample count (>= 2)");

  auto* scheme_cmd = app.add_subcommand(
      "scheme", "Evaluate the zero-forcing linear feedback scheme");
  ChannelOpts scheme_ch;
  scheme_ch.attach(scheme_cmd);
  OutputOpts scheme_out;
  scheme_out.attach(scheme_cmd, "json");
  gbcfb::SchemeParams scheme_knobs{0.5, 0.0, 0.0};
  scheme_cmd->add_option("--theta-prime", scheme_knobs.theta_prime,
                         "Power split between the two codebooks");
  scheme_cmd->add_option("--gamma1", scheme_knobs.gamma1,
                         "Feedback weight for receiver 1's noise estimate");
  scheme_cmd->add_option("--gamma2", scheme_knobs.gamma2,
                         "Feedback weight for receiver 2's noise estimate");

  auto* certify_cmd = app.add_subcommand(
      "certify-lowpower", "Low-power enlargement certificate");
  ChannelOpts certify_ch;
  certify_ch.attach(certify_cmd);
  OutputOpts certify_out;
  certify_out.attach(certify_cmd, "json");

  auto* search_cmd = app.add_subcommand(
      "search", "Search for a rate pair outside the no-feedback region");
  ChannelOpts search_ch;
  search_ch.attach(search_cmd);
  OutputOpts search_out;
  search_out.attach(search_cmd, "json");
  gbcfb::SearchBudget budget;
  search_cmd->add_option("--eps-levels", budget.eps_levels,
                         "Geometric epsilon grid depth");
  search_cmd->add_option("--multistarts", budget.multistarts,
                         "Refinement starts per epsilon level");
  search_cmd->add_option("--refine-iters", budget.refine_iters,
                         "Nelder-Mead iterations per start");

  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Symbol-level Monte Carlo run of the zero-forcing scheme");
  ChannelOpts simulate_ch;
  simulate_ch.attach(simulate_cmd);
  OutputOpts simulate_out;
  simulate_out.attach(simulate_cmd, "json");
  gbcfb::SchemeParams simulate_knobs{0.5, 0.0, 0.0};
  std::uint64_t blocks = 1000000;
  std::uint64_t seed = 0;
  simulate_cmd->add_option("--blocks", blocks, "Number of two-slot blocks");
  simulate_cmd->add_option("--seed", seed, "RNG seed (echoed in the report)")
      ->required();
  simulate_cmd->add_option("--theta-prime", simulate_knobs.theta_prime,
                           "Power split between the two codebooks");
  simulate_cmd->add_option("--gamma1", simulate_knobs.gamma1,
                           "Feedback weight for receiver 1's noise estimate");
  simulate_cmd->add_option("--gamma2", simulate_knobs.gamma2,
                           "Feedback weight for receiver 2's noise estimate");

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Regime map for one-sided feedback from receiver 1");
  OutputOpts sweep_out;
  sweep_out.attach(sweep_cmd, "csv");
  double x_max = 5.2, y_max = 5.2;
  int resolution = 200;
  sweep_cmd->add_option("--x-max", x_max, "Upper end of sigma1_sq/sigma_fb1_sq");
  sweep_cmd->add_option("--y-max", y_max, "Upper end of sigma2_sq/sigma_fb1_sq");
  sweep_cmd->add_option("--resolution", resolution, "Grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (classify_cmd->parsed()) {
      const auto result = gbcfb::classify(classify_ch.resolve());
      classify_out.write(render(gbcfb::to_json(result), classify_out));
    } else if (boundary_cmd->parsed()) {
      const auto kind = boundary_kind == "nofb"
                            ? gbcfb::RegionKind::no_feedback
                            : gbcfb::RegionKind::weak_feedback;
      const auto samples =
          gbcfb::sample_boundary(boundary_ch.resolve(), kind, boundary_samples);
      boundary_out.write(boundary_out.format == "csv"
                             ? gbcfb::boundary_csv(samples)
                             : rows_json(samples));
    } else if (scheme_cmd->parsed()) {
      const ChannelParams params = scheme_ch.resolve();
      const auto derived = gbcfb::derive_scheme(params, scheme_knobs);
      const auto rates = gbcfb::scheme_rates(params, scheme_knobs);
      const auto excess = gbcfb::excess_rate(params, rates);
      json j{{"alpha", derived.alpha},
             {"hat_sigma1_sq", derived.hat_sigma1_sq},
             {"hat_sigma2_sq", derived.hat_sigma2_sq},
             {"eff_var1", derived.eff_var1},
             {"eff_var2", derived.eff_var2},
             {"r1_bits", rates.r1},
             {"r2_bits", rates.r2},
             {"excess_rate", excess ? json(*excess) : json(nullptr)}};
      scheme_out.write(render(j, scheme_out));
    } else if (certify_cmd->parsed()) {
      const auto cert = gbcfb::certify_lowpower(certify_ch.resolve());
      certify_out.write(render(gbcfb::to_json(cert), certify_out));
    } else if (search_cmd->parsed()) {
      const auto result = gbcfb::search_enlargement(search_ch.resolve(), budget);
      json j;
      if (result.witness) {
        j = gbcfb::to_json(*result.witness);
        j["found"] = true;
      } else {
        j = json{{"found", false}, {"best_excess", result.best_excess}};
      }
      search_out.write(render(j, search_out));
    } else if (simulate_cmd->parsed()) {
      const auto report =
          gbcfb::simulate(simulate_ch.resolve(), simulate_knobs, blocks, seed);
      simulate_out.write(render(gbcfb::to_json(report), simulate_out));
    } else if (sweep_cmd->parsed()) {
      const auto grid = gbcfb::sweep_onesided_rx1(x_max, y_max, resolution);
      sweep_out.write(sweep_out.format == "csv" ? gbcfb::sweep_csv(grid)
                                                : sweep_json(grid));
    }
  } catch (const gbcfb::Error& e) {
    std::cerr << "error (" << gbcfb::errc_name(e.code()) << "): " << e.what()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
