#include "gbcfb/model.hpp"

#include <utility>

namespace gbcfb {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::non_positive_variance: return "NonPositiveVariance";
    case Errc::non_positive_power: return "NonPositivePower";
    case Errc::non_finite_forward_variance: return "NonFiniteForwardVariance";
    case Errc::theta_out_of_range: return "ThetaOutOfRange";
    case Errc::theta_zero: return "ThetaZero";
    case Errc::r1_infeasible: return "R1Infeasible";
    case Errc::negative_effective_variance: return "NegativeEffectiveVariance";
    case Errc::epsilon_out_of_range: return "EpsilonOutOfRange";
    case Errc::non_positive_x: return "NonPositiveX";
    case Errc::invalid_budget: return "InvalidBudget";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

const char* verdict_name(Verdict v) noexcept {
  return v == Verdict::unchanged ? "unchanged" : "enlarged";
}

const ChannelParams& validate(const ChannelParams& params) {
  const auto require_forward = [](double v, const char* name) {
    if (!(v > 0.0))
      throw Error(Errc::non_positive_variance,
                  std::string(name) + " must be strictly positive");
    if (!std::isfinite(v))
      throw Error(Errc::non_finite_forward_variance,
                  std::string(name) + " must be finite");
  };
  const auto require_feedback = [](double v, const char* name) {
    // +inf is a first-class value here (absent feedback link).
    if (!(v > 0.0))
      throw Error(Errc::non_positive_variance,
                  std::string(name) + " must be strictly positive or +inf");
  };

  require_forward(params.sigma1_sq, "sigma1_sq");
  require_forward(params.sigma2_sq, "sigma2_sq");
  require_feedback(params.sigma_fb1_sq, "sigma_fb1_sq");
  require_feedback(params.sigma_fb2_sq, "sigma_fb2_sq");

  if (!(params.power > 0.0) || !std::isfinite(params.power))
    throw Error(Errc::non_positive_power,
                "power must be a positive finite real");

  return params;
}

Canonical canonicalize(const ChannelParams& params) {
  if (params.sigma1_sq > params.sigma2_sq) {
    ChannelParams swapped = params;
    std::swap(swapped.sigma1_sq, swapped.sigma2_sq);
    std::swap(swapped.sigma_fb1_sq, swapped.sigma_fb2_sq);
    return {swapped, true};
  }
  return {params, false};
}

} // namespace gbcfb
