#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gbcfb {

enum class Errc {
  non_positive_variance,
  non_positive_power,
  non_finite_forward_variance,
  theta_out_of_range,
  theta_zero,
  r1_infeasible,
  negative_effective_variance,
  epsilon_out_of_range,
  non_positive_x,
  invalid_budget,
  invalid_argument,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

/// Two-receiver scalar Gaussian broadcast channel with passive noisy
/// feedback. Forward noise variances are finite and positive; a feedback
/// variance of +infinity means the corresponding feedback link is absent.
/// All rates downstream are in bits per channel use (base-2 logs).
struct ChannelParams {
  double sigma1_sq;    // forward noise variance at receiver 1
  double sigma2_sq;    // forward noise variance at receiver 2
  double sigma_fb1_sq; // feedback noise variance from receiver 1, may be +inf
  double sigma_fb2_sq; // feedback noise variance from receiver 2, may be +inf
  double power;        // average transmit power P
};

/// Nonnegative rate pair in bits per channel use.
struct RatePair {
  double r1;
  double r2;
};

/// Knobs of the two-phase zero-forcing linear feedback scheme: power split
/// theta' between the two codebooks and the feedback combining weights.
/// The gammas are real-valued; small negative gamma1 is the useful regime
/// for the stronger receiver.
struct SchemeParams {
  double theta_prime;
  double gamma1;
  double gamma2;
};

enum class Verdict { unchanged, enlarged };

const char* verdict_name(Verdict v) noexcept;

/// Outcome of the feedback-capacity threshold test. margin is the slack of
/// the enlargement condition: margin > 0 means feedback enlarges the
/// capacity region, margin <= 0 means the region is unchanged. Margins that
/// are zero up to floating-point resolution are snapped to exactly 0.
struct Classification {
  Verdict verdict;
  double margin;
};

/// Point on a capacity-region boundary, indexed by the superposition power
/// split theta in [0,1].
struct BoundarySample {
  double theta;
  RatePair rates;
};

inline bool no_feedback_link(double sigma_fb_sq) {
  return std::isinf(sigma_fb_sq);
}

/// Checks the type invariants and returns the input unchanged.
/// Throws Error with code non_positive_variance, non_positive_power or
/// non_finite_forward_variance.
const ChannelParams& validate(const ChannelParams& params);

struct Canonical {
  ChannelParams params;
  bool swapped;
};

/// Reorders the receivers so that sigma1_sq <= sigma2_sq, moving each
/// feedback variance along with its forward variance. Equal forward
/// variances are left untouched.
Canonical canonicalize(const ChannelParams& params);

} // namespace gbcfb
