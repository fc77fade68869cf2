#pragma once

#include "gbcfb/model.hpp"

namespace gbcfb {

/// Certificate that the zero-forcing scheme beats the no-feedback Pareto
/// point indexed by theta at sufficiently small transmit power. Produced by
/// certify_lowpower for the canonical receiver ordering. feasible is
/// equivalent to the classify verdict being enlarged (g_at_xstar = 0 pairs
/// with margin = 0 on the shared boundary).
struct LowPowerCertificate {
  double theta;      // x_star/(1 + x_star), interior Pareto index
  double a1;         // transformed weight for receiver 1's feedback
  double a2;         // transformed weight for receiver 2's feedback
  double mu;         // power-split offset matching the rate-1 derivative
  double g_at_xstar; // minimized gap value; feasible iff < 0
  double x_star;     // minimizer of the gap function
  bool feasible;
};

struct TransformedWeights {
  double a1;
  double a2;
  double mu;
};

/// Low-power change of variables from (gamma1, gamma2, theta') to
/// (a1, a2, mu):  a_j = (-1)^j gamma_j hat_sigma_j / P,
/// mu = (theta'/theta - 1)/P. Requires theta in (0,1).
TransformedWeights lowpower_transform(const SchemeParams& scheme,
                                      const ChannelParams& params,
                                      double theta);

/// The mu that turns the rate-1 dominance derivative condition into an
/// equality: mu = theta/(2 s1) + (a1^2 + a2^2)/2 - a1 hat_sigma1 / s1.
double lowpower_mu_choice(const ChannelParams& params, double theta, double a1,
                          double a2);

struct WeightPair {
  double a1;
  double a2;
};

/// Closed-form transformed weights maximizing the dominance slack:
/// a1 = theta/sqrt(s1 + fb1), a2 = (1-theta)/sqrt(s2 + fb2); each weight is
/// 0 when its feedback link is absent.
WeightPair lowpower_weights(const ChannelParams& params, double theta);

/// Gap function whose negativity certifies low-power enlargement:
///   g(x) = x*fb1/(s1*(s1+fb1)) + fb2/(x*s2*(s2+fb2)) - 2/s2,
/// with coefficient limits fb/(s*(s+fb)) -> 1/s for absent links.
/// Requires x > 0.
double lowpower_gap(const ChannelParams& params, double x);

/// Closed-form minimizer of the gap function over x > 0:
///   x* = sqrt( (1 + s1/fb1)/(1 + s2/fb2) * s1/s2 )  (canonical ordering).
double lowpower_gap_minimizer(const ChannelParams& params);

/// Full low-power analysis: canonicalizes, minimizes the gap function and
/// assembles the certificate with theta = x*/(1+x*).
LowPowerCertificate certify_lowpower(const ChannelParams& params);

} // namespace gbcfb
