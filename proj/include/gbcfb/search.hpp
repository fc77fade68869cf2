#pragma once

#include <optional>

#include "gbcfb/model.hpp"

namespace gbcfb {

/// Budget knobs for search_enlargement. The epsilon grid is geometric,
/// P * 2^-k for k = 0..eps_levels-1; each level seeds `multistarts`
/// derivative-free refinements of at most refine_iters iterations.
struct SearchBudget {
  int eps_levels = 41;
  int multistarts = 5;
  int refine_iters = 500;
};

/// Explicit finite-power witness that the channel's capacity region is
/// enlarged by feedback: a bootstrap operating point whose rate pair lies
/// strictly outside the no-feedback region. All fields refer to the
/// canonical receiver ordering (sigma1_sq <= sigma2_sq); rates reproduce
/// bootstrap_rates(params, epsilon, scheme) bit-for-bit.
struct EnlargementWitness {
  double epsilon;
  SchemeParams scheme;
  RatePair rates;
  double excess;
};

struct SearchResult {
  std::optional<EnlargementWitness> witness;
  double best_excess; // best excess seen, usually negative when not found
};

/// Searches for an enlargement witness. Seeds come from the low-power
/// certificate (theta from the gap minimizer, gammas by inverting the
/// low-power transform at each epsilon level) and are refined by
/// Nelder-Mead descent on the negated excess over (theta', gamma1, gamma2,
/// log2 epsilon). Deterministic for fixed params and budget. A witness is
/// only reported when its excess clears a floor of a few hundred ulps of
/// the rate magnitudes, which keeps floating-point noise from ever
/// producing a witness on an unchanged channel while still admitting the
/// microscopic (but genuine) enlargements of extreme channel geometries.
SearchResult search_enlargement(const ChannelParams& params,
                                const SearchBudget& budget = {});

/// Recomputes the witness fields from scratch and checks them against the
/// stored values to 1e-12; false on any mismatch or precondition violation.
bool verify_witness(const ChannelParams& params, const EnlargementWitness& w);

} // namespace gbcfb
