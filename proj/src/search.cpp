#include "gbcfb/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "gbcfb/lowpower.hpp"
#include "gbcfb/regions.hpp"
#include "gbcfb/zf_scheme.hpp"

namespace gbcfb {

namespace {

constexpr double kPenalty = 1e9;
constexpr double kLogEpsFloor = -60.0; // epsilon never below P * 2^-60

// Witnesses must clear the worst-case rounding of the excess computation by
// more than two orders of magnitude. The rounding scales with the rate
// magnitudes (the excess is a difference of quantities of that size), so
// channels whose genuine enlargement is microscopic but whose rates are
// also tiny remain detectable, while floating-point noise on an unchanged
// channel can never be mistaken for a witness.
double witness_floor(const RatePair& rates) {
  const double scale =
      std::max({1.0, std::abs(rates.r1), std::abs(rates.r2)});
  return 512.0 * std::numeric_limits<double>::epsilon() * scale;
}

using Point = std::vector<double>;

// Minimal Nelder-Mead with deterministic tie-breaking. Minimizes f.
struct SimplexResult {
  Point x;
  double fx;
};

SimplexResult nelder_mead(const std::function<double(const Point&)>& f,
                          const Point& x0, const Point& steps, int max_iters) {
  const std::size_t dim = x0.size();
  struct Vertex {
    Point x;
    double fx;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back({x0, f(x0)});
  for (std::size_t i = 0; i < dim; ++i) {
    Point x = x0;
    x[i] += steps[i];
    simplex.push_back({x, f(x)});
  }

  const auto less = [](const Vertex& a, const Vertex& b) {
    if (a.fx != b.fx) return a.fx < b.fx;
    return a.x < b.x; // lexicographic tie-break keeps ordering deterministic
  };

  for (int iter = 0; iter < max_iters; ++iter) {
    std::sort(simplex.begin(), simplex.end(), less);
    const Vertex& best = simplex.front();
    Vertex& worst = simplex.back();

    double diameter = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      diameter = std::max(diameter,
                          std::abs(worst.x[i] - best.x[i]));
    if (std::abs(worst.fx - best.fx) <=
            1e-15 * std::max(1.0, std::abs(best.fx)) &&
        diameter <= 1e-13)
      break;

    Point centroid(dim, 0.0);
    for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i];
    for (double& c : centroid) c /= static_cast<double>(dim);

    const auto blend = [&](double coeff) {
      Point x(dim);
      for (std::size_t i = 0; i < dim; ++i)
        x[i] = centroid[i] + coeff * (worst.x[i] - centroid[i]);
      return x;
    };

    Point reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < best.fx) {
      Point expanded = blend(-2.0);
      const double fe = f(expanded);
      if (fe < fr)
        worst = {std::move(expanded), fe};
      else
        worst = {std::move(reflected), fr};
      continue;
    }
    if (fr < simplex[simplex.size() - 2].fx) {
      worst = {std::move(reflected), fr};
      continue;
    }
    Point contracted = blend(fr < worst.fx ? -0.5 : 0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, worst.fx)) {
      worst = {std::move(contracted), fc};
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t v = 1; v < simplex.size(); ++v) {
      for (std::size_t i = 0; i < dim; ++i)
        simplex[v].x[i] = best.x[i] + 0.5 * (simplex[v].x[i] - best.x[i]);
      simplex[v].fx = f(simplex[v].x);
    }
  }

  std::sort(simplex.begin(), simplex.end(), less);
  return {simplex.front().x, simplex.front().fx};
}

struct Candidate {
  double excess;
  double epsilon;
  SchemeParams scheme;
  RatePair rates;
  bool valid = false;
};

// Larger excess wins; ties prefer smaller epsilon, then lexicographically
// smaller scheme parameters.
bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.excess != b.excess) return a.excess > b.excess;
  if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
  const auto key = [](const Candidate& c) {
    return std::array<double, 3>{c.scheme.theta_prime, c.scheme.gamma1,
                                 c.scheme.gamma2};
  };
  return key(a) < key(b);
}

} // namespace

SearchResult search_enlargement(const ChannelParams& params,
                                const SearchBudget& budget) {
  validate(params);
  if (budget.eps_levels < 1 || budget.multistarts < 1 ||
      budget.refine_iters < 1)
    throw Error(Errc::invalid_budget, "budget fields must be positive");

  const ChannelParams c = canonicalize(params).params;
  const double p = c.power;
  const LowPowerCertificate cert = certify_lowpower(c);
  const double hat_sigma1 =
      std::sqrt(mmse_variance(c.sigma1_sq, c.sigma_fb1_sq));
  const double hat_sigma2 =
      std::sqrt(mmse_variance(c.sigma2_sq, c.sigma_fb2_sq));
  const bool use_g1 = hat_sigma1 > 0.0;
  const bool use_g2 = hat_sigma2 > 0.0;

  // Active coordinates: theta', log2(eps/P), and each gamma whose feedback
  // link exists; absent links keep gamma pinned at 0.
  struct Layout {
    int theta = 0;
    int logeps = 1;
    int g1 = -1;
    int g2 = -1;
    std::size_t dim = 2;
  } lay;
  if (use_g1) lay.g1 = static_cast<int>(lay.dim++);
  if (use_g2) lay.g2 = static_cast<int>(lay.dim++);

  const auto decode = [&](const Point& x, SchemeParams& scheme,
                          double& epsilon) {
    scheme.theta_prime = x[static_cast<std::size_t>(lay.theta)];
    scheme.gamma1 = use_g1 ? x[static_cast<std::size_t>(lay.g1)] : 0.0;
    scheme.gamma2 = use_g2 ? x[static_cast<std::size_t>(lay.g2)] : 0.0;
    epsilon = p * std::exp2(x[static_cast<std::size_t>(lay.logeps)]);
  };

  const auto objective = [&](const Point& x) -> double {
    const double theta_prime = x[static_cast<std::size_t>(lay.theta)];
    const double logeps = x[static_cast<std::size_t>(lay.logeps)];
    double violation = 0.0;
    if (theta_prime < 0.0) violation += -theta_prime;
    if (theta_prime > 1.0) violation += theta_prime - 1.0;
    if (logeps > 0.0) violation += logeps;
    if (logeps < kLogEpsFloor) violation += kLogEpsFloor - logeps;
    if (violation > 0.0) return kPenalty * (1.0 + violation);
    SchemeParams scheme{};
    double epsilon = 0.0;
    decode(x, scheme, epsilon);
    try {
      const RatePair rates = bootstrap_rates(c, epsilon, scheme);
      const std::optional<double> excess = excess_rate(c, rates);
      if (!excess) return kPenalty;
      return -*excess;
    } catch (const Error&) {
      return kPenalty;
    }
  };

  Candidate best{};
  const auto consider = [&](const Point& x) {
    SchemeParams scheme{};
    double epsilon = 0.0;
    decode(x, scheme, epsilon);
    if (!(scheme.theta_prime >= 0.0 && scheme.theta_prime <= 1.0)) return;
    if (!(epsilon > 0.0 && epsilon <= p)) return;
    try {
      const RatePair rates = bootstrap_rates(c, epsilon, scheme);
      const std::optional<double> excess = excess_rate(c, rates);
      if (!excess) return;
      Candidate cand{*excess, epsilon, scheme, rates, true};
      if (better(cand, best)) best = cand;
    } catch (const Error&) {
    }
  };

  // Deterministic multistart perturbations around the low-power seed.
  static constexpr std::array<double, 5> kGammaScale = {1.0, 0.5, 2.0, 0.25,
                                                        4.0};
  static constexpr std::array<double, 5> kThetaShift = {0.0, 0.02, -0.02, 0.05,
                                                        -0.05};

  for (int level = 0; level < budget.eps_levels; ++level) {
    const double epsilon = std::ldexp(p, -level);
    const double logeps = static_cast<double>(-level);
    const double gamma1_seed = use_g1 ? -cert.a1 * epsilon / hat_sigma1 : 0.0;
    const double gamma2_seed = use_g2 ? cert.a2 * epsilon / hat_sigma2 : 0.0;
    const double theta_seed =
        std::clamp(cert.theta * (1.0 + cert.mu * epsilon), 0.0, 1.0);

    for (int m = 0; m < budget.multistarts; ++m) {
      const std::size_t mi = static_cast<std::size_t>(m) % kGammaScale.size();
      Point x0(lay.dim, 0.0);
      x0[static_cast<std::size_t>(lay.theta)] =
          std::clamp(theta_seed + kThetaShift[mi], 0.0, 1.0);
      x0[static_cast<std::size_t>(lay.logeps)] = logeps;
      if (use_g1)
        x0[static_cast<std::size_t>(lay.g1)] = gamma1_seed * kGammaScale[mi];
      if (use_g2)
        x0[static_cast<std::size_t>(lay.g2)] = gamma2_seed * kGammaScale[mi];

      Point steps(lay.dim, 0.0);
      steps[static_cast<std::size_t>(lay.theta)] = 0.02;
      steps[static_cast<std::size_t>(lay.logeps)] = 0.35;
      if (use_g1)
        steps[static_cast<std::size_t>(lay.g1)] =
            std::max(0.25 * std::abs(gamma1_seed), 1e-3);
      if (use_g2)
        steps[static_cast<std::size_t>(lay.g2)] =
            std::max(0.25 * std::abs(gamma2_seed), 1e-3);

      consider(x0);
      const SimplexResult r =
          nelder_mead(objective, x0, steps, budget.refine_iters);
      consider(r.x);
    }
  }

  SearchResult result;
  result.best_excess = best.valid ? best.excess : 0.0;
  if (best.valid && best.excess > witness_floor(best.rates))
    result.witness =
        EnlargementWitness{best.epsilon, best.scheme, best.rates, best.excess};
  return result;
}

bool verify_witness(const ChannelParams& params, const EnlargementWitness& w) {
  try {
    validate(params);
    const ChannelParams c = canonicalize(params).params;
    if (!(w.epsilon > 0.0 && w.epsilon <= c.power)) return false;
    const RatePair rates = bootstrap_rates(c, w.epsilon, w.scheme);
    if (std::abs(rates.r1 - w.rates.r1) > 1e-12) return false;
    if (std::abs(rates.r2 - w.rates.r2) > 1e-12) return false;
    const std::optional<double> excess = excess_rate(c, rates);
    if (!excess) return false;
    if (std::abs(*excess - w.excess) > 1e-12) return false;
    return w.excess > 0.0;
  } catch (const std::exception&) {
    return false;
  }
}

} // namespace gbcfb
