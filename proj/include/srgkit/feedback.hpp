#pragma once

// Stability certificates from region separation: the nonlinear Nyquist
// criterion, the general two-operator separation test with a tau sweep,
// closed-form corollaries and the worked delay/congestion bounds.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "srgkit/region.hpp"
#include "srgkit/region_algebra.hpp"
#include "srgkit/srg.hpp"
#include "srgkit/transfer_function.hpp"

namespace srgkit {

/// Separation below this is treated as touching.
inline constexpr double kSeparationTol = 1e-9;

struct Verdict {
  bool stable = false;
  double margin = 0.0;      // s_m (Nyquist form) or r_m (two-operator form)
  double gain_bound = kInf; // 1 / margin when stable
  /// Nyquist form only: gain bound from u to y, 1 / r_1.
  double output_gain_bound = kInf;
  std::vector<std::pair<double, double>> tau_trace;  // (tau, r_tau)
  std::vector<std::string> conservatism_flags;
};

/// 128 geometric points on (1e-4, 1]; the last one is exactly 1.
inline std::vector<double> default_tau_grid(std::size_t points = 128) {
  points = std::max<std::size_t>(points, 1);
  std::vector<double> out;
  for (std::size_t k = 1; k <= points; ++k) {
    out.push_back(std::pow(10.0, -4.0 + 4.0 * static_cast<double>(k) / static_cast<double>(points)));
  }
  out.back() = 1.0;
  return out;
}

namespace detail {

inline std::vector<double> with_unit_tau(std::vector<double> taus) {
  for (double t : taus) {
    if (!(t > 0.0) || t > 1.0) throw InputError("tau grid values must lie in (0, 1]");
  }
  if (std::find(taus.begin(), taus.end(), 1.0) == taus.end()) taus.push_back(1.0);
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  return taus;
}

/// Golden-section refinement of each local minimum of a tau trace; refined
/// samples are merged into the trace.
template <class F>
void refine_tau_minima(std::vector<std::pair<double, double>>& trace, F&& dist) {
  const std::size_t n = trace.size();
  std::vector<std::pair<double, double>> extra;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = trace[i].second;
    if ((i > 0 && trace[i - 1].second < r) || (i + 1 < n && trace[i + 1].second < r) || r == 0.0) continue;
    const double lo = i > 0 ? trace[i - 1].first : 0.5 * trace[i].first;
    const double hi = i + 1 < n ? trace[i + 1].first : trace[i].first;
    const double t = golden_min(dist, lo, hi);
    if (t != trace[i].first) extra.emplace_back(t, dist(t));
  }
  trace.insert(trace.end(), extra.begin(), extra.end());
  std::sort(trace.begin(), trace.end());
}

inline void note_outer(const Region& r, const std::string& name, std::vector<std::string>& flags) {
  if (r.outer_bound()) flags.push_back(name + " is an outer-bound region (conservative)");
}

}  // namespace detail

/// Unity negative feedback around L: stable when -1/tau is outside L for all
/// tau. Margin s_m = d(-1, L) bounds the u -> e gain by 1/s_m.
inline Verdict nyquist_stability(const Region& loop, std::vector<double> taus = default_tau_grid()) {
  if (loop.includes_infinity()) throw PreconditionError("nyquist_stability: L must be bounded");
  taus = detail::with_unit_tau(std::move(taus));
  Verdict v;
  detail::note_outer(loop, "L", v.conservatism_flags);
  const Region inverse = region_invert(loop);
  double worst = kInf;
  auto dist = [&](double t) { return region_distance(inverse, Region::point({-t, 0.0})); };
  for (double t : taus) v.tau_trace.emplace_back(t, dist(t));
  detail::refine_tau_minima(v.tau_trace, dist);
  for (const auto& [t, r] : v.tau_trace) worst = std::min(worst, r);
  v.margin = region_distance(loop, Region::point({-1.0, 0.0}));
  v.stable = worst > kSeparationTol && v.margin > kSeparationTol;
  v.gain_bound = v.stable ? 1.0 / v.margin : kInf;
  v.output_gain_bound = v.stable ? 1.0 / v.tau_trace.back().second : kInf;
  return v;
}

/// Negative feedback of H1 with H2: stable when SRG(H1)^-1 and -tau SRG(H2)
/// stay apart for every tau; r_m = r_1 bounds the u -> y gain by 1/r_m.
inline Verdict robust_feedback(const Region& h1, const Region& h2, std::vector<double> taus = default_tau_grid()) {
  if (h1.includes_infinity()) throw PreconditionError("robust_feedback: H1 must have finite incremental gain");
  taus = detail::with_unit_tau(std::move(taus));
  Verdict v;
  detail::note_outer(h1, "H1", v.conservatism_flags);
  Region h2bar = h2;
  if (!has_chord_property(h2)) {
    h2bar = chord_closure(h2);
    v.conservatism_flags.push_back("chord closure applied to H2");
  }
  detail::note_outer(h2, "H2", v.conservatism_flags);
  const Region inverse = region_invert(h1);
  double worst = kInf;
  auto dist = [&](double t) { return region_distance(inverse, region_scale(h2bar, -t)); };
  for (double t : taus) v.tau_trace.emplace_back(t, dist(t));
  detail::refine_tau_minima(v.tau_trace, dist);
  for (const auto& [t, r] : v.tau_trace) worst = std::min(worst, r);
  v.margin = v.tau_trace.back().second;
  v.stable = worst > kSeparationTol;
  v.gain_bound = v.stable ? 1.0 / v.margin : kInf;
  return v;
}

/// gamma / (1 - gamma lambda), infinite when gamma lambda >= 1.
inline double small_gain_bound(double gamma, double lambda) {
  if (!(gamma > 0.0) || !(lambda > 0.0)) throw InputError("small_gain_bound: gains must be > 0");
  const double loop = gamma * lambda;
  return loop < 1.0 ? gamma / (1.0 - loop) : kInf;
}

/// mu^2 / lambda for a lambda-input-strict, mu-bounded H1 against a positive H2.
inline double passivity_bound(double lambda, double mu) {
  if (!(lambda > 0.0)) throw InputError("passivity_bound: lambda must be > 0");
  if (!(mu >= lambda)) throw InputError("passivity_bound: need mu >= lambda");
  return mu * mu / lambda;
}

/// Closed-loop class of a gamma-output-strict H1 with a lambda-input-strict H2.
inline OperatorClass weak_passivity(double gamma, double lambda) {
  if (!(gamma > 0.0)) throw InputError("weak_passivity: gamma must be > 0");
  const double s = gamma + lambda;
  if (s < 0.0) throw PreconditionError("weak_passivity: gamma + lambda < 0, no certificate");
  if (s == 0.0) return OperatorClass::incrementally_positive();
  return OperatorClass::output_strict(s);
}

/// cos(pi/n)^n, exact where the value is rational.
inline double cos_pi_over_n_pow_n(std::size_t n) {
  switch (n) {
    case 1: return -1.0;
    case 2: return 0.0;
    case 3: return 0.125;
    case 4: return 0.25;
    case 6: return 27.0 / 64.0;
    default: return std::pow(std::cos(kPi / static_cast<double>(n)), static_cast<double>(n));
  }
}

namespace detail {

inline double checked_product(const std::vector<double>& gammas) {
  if (gammas.empty()) throw InputError("need at least one gain");
  double p = 1.0;
  for (double g : gammas) {
    if (!(g > 0.0) || !std::isfinite(g)) throw InputError("gains must be > 0");
    p *= g;
  }
  return p;
}

}  // namespace detail

struct SecantResult {
  bool satisfied = true;
  double product = 1.0;
  double threshold = kInf;  // sec(pi/n)^n
  /// 1 - prod cos(pi/n)^n: signed distance from -1 to the negative-axis intercept.
  double intercept_margin = 0.0;
  /// d(-1, cascade region).
  double region_margin = 0.0;
};

inline SecantResult secant_check(const std::vector<double>& gammas) {
  SecantResult out;
  out.product = detail::checked_product(gammas);
  const std::size_t n = gammas.size();
  const double c = cos_pi_over_n_pow_n(n);
  if (n >= 3) {
    out.threshold = 1.0 / c;
    out.satisfied = out.product < out.threshold;
  }
  out.intercept_margin = 1.0 - out.product * c;
  out.region_margin = region_distance(Region::point({-1.0, 0.0}), cascade_srg(gammas));
  return out;
}

/// Range of a static gain k in parallel with the cascade that keeps the loop
/// certified: (1 - 1/(prod cos(pi/n)^n), 1/prod).
inline std::pair<double, double> uncertain_gain_interval(const std::vector<double>& gammas) {
  const double p = detail::checked_product(gammas);
  const std::size_t n = gammas.size();
  const double hi = 1.0 / p;
  if (n <= 2) return {-kInf, hi};
  return {1.0 - 1.0 / (p * cos_pi_over_n_pow_n(n)), hi};
}

// --- delay example -------------------------------------------------------------

struct DelayBound {
  double beta = kInf;        // largest certified beta
  double min_grid = 0.0;     // min over the grid of Re(P(jw) e^{-jwT})
  double min_refined = 0.0;  // after golden-section refinement
  double omega_grid = 0.0;
  double omega_refined = 0.0;
};

/// Largest beta for which a (1/beta)-output-strict nonlinearity in feedback
/// with e^{-sT} P(s) is certified: beta = -1 / min_w Re(P(jw) e^{-jwT}).
inline DelayBound delay_beta_bound(const TransferFunction& plant, double delay, std::size_t grid_points = 100000) {
  if (!(delay >= 0.0) || !std::isfinite(delay)) throw InputError("delay_beta_bound: T must be >= 0");
  if (!is_hurwitz(plant)) throw PreconditionError("delay_beta_bound: plant is not Hurwitz stable");
  TransferFunction g = plant;
  g.delay = plant.delay + delay;
  auto re = [&](double w) { return eval_tf(g, w).real(); };
  const double wmax = std::max(10.0, 20.0 * kPi / std::max(delay, 1e-9));
  std::vector<double> w{0.0};
  const double la = -4.0;
  const double lb = std::log10(wmax);
  grid_points = std::max<std::size_t>(grid_points, 16);
  for (std::size_t i = 0; i < grid_points; ++i) {
    w.push_back(std::pow(10.0, la + (lb - la) * static_cast<double>(i) / static_cast<double>(grid_points - 1)));
  }
  std::vector<double> vals(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) vals[i] = re(w[i]);
  const auto it = std::min_element(vals.begin(), vals.end());
  const auto idx = static_cast<std::size_t>(it - vals.begin());
  DelayBound out;
  out.min_grid = *it;
  out.omega_grid = w[idx];
  const double a = w[idx == 0 ? 0 : idx - 1];
  const double b = w[std::min(idx + 1, w.size() - 1)];
  const double t = detail::golden_min(re, a, b, 200);
  out.omega_refined = re(t) < out.min_grid ? t : out.omega_grid;
  out.min_refined = std::min(re(t), out.min_grid);
  out.beta = out.min_refined >= 0.0 ? kInf : -1.0 / out.min_refined;
  return out;
}

// --- congestion example ----------------------------------------------------------

struct CongestionBound {
  double bound = kInf;       // r; the N_u/delta bound is taken equal to r
  double lhp_extent = 0.0;   // how far the loop region reaches into Re < 0
  double omega_max = 0.0;
  double phase_window = 0.0;
  std::vector<std::string> flags;
  std::string assumption = "N_u/delta bound taken equal to r (unit scaling)";
};

/// Loop of H1 = e^{-sT}/(s + beta) with a sector [0, gamma] delayed
/// feedback; bound = 1 / (extent of the loop region into the left half-plane).
inline CongestionBound congestion_bound(double beta, double gamma, double delay, double omega_max = 1000.0) {
  if (!(beta > 0.0) || !(gamma > 0.0) || !(gamma < beta)) {
    throw InputError("congestion_bound: need 0 < gamma < beta");
  }
  if (!(delay >= 0.0) || !std::isfinite(delay)) throw InputError("congestion_bound: T must be >= 0");
  CongestionBound out;
  out.omega_max = omega_max;
  // samples of e^{jwT}(beta + jw), dense in both w and phase
  const double dw = std::min({0.01, 0.01 * beta, delay > 0.0 ? 0.01 / delay : 0.01});
  const auto count = static_cast<std::size_t>(std::min(2e5, std::ceil(omega_max / dw)));
  std::vector<Complex> samples;
  samples.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    const double w = omega_max * static_cast<double>(i) / static_cast<double>(count);
    const Complex z = std::polar(1.0, w * delay) * Complex{beta, w};
    samples.push_back({z.real(), std::abs(z.imag())});
  }
  const Region inverse_h1 = h_convex_hull(samples);
  out.phase_window = std::min(omega_max * delay, kPi);
  const Region phase = Region::annular_sector(1.0, 1.0, out.phase_window);
  const Region minus_h2 = region_scale(region_product(phase, class_srg(OperatorClass::sector(0.0, gamma))), -1.0);
  if (minus_h2.outer_bound()) out.flags.push_back("delay phase applied as a sector cover (conservative)");
  const Region sum = minkowski_sum(inverse_h1, minus_h2);
  if (sum.contains({0.0, 0.0})) {
    out.bound = 0.0;
    out.lhp_extent = kInf;
    out.flags.push_back("0 in the summed region: no certificate");
    return out;
  }
  const Region loop = region_invert(sum);
  const auto [neg_re, witness] = detail::max_directional(loop, kPi);
  (void)witness;
  out.lhp_extent = std::max(0.0, neg_re);
  out.bound = out.lhp_extent > 0.0 ? 1.0 / out.lhp_extent : kInf;
  return out;
}

}  // namespace srgkit
