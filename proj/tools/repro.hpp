#pragma once

// Figure scenarios: each returns named CSV/SVG artefacts plus a short summary.

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "srgkit/srgkit.hpp"

#ifndef SRGKIT_VERSION
#define SRGKIT_VERSION "dev"
#endif

namespace srgkit::cli {

struct Artefacts {
  std::vector<std::pair<std::string, std::string>> files;  // (name, content)
  std::string summary;
};

using Meta = std::vector<std::pair<std::string, std::string>>;

inline std::string csv_header(const Meta& meta, const std::string& columns) {
  std::string out = "# srgkit " SRGKIT_VERSION "\n";
  for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
  return out + columns + "\n";
}

/// 16 significant digits; inf/nan spelled out.
inline std::string num16(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", v + 0.0);
  return buf;
}

inline std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);
  return buf;
}

inline std::vector<double> linspace_inclusive(double a, double b, std::size_t n) {
  if (n == 0) throw InputError("grid needs at least one point");
  if (!(a <= b)) throw InputError("grid needs min <= max");
  if (n == 1) return {a};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

inline const char* kThirdOrderTf = "1/(s^3+5*s^2+2*s+1)";
inline const char* kDelayPlantTf = "s^2/(s^3+2*s^2+2*s+1)";

inline Artefacts repro_third_order() {
  const auto tf = parse_tf(kThirdOrderTf);
  const FrequencyGrid grid;
  const auto omegas = frequency_grid(tf, grid);
  const auto curve = nyquist_curve(tf, omegas);
  const Region srg = lti_srg(tf, omegas);
  std::string csv = csv_header({{"system", to_string(tf)},
                                {"grid", "log " + short_num(grid.wmin) + ".." + short_num(grid.wmax) + " rad/s, " +
                                             std::to_string(grid.points) + " points, w=0 and tail"},
                                {"note", "upper half of the Nyquist diagram; the SRG is its h-convex hull"}},
                               "omega,re,im");
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    csv += num16(omegas[i]) + "," + num16(curve[i].real()) + "," + num16(curve[i].imag()) + "\n";
  }
  PlotOptions o;
  o.title = "SRG of " + std::string(kThirdOrderTf);
  const std::string svg = render_svg({PlotLayer{srg, "#bbbbbb", "#777777", 0.8}}, PlotOverlay{curve, {}}, o);
  return {{{"third_order.csv", csv}, {"third_order.svg", svg}},
          "third-order: " + std::to_string(omegas.size()) + " Nyquist samples, hull plotted"};
}

/// beta bound against the delay, plus the beta = 1 incremental gain bound
/// 1 / (1 + min Re(P(jw) e^{-jwT})).
inline Artefacts repro_delay(double tmin, double tmax, std::size_t tpoints) {
  if (!(tmin > 0.0)) throw InputError("repro delay: --tmin must be > 0");
  const auto plant = parse_tf(kDelayPlantTf);
  const auto ts = linspace_inclusive(tmin, tmax, tpoints);
  std::string csv = csv_header({{"plant", to_string(plant)},
                                {"T grid", "linear " + short_num(tmin) + ".." + short_num(tmax) + ", " +
                                               std::to_string(tpoints) + " points"},
                                {"omega grid", "w=0 plus 100000 log points on [1e-4, max(10, 20 pi/T)], golden refinement"},
                                {"feedback", "1/beta-output-strict incrementally positive"}},
                               "T,beta_max,min_re,omega_min,gain_bound_beta1");
  XySeries beta{"beta_max", {}, "#555555"};
  XySeries gain{"gain bound (beta = 1)", {}, "#e45756"};
  for (double t : ts) {
    const auto b = delay_beta_bound(plant, t);
    const double r = 1.0 + b.min_refined;
    const double g = r > 0.0 ? 1.0 / r : kInf;
    csv += num16(t) + "," + num16(b.beta) + "," + num16(b.min_refined) + "," + num16(b.omega_refined) + "," +
           num16(g) + "\n";
    beta.points.emplace_back(t, b.beta);
    gain.points.emplace_back(t, g);
  }
  return {{{"delay_bound.csv", csv},
           {"delay_bound.svg", render_xy_svg({beta}, "delay T", "beta bound vs delay")},
           {"delay_gain.svg", render_xy_svg({gain}, "delay T", "incremental gain bound, beta = 1")}},
          "delay: " + std::to_string(ts.size()) + " delays"};
}

inline Artefacts repro_cascade(const std::vector<double>& gammas) {
  if (gammas.empty()) throw InputError("repro cascade: need at least one gamma");
  // SRGs for 1..5 unit subsystems
  std::vector<PlotLayer> layers;
  const char* colors[] = {"#4c78a8", "#f58518", "#54a24b", "#b279a2", "#e45756"};
  for (std::size_t n = 1; n <= 5; ++n) {
    layers.push_back({cascade_srg(std::vector<double>(n, 1.0)), colors[n - 1], colors[n - 1], 0.15});
  }
  PlotOptions o1;
  o1.title = "cascades of 1..5 unit output-strict systems";
  const std::string srg_svg = render_svg(layers, {}, o1);

  const Region inverse = region_invert(cascade_srg(gammas));
  const auto rep = region_distance_report(inverse, Region::point({-1.0, 0.0}));
  const auto sec = secant_check(gammas);
  PlotOptions o2;
  o2.title = "inverse cascade SRG, margin r_m = " + short_num(rep.value);
  o2.xmin = -3.0;
  o2.xmax = 3.0;
  o2.ymin = -3.0;
  o2.ymax = 3.0;
  const std::string inv_svg =
      render_svg({PlotLayer{inverse, "#bbbbbb", "#777777", 0.8}}, PlotOverlay{{}, {{rep.witness_a, rep.witness_b}}}, o2);

  std::string gl;
  for (double g : gammas) gl += (gl.empty() ? "" : " ") + short_num(g);
  std::string csv = csv_header({{"gammas", gl}, {"phi samples", std::to_string(inverse.resolution())}},
                               "n,product,threshold,intercept,margin,stable");
  csv += std::to_string(gammas.size()) + "," + num16(sec.product) + "," + num16(sec.threshold) + "," +
         num16(-1.0 / (sec.product * cos_pi_over_n_pow_n(gammas.size()))) + "," + num16(rep.value) + "," +
         (sec.satisfied ? "1" : "0") + "\n";
  return {{{"cascade_srg.svg", srg_svg}, {"cascade_inverse.svg", inv_svg}, {"cascade.csv", csv}},
          "cascade: r_m = " + short_num(rep.value) + (sec.satisfied ? " (secant condition holds)" : " (secant condition fails)")};
}

inline Artefacts repro_congestion(double beta, double gamma, double tmin, double tmax, std::size_t tpoints,
                                  double omega_max) {
  const auto ts = linspace_inclusive(tmin, tmax, tpoints);
  const std::string note = CongestionBound{}.assumption;
  std::string csv = csv_header({{"beta", short_num(beta)},
                                {"gamma", short_num(gamma)},
                                {"omega_max", short_num(omega_max)},
                                {"T grid", "linear " + short_num(tmin) + ".." + short_num(tmax) + ", " +
                                               std::to_string(tpoints) + " points"},
                                {"assumption", note}},
                               "T,bound,lhp_extent,phase_window,flags");
  XySeries series{"N_u/delta bound", {}, "#555555"};
  for (double t : ts) {
    const auto c = congestion_bound(beta, gamma, t, omega_max);
    std::string flags;
    for (const auto& f : c.flags) flags += (flags.empty() ? "" : "; ") + f;
    csv += num16(t) + "," + num16(c.bound) + "," + num16(c.lhp_extent) + "," + num16(c.phase_window) + ",\"" +
           flags + "\"\n";
    series.points.emplace_back(t, c.bound);
  }
  double ymax = 0.0;
  for (auto [t, b] : series.points) {
    if (std::isfinite(b)) ymax = std::max(ymax, b);
  }
  return {{{"congestion.csv", csv},
           {"congestion.svg", render_xy_svg({series}, "delay T", "upper bound on N_u/delta", ymax * 1.1)}},
          "congestion: " + std::to_string(ts.size()) + " delays; assumption: " + note};
}

}  // namespace srgkit::cli
