#pragma once

// SRG builders: operator classes, LTI systems (h-convex hull of the Nyquist
// diagram), static nonlinearities and cascades of output-strict systems.

#include <algorithm>
#include <string>
#include <vector>

#include "srgkit/region.hpp"
#include "srgkit/region_algebra.hpp"
#include "srgkit/transfer_function.hpp"

namespace srgkit {

struct OperatorClass {
  enum class Kind { kGainBound, kIncrementallyPositive, kInputStrict, kOutputStrict, kSector };
  Kind kind = Kind::kIncrementallyPositive;
  double a = 0.0;  // mu (gain bound, sector lower), lambda (input strict), gamma (output strict)
  double b = 0.0;  // sector upper bound

  static OperatorClass gain_bound(double mu) { return {Kind::kGainBound, mu, 0.0}; }
  static OperatorClass incrementally_positive() { return {Kind::kIncrementallyPositive, 0.0, 0.0}; }
  static OperatorClass input_strict(double lambda) { return {Kind::kInputStrict, lambda, 0.0}; }
  static OperatorClass output_strict(double gamma) { return {Kind::kOutputStrict, gamma, 0.0}; }
  static OperatorClass sector(double mu, double lambda) { return {Kind::kSector, mu, lambda}; }

  bool operator==(const OperatorClass&) const = default;
};

inline std::string to_string(const OperatorClass& c) {
  using K = OperatorClass::Kind;
  switch (c.kind) {
    case K::kGainBound: return "gain_bound(" + detail::format_number(c.a) + ")";
    case K::kIncrementallyPositive: return "incrementally_positive";
    case K::kInputStrict: return "input_strict(" + detail::format_number(c.a) + ")";
    case K::kOutputStrict: return "output_strict(" + detail::format_number(c.a) + ")";
    case K::kSector: return "sector(" + detail::format_number(c.a) + ", " + detail::format_number(c.b) + ")";
  }
  return "?";
}

inline Region class_srg(const OperatorClass& c) {
  using K = OperatorClass::Kind;
  switch (c.kind) {
    case K::kGainBound:
      if (!(c.a > 0.0)) throw InputError("gain bound must be > 0");
      return Region::disc({0.0, 0.0}, c.a);
    case K::kIncrementallyPositive:
      return Region::half_plane(0.0, 0.0);
    case K::kInputStrict:
      if (!std::isfinite(c.a)) throw InputError("input strictness must be finite");
      return Region::half_plane(0.0, c.a);
    case K::kOutputStrict:
      if (!(c.a > 0.0) || !std::isfinite(c.a)) throw InputError("output strictness must be > 0");
      return Region::disc({0.5 / c.a, 0.0}, 0.5 / c.a);
    case K::kSector:
      if (!(c.a <= c.b) || !std::isfinite(c.a) || !std::isfinite(c.b)) {
        throw InputError("sector requires mu <= lambda");
      }
      return Region::disc({0.5 * (c.a + c.b), 0.0}, 0.5 * (c.b - c.a));
  }
  throw InputError("unknown operator class");
}

/// Nyquist samples folded into the closed upper half-plane, ordered by w.
inline std::vector<Complex> nyquist_curve(const TransferFunction& tf, const std::vector<double>& omegas) {
  if (!is_hurwitz(tf)) throw PreconditionError("nyquist_curve: transfer function is not Hurwitz stable");
  std::vector<Complex> out;
  out.reserve(omegas.size());
  for (double w : omegas) {
    const Complex g = eval_tf(tf, w);
    out.push_back({g.real(), std::abs(g.imag())});
  }
  return out;
}

inline std::vector<Complex> nyquist_curve(const TransferFunction& tf, const FrequencyGrid& grid = {}) {
  return nyquist_curve(tf, frequency_grid(tf, grid));
}

namespace detail {

/// The grid plus every real-axis crossing of G(jw) bracketed by it, so the
/// points where the folded curve touches the axis are exact samples.
inline std::vector<double> with_axis_crossings(const TransferFunction& tf, std::vector<double> omegas) {
  std::sort(omegas.begin(), omegas.end());
  std::vector<double> out;
  out.reserve(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (i > 0) {
      double a = omegas[i - 1], b = omegas[i];
      double fa = eval_tf(tf, a).imag();
      if (fa * eval_tf(tf, b).imag() < 0.0) {
        for (int k = 0; k < 200 && b - a > 1e-15 * b; ++k) {
          const double m = 0.5 * (a + b);
          const double fm = eval_tf(tf, m).imag();
          if (fm == 0.0) a = b = m;
          else if (fa * fm < 0.0) b = m;
          else {
            a = m;
            fa = fm;
          }
        }
        const double root = std::abs(eval_tf(tf, a).imag()) <= std::abs(eval_tf(tf, b).imag()) ? a : b;
        if (root > out.back() && root < omegas[i]) out.push_back(root);
      }
    }
    out.push_back(omegas[i]);
  }
  return out;
}

}  // namespace detail

inline Region lti_srg(const TransferFunction& tf, const std::vector<double>& omegas) {
  if (omegas.empty()) throw InputError("lti_srg: empty frequency grid");
  if (!is_hurwitz(tf)) throw PreconditionError("lti_srg: transfer function is not Hurwitz stable");
  return h_convex_hull(nyquist_curve(tf, detail::with_axis_crossings(tf, omegas)));
}

inline Region lti_srg(const TransferFunction& tf, const FrequencyGrid& grid = {}) {
  return lti_srg(tf, frequency_grid(tf, grid));
}

/// Circle through 0 and 1 contained in the SRG of any elbow nonlinearity.
inline Region elbow_circle() { return Region::circle_curve({0.5, 0.0}, 0.5); }

/// Disc of a saturating nonlinearity with knee value s(u*) at u*.
inline Region saturating_disc(double u_star, double s_u_star) {
  if (!(u_star > 0.0) || !(s_u_star > 0.0)) throw InputError("saturating disc: need u* > 0 and s(u*) > 0");
  const double c = s_u_star / (2.0 * u_star);
  return Region::disc({c, 0.0}, c);
}

inline Region saturation_srg() { return saturating_disc(1.0, 1.0); }
inline Region relu_srg() { return saturating_disc(1.0, 1.0); }

/// Bounding region of a cascade of gamma_i-output-strict positive systems:
/// boundary prod(gamma) cos(phi/n)^n e^{-j phi}.
inline Region cascade_srg(const std::vector<double>& gammas) { return Region::cascade(gammas); }

inline Complex cascade_boundary_point(const std::vector<double>& gammas, double phi) {
  double gain = 1.0;
  for (double g : gammas) gain *= g;
  const double n = static_cast<double>(gammas.size());
  return gain * std::pow(std::cos(phi / n), n) * std::polar(1.0, -phi);
}

/// y' = -f(y) + g(u) with f in sector [0, gamma1], g in [0, gamma2].
inline Region first_order_nl_srg(double gamma1, double gamma2) {
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0)) throw InputError("first-order bound: sector gains must be > 0");
  return cascade_srg({gamma1, gamma2});
}

}  // namespace srgkit
