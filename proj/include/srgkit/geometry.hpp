#pragma once

// Point-level complex and hyperbolic geometry: inversion in the unit circle,
// the Beltrami-Klein map of the closed upper half-plane onto the unit disc,
// minimal geodesic arcs and planar convex hulls.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "srgkit/error.hpp"

namespace srgkit {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Distinguished point at infinity. Any point with an infinite component is
/// treated as infinity.
inline Complex infinity_point() { return {kInf, 0.0}; }

inline bool is_infinite(Complex z) {
  return std::isinf(z.real()) || std::isinf(z.imag());
}

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Inversion in the unit circle, r e^{jt} -> (1/r) e^{jt}. Exchanges 0 and
/// infinity.
inline Complex mobius_invert(Complex z) {
  if (is_infinite(z)) return {0.0, 0.0};
  const double r2 = std::norm(z);
  if (r2 == 0.0) return infinity_point();
  return z / r2;
}

/// Beltrami-Klein map f(g(z)), g(z) = (z - j)/(z + j), f(p) = 2p/(1 + |p|^2).
/// Sends the closed upper half-plane onto the closed unit disc; infinity goes
/// to 1.
inline Complex bk_map(Complex z) {
  if (is_infinite(z)) return {1.0, 0.0};
  if (!(z.imag() >= 0.0)) {
    throw InputError("bk_map: point must lie in the closed upper half-plane");
  }
  const Complex j{0.0, 1.0};
  const Complex p = (z - j) / (z + j);
  return 2.0 * p / (1.0 + std::norm(p));
}

/// Inverse of bk_map on the closed unit disc.
inline Complex bk_unmap(Complex w) {
  const double r2 = std::norm(w);
  if (r2 > 1.0 + 1e-12) {
    throw InputError("bk_unmap: point must lie in the closed unit disc");
  }
  // 1 - r2 at rounding level means a boundary point (the real axis)
  const double gap = 1.0 - r2;
  const Complex p = w / (1.0 + (gap <= 8.0 * std::numeric_limits<double>::epsilon() ? 0.0 : std::sqrt(gap)));
  const Complex one{1.0, 0.0};
  if (std::abs(one - p) == 0.0) return infinity_point();
  const Complex z = Complex{0.0, 1.0} * (one + p) / (one - p);
  // Boundary points of the disc land on the real axis.
  return {z.real(), std::max(0.0, z.imag())};
}

/// Minimal geodesic between two points of the closed upper half-plane: the
/// arc of the circle through both with centre on the real axis, or the
/// straight segment when the real parts coincide.
inline std::vector<Complex> arc_min(Complex z1, Complex z2, std::size_t samples = 64) {
  if (z1.imag() < 0.0 || z2.imag() < 0.0) {
    throw InputError("arc_min: points must lie in the closed upper half-plane");
  }
  if (z1 == z2) return {z1};
  samples = std::max<std::size_t>(samples, 2);
  std::vector<Complex> out;
  out.reserve(samples);
  if (z1.real() == z2.real()) {
    for (std::size_t i = 0; i < samples; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
      out.push_back(z1 + t * (z2 - z1));
    }
    return out;
  }
  const double c = (std::norm(z1) - std::norm(z2)) / (2.0 * (z1.real() - z2.real()));
  const double radius = std::abs(z1 - c);
  const double a1 = std::arg(z1 - c);
  const double a2 = std::arg(z2 - c);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    const double a = a1 + t * (a2 - a1);
    out.push_back({c + radius * std::cos(a), std::max(0.0, radius * std::sin(a))});
  }
  out.front() = z1;
  out.back() = z2;
  return out;
}

namespace detail {

inline double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

/// Distance from p to segment [a, b].
inline double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace detail

/// Andrew's monotone chain. Returns the hull vertices counter-clockwise
/// without repetition; collinear boundary points are dropped. Degenerate
/// inputs give one or two vertices.
inline std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Distance from p to a convex polygon given counter-clockwise (0 inside).
inline double convex_polygon_distance(Complex p, const std::vector<Complex>& poly) {
  if (poly.empty()) return kInf;
  if (poly.size() == 1) return std::abs(p - poly[0]);
  if (poly.size() == 2) return detail::segment_distance(p, poly[0], poly[1]);
  bool inside = true;
  double best = kInf;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Complex a = poly[i];
    const Complex b = poly[(i + 1) % poly.size()];
    if (detail::cross(a, b, p) < 0.0) inside = false;
    best = std::min(best, detail::segment_distance(p, a, b));
  }
  return inside ? 0.0 : best;
}

/// Minkowski sum of two convex polygons (counter-clockwise vertex lists).
inline std::vector<Complex> convex_minkowski_sum(const std::vector<Complex>& a,
                                                 const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Complex> pts;
  if (a.size() < 3 || b.size() < 3) {
    for (auto p : a)
      for (auto q : b) pts.push_back(p + q);
    return convex_hull(std::move(pts));
  }
  auto lowest = [](const std::vector<Complex>& v) {
    std::size_t idx = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i].imag() < v[idx].imag() ||
          (v[i].imag() == v[idx].imag() && v[i].real() < v[idx].real())) {
        idx = i;
      }
    }
    return idx;
  };
  const std::size_t ia = lowest(a);
  const std::size_t ib = lowest(b);
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  std::size_t i = 0;
  std::size_t j = 0;
  pts.reserve(na + nb + 1);
  while (i < na || j < nb) {
    pts.push_back(a[(ia + i) % na] + b[(ib + j) % nb]);
    const Complex ea = a[(ia + i + 1) % na] - a[(ia + i) % na];
    const Complex eb = b[(ib + j + 1) % nb] - b[(ib + j) % nb];
    const double c = ea.real() * eb.imag() - ea.imag() * eb.real();
    if (j >= nb || (i < na && c > 0.0)) {
      ++i;
    } else if (i >= na || c < 0.0) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return convex_hull(std::move(pts));
}

}  // namespace srgkit
