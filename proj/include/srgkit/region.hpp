#pragma once

// Conjugate-symmetric regions of the extended complex plane.
//
// A Region is an immutable tree: leaves are analytic primitives (disc,
// half-plane, annular sector, h-convex hull of a sampled curve), inner nodes
// are set operations and exact maps (union, intersection, inversion, real
// affine maps, dilation by a disc) plus a few closed-form shapes produced by
// the SRG builders. Every node is mirrored in the real axis: membership of z
// and of conj(z) always agree.
//
// Two views are kept consistent:
//   * contains(z)  - exact membership predicate (up to a 1e-12 relative band),
//   * boundary()   - parametric chains sampled at the region resolution. Every
//                    sample lies in the region and the topological boundary
//                    is covered, which is what distance queries need.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "srgkit/error.hpp"
#include "srgkit/geometry.hpp"

namespace srgkit {

struct Disc {
  Complex center;
  double radius = 0.0;
};

/// {z : Re(z e^{-j angle}) >= offset}, mirrored when angle is not 0 or pi.
struct HalfPlane {
  double angle = 0.0;
  double offset = 0.0;
};

/// {r e^{+-j t} : rmin <= r <= rmax, |t| <= phimax}.
struct AnnularSector {
  double rmin = 0.0;
  double rmax = kInf;
  double phimax = kPi;
};

/// Filled h-convex hull of upper half-plane samples, mirrored.
struct HulledCurve {
  std::vector<Complex> samples;
};

using Primitive = std::variant<Disc, HalfPlane, AnnularSector, HulledCurve>;

enum class ArcSide { kRight, kLeft };

inline constexpr std::size_t kDefaultResolution = 1024;

/// Boundary samples per primitive. SRGKIT_RESOLUTION overrides the default.
inline std::size_t default_resolution() {
  if (const char* env = std::getenv("SRGKIT_RESOLUTION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 16 && v <= (1L << 20)) {
      return static_cast<std::size_t>(v);
    }
  }
  return kDefaultResolution;
}

/// A sampled parametric piece of boundary. points[i] == curve(params[i]);
/// points may be non-finite where the curve passes through infinity.
struct BoundaryChain {
  std::function<Complex(double)> curve;
  std::vector<double> params;
  std::vector<Complex> points;
};

using Boundary = std::vector<BoundaryChain>;

namespace detail {
struct Node;
}

class Region {
 public:
  explicit Region(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  static Region from_primitive(Primitive primitive, std::size_t resolution = default_resolution());
  static Region disc(Complex center, double radius);
  static Region point(Complex z) { return disc(z, 0.0); }
  static Region half_plane(double angle, double offset);
  static Region annular_sector(double rmin, double rmax, double phimax);
  static Region hulled_curve(std::vector<Complex> upper_samples);
  /// Filled convex polygon; the vertex set is mirrored before hulling.
  static Region convex_polygon(std::vector<Complex> vertices);
  /// Region with boundary scale * prod(gammas) * cos(phi/n)^n e^{-j phi}.
  static Region cascade(std::vector<double> gammas, double scale = 1.0);
  /// The circle itself, not the disc.
  static Region circle_curve(Complex center, double radius);
  static Region union_of(std::vector<Region> operands);
  static Region intersection(Region a, Region b);
  static Region inverted(Region operand);
  static Region affine(Region operand, double scale, double shift);
  static Region dilated(Region operand, double center, double radius);
  static Region chord_closure(Region operand);
  static Region arc_closure(Region operand, ArcSide side);

  [[nodiscard]] bool contains(Complex z) const;
  [[nodiscard]] bool includes_infinity() const;
  [[nodiscard]] std::size_t resolution() const;
  /// True when the region was produced by a conservative outer-bound rule.
  [[nodiscard]] bool outer_bound() const;
  [[nodiscard]] Region with_resolution(std::size_t resolution) const;
  [[nodiscard]] Region mark_outer_bound() const;

  [[nodiscard]] const Boundary& boundary() const;
  /// Finite boundary samples, all chains flattened.
  [[nodiscard]] std::vector<Complex> boundary_points() const;
  [[nodiscard]] std::optional<Primitive> primitive() const;
  /// Leaf primitives of a top-level union; empty when any operand is composite.
  [[nodiscard]] std::vector<Primitive> primitives() const;

  [[nodiscard]] const detail::Node& node() const { return *node_; }

 private:
  std::shared_ptr<const detail::Node> node_;
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct LeafNode {
  Primitive primitive;
  std::vector<Complex> klein;  // hull vertices for HulledCurve
};
struct UnionNode {
  std::vector<Region> operands;
};
struct IntersectionNode {
  std::vector<Region> operands;
};
struct InvertNode {
  Region operand;
};
struct AffineNode {
  Region operand;
  double scale;
  double shift;
};
struct DilateNode {
  Region operand;
  double center;
  double radius;
};
struct PolygonNode {
  std::vector<Complex> vertices;
};
struct CascadeNode {
  std::vector<double> gammas;
  double scale;
};
struct CircleCurveNode {
  Complex center;
  double radius;
};
using Segment = std::pair<Complex, Complex>;
struct ChordClosureNode {
  Region operand;
  std::vector<Segment> segments;  // (x, |y|) pairs
};
struct ArcClosureNode {
  Region operand;
  ArcSide side;
  std::vector<Segment> segments;  // (modulus, |arg|) pairs
};

using NodeData = std::variant<LeafNode, UnionNode, IntersectionNode, InvertNode, AffineNode,
                              DilateNode, PolygonNode, CascadeNode, CircleCurveNode,
                              ChordClosureNode, ArcClosureNode>;

struct Node {
  NodeData data;
  std::size_t resolution = kDefaultResolution;
  bool includes_infinity = false;
  bool outer_bound = false;
  mutable std::once_flag once;
  mutable Boundary boundary;
};

inline constexpr double kMemberTol = 1e-12;
inline constexpr double kLineParamLimit = kPi / 2 - 1e-6;

inline double tol_at(Complex z) { return kMemberTol * (1.0 + std::abs(z)); }

/// e^{j angle} with round-off components (cos(pi/2) and the like) snapped
/// to zero so axis-aligned lines stay exactly axis-aligned.
inline Complex unit_vector(double angle) {
  double c = std::cos(angle);
  double s = std::sin(angle);
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  return {c, s};
}

inline bool is_real_axis_angle(double angle) {
  return std::abs(std::sin(angle)) < 1e-15;
}

template <class F>
double golden_min(F&& f, double a, double b, int iterations = 80) {
  constexpr double kRatio = 0.6180339887498949;
  double c = b - kRatio * (b - a);
  double d = a + kRatio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations && std::abs(b - a) > 1e-15 * (1.0 + std::abs(a)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kRatio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kRatio * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

/// Samples curve at params, then inserts midpoints wherever consecutive
/// finite samples are far apart relative to the chain's extent.
inline BoundaryChain make_chain(std::function<Complex(double)> curve, std::vector<double> params,
                                std::size_t resolution) {
  BoundaryChain chain;
  chain.points.reserve(params.size());
  for (double t : params) chain.points.push_back(curve(t));
  chain.params = std::move(params);
  chain.curve = std::move(curve);
  if (chain.points.size() < 2) return chain;

  double lo_x = kInf, hi_x = -kInf, lo_y = kInf, hi_y = -kInf;
  for (auto p : chain.points) {
    if (!is_finite(p)) continue;
    lo_x = std::min(lo_x, p.real());
    hi_x = std::max(hi_x, p.real());
    lo_y = std::min(lo_y, p.imag());
    hi_y = std::max(hi_y, p.imag());
  }
  if (!(hi_x >= lo_x)) return chain;
  const double extent = std::hypot(hi_x - lo_x, hi_y - lo_y);
  if (extent == 0.0 || !std::isfinite(extent)) return chain;
  const double max_gap = 4.0 * extent / static_cast<double>(std::max<std::size_t>(resolution, 16));
  const std::size_t cap = 8 * std::max(resolution, chain.points.size());

  for (int pass = 0; pass < 8; ++pass) {
    bool changed = false;
    std::vector<double> params_out;
    std::vector<Complex> points_out;
    params_out.reserve(chain.params.size() * 2);
    points_out.reserve(chain.params.size() * 2);
    for (std::size_t i = 0; i + 1 < chain.points.size(); ++i) {
      params_out.push_back(chain.params[i]);
      points_out.push_back(chain.points[i]);
      const Complex a = chain.points[i];
      const Complex b = chain.points[i + 1];
      if (is_finite(a) && is_finite(b) && std::abs(a - b) > max_gap &&
          chain.params.size() + params_out.size() < cap) {
        const double tm = 0.5 * (chain.params[i] + chain.params[i + 1]);
        params_out.push_back(tm);
        points_out.push_back(chain.curve(tm));
        changed = true;
      }
    }
    params_out.push_back(chain.params.back());
    points_out.push_back(chain.points.back());
    chain.params = std::move(params_out);
    chain.points = std::move(points_out);
    if (!changed) break;
  }
  return chain;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(std::max<std::size_t>(n, 1));
  if (out.size() == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(out.size() - 1);
  }
  out.back() = b;
  return out;
}

inline BoundaryChain circle_chain(Complex center, double radius, std::size_t n) {
  if (radius == 0.0) {
    return make_chain([center](double) { return center; }, {0.0}, n);
  }
  return make_chain([center, radius](double t) { return center + std::polar(radius, t); },
                    linspace(0.0, 2.0 * kPi, n + 1), n);
}

inline BoundaryChain conj_chain(const BoundaryChain& chain) {
  BoundaryChain out;
  out.curve = [f = chain.curve](double t) { return std::conj(f(t)); };
  out.params = chain.params;
  out.points.reserve(chain.points.size());
  for (auto p : chain.points) out.points.push_back(std::conj(p));
  return out;
}

inline BoundaryChain map_chain(const BoundaryChain& chain, std::function<Complex(Complex)> g) {
  BoundaryChain out;
  out.curve = [f = chain.curve, g](double t) { return g(f(t)); };
  out.params = chain.params;
  out.points.reserve(chain.points.size());
  for (auto p : chain.points) out.points.push_back(g(p));
  return out;
}

/// Nearest boundary point to p (refined along the chain parameter).
struct BoundaryWitness {
  double distance = kInf;
  Complex point;
};

inline BoundaryWitness nearest_on_boundary(Complex p, const Boundary& boundary) {
  struct Candidate {
    double d;
    std::size_t chain;
    std::size_t index;
  };
  std::vector<Candidate> best;
  constexpr std::size_t kKeep = 4;
  for (std::size_t c = 0; c < boundary.size(); ++c) {
    const auto& pts = boundary[c].points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!is_finite(pts[i])) continue;
      const double d = std::abs(p - pts[i]);
      if (best.size() < kKeep || d < best.back().d) {
        best.push_back({d, c, i});
        std::sort(best.begin(), best.end(), [](auto& x, auto& y) { return x.d < y.d; });
        if (best.size() > kKeep) best.pop_back();
      }
    }
  }
  BoundaryWitness out;
  for (const auto& cand : best) {
    const auto& chain = boundary[cand.chain];
    double d = cand.d;
    Complex w = chain.points[cand.index];
    if (chain.params.size() > 1) {
      const std::size_t lo = cand.index == 0 ? 0 : cand.index - 1;
      const std::size_t hi = std::min(cand.index + 1, chain.params.size() - 1);
      auto f = [&](double t) {
        const Complex z = chain.curve(t);
        return is_finite(z) ? std::abs(p - z) : kInf;
      };
      const double t = golden_min(f, chain.params[lo], chain.params[hi]);
      const Complex z = chain.curve(t);
      if (is_finite(z) && std::abs(p - z) < d) {
        d = std::abs(p - z);
        w = z;
      }
    }
    if (d < out.distance) out = {d, w};
  }
  return out;
}

/// Keeps the parts of chains lying inside `keep`, with crossing points
/// located by bisection on the chain parameter.
inline Boundary clip_boundary(const Boundary& chains, const Region& keep, std::size_t resolution) {
  Boundary out;
  auto inside = [&](Complex z) { return is_finite(z) && keep.contains(z); };
  for (const auto& chain : chains) {
    const std::size_t n = chain.points.size();
    std::size_t i = 0;
    while (i < n) {
      if (!inside(chain.points[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < n && inside(chain.points[j + 1])) ++j;
      std::vector<double> params(chain.params.begin() + static_cast<std::ptrdiff_t>(i),
                                 chain.params.begin() + static_cast<std::ptrdiff_t>(j + 1));
      auto bisect = [&](double t_in, double t_out) {
        for (int k = 0; k < 60; ++k) {
          const double tm = 0.5 * (t_in + t_out);
          if (inside(chain.curve(tm))) {
            t_in = tm;
          } else {
            t_out = tm;
          }
        }
        return t_in;
      };
      if (i > 0 && is_finite(chain.points[i - 1])) {
        params.insert(params.begin(), bisect(chain.params[i], chain.params[i - 1]));
      }
      if (j + 1 < n && is_finite(chain.points[j + 1])) {
        params.push_back(bisect(chain.params[j], chain.params[j + 1]));
      }
      if (params.size() > 1 && params.size() < 17) {
        params = linspace(params.front(), params.back(), 17);
      }
      auto piece = make_chain(chain.curve, std::move(params), resolution);
      // drop refinement samples that fell outside on nonconvex pieces
      BoundaryChain kept;
      kept.curve = piece.curve;
      for (std::size_t k = 0; k < piece.points.size(); ++k) {
        if (inside(piece.points[k])) {
          kept.params.push_back(piece.params[k]);
          kept.points.push_back(piece.points[k]);
        }
      }
      if (!kept.points.empty()) out.push_back(std::move(kept));
      i = j + 1;
    }
  }
  return out;
}

/// Upper-envelope style lookup used by the closures: for each segment whose
/// first coordinate range covers x, interpolate the second coordinate.
inline std::optional<double> envelope_at(const std::vector<Segment>& segs, double x, bool take_max) {
  std::optional<double> best;
  for (const auto& [a, b] : segs) {
    const double lo = std::min(a.real(), b.real());
    const double hi = std::max(a.real(), b.real());
    if (x < lo - 1e-14 * (1.0 + std::abs(x)) || x > hi + 1e-14 * (1.0 + std::abs(x))) continue;
    double y;
    if (hi - lo <= 0.0) {
      y = take_max ? std::max(a.imag(), b.imag()) : std::min(a.imag(), b.imag());
    } else {
      const double t = std::clamp((x - a.real()) / (b.real() - a.real()), 0.0, 1.0);
      y = a.imag() + t * (b.imag() - a.imag());
    }
    if (!best || (take_max ? y > *best : y < *best)) best = y;
  }
  return best;
}

inline bool compute_includes_infinity(const NodeData& data) {
  return std::visit(
      overloaded{
          [](const LeafNode& leaf) {
            return std::visit(overloaded{[](const Disc&) { return false; },
                                         [](const HalfPlane&) { return true; },
                                         [](const AnnularSector& s) { return std::isinf(s.rmax); },
                                         [](const HulledCurve&) { return false; }},
                              leaf.primitive);
          },
          [](const UnionNode& u) {
            return std::any_of(u.operands.begin(), u.operands.end(),
                               [](const Region& r) { return r.includes_infinity(); });
          },
          [](const IntersectionNode& x) {
            return std::all_of(x.operands.begin(), x.operands.end(),
                               [](const Region& r) { return r.includes_infinity(); });
          },
          [](const InvertNode& inv) { return inv.operand.contains({0.0, 0.0}); },
          [](const AffineNode& a) { return a.operand.includes_infinity(); },
          [](const DilateNode& d) { return d.operand.includes_infinity(); },
          [](const PolygonNode&) { return false; },
          [](const CascadeNode&) { return false; },
          [](const CircleCurveNode&) { return false; },
          [](const ChordClosureNode& c) { return c.operand.includes_infinity(); },
          [](const ArcClosureNode& c) { return c.operand.includes_infinity(); }},
      data);
}

inline Region make_region(NodeData data, std::size_t resolution, bool outer_bound = false) {
  auto node = std::make_shared<Node>();
  node->includes_infinity = compute_includes_infinity(data);
  node->data = std::move(data);
  node->resolution = resolution;
  node->outer_bound = outer_bound;
  return Region(std::move(node));
}

inline std::size_t max_resolution(const std::vector<Region>& regions) {
  std::size_t n = 16;
  for (const auto& r : regions) n = std::max(n, r.resolution());
  return n;
}

inline bool any_outer(const std::vector<Region>& regions) {
  return std::any_of(regions.begin(), regions.end(), [](const Region& r) { return r.outer_bound(); });
}

// --- membership -----------------------------------------------------------

inline bool primitive_contains(const LeafNode& leaf, Complex z) {
  const double tol = tol_at(z);
  return std::visit(
      overloaded{
          [&](const Disc& d) {
            return std::abs(z - d.center) <= d.radius + tol ||
                   std::abs(z - std::conj(d.center)) <= d.radius + tol;
          },
          [&](const HalfPlane& h) {
            const Complex rot = std::conj(unit_vector(h.angle));
            return (z * rot).real() >= h.offset - tol ||
                   (std::conj(z) * rot).real() >= h.offset - tol;
          },
          [&](const AnnularSector& s) {
            const double r = std::abs(z);
            if (r < s.rmin - tol || r > s.rmax + tol) return false;
            if (r <= tol) return s.rmin <= tol;
            return std::abs(std::arg(z)) <= s.phimax + kMemberTol * 10.0 + tol / r;
          },
          [&](const HulledCurve&) {
            if (leaf.klein.empty()) return false;
            const Complex upper{z.real(), std::abs(z.imag())};
            const Complex w = bk_map(upper);
            return convex_polygon_distance(w, leaf.klein) <= kMemberTol * 10.0;
          }},
      leaf.primitive);
}

}  // namespace detail

// --- Region factories -------------------------------------------------------

inline Region Region::from_primitive(Primitive primitive, std::size_t resolution) {
  detail::LeafNode leaf{std::move(primitive), {}};
  std::visit(detail::overloaded{
                 [](const Disc& d) {
                   if (!(d.radius >= 0.0) || !is_finite(d.center)) {
                     throw InputError("disc: radius must be >= 0 and centre finite");
                   }
                 },
                 [](const HalfPlane& h) {
                   if (!std::isfinite(h.angle) || !std::isfinite(h.offset)) {
                     throw InputError("half-plane: angle and offset must be finite");
                   }
                 },
                 [](const AnnularSector& s) {
                   if (!(s.rmin >= 0.0) || !(s.rmax >= s.rmin) || !(s.phimax >= 0.0) ||
                       !(s.phimax <= kPi + 1e-15) || std::isinf(s.rmin)) {
                     throw InputError("annular sector: need 0 <= rmin <= rmax, 0 <= phimax <= pi");
                   }
                 },
                 [&leaf](HulledCurve& h) {
                   if (h.samples.empty()) throw InputError("hulled curve: no samples");
                   std::vector<Complex> mapped;
                   mapped.reserve(h.samples.size());
                   for (auto& s : h.samples) {
                     if (!is_finite(s)) throw InputError("hulled curve: non-finite sample");
                     s = {s.real(), std::abs(s.imag())};
                     mapped.push_back(bk_map(s));
                   }
                   leaf.klein = convex_hull(std::move(mapped));
                 }},
             leaf.primitive);
  return detail::make_region(std::move(leaf), resolution);
}

inline Region Region::disc(Complex center, double radius) {
  return from_primitive(Disc{center, radius});
}

inline Region Region::half_plane(double angle, double offset) {
  return from_primitive(HalfPlane{angle, offset});
}

inline Region Region::annular_sector(double rmin, double rmax, double phimax) {
  return from_primitive(AnnularSector{rmin, rmax, phimax});
}

inline Region Region::hulled_curve(std::vector<Complex> upper_samples) {
  return from_primitive(HulledCurve{std::move(upper_samples)});
}

inline Region Region::convex_polygon(std::vector<Complex> vertices) {
  if (vertices.empty()) throw InputError("convex polygon: no vertices");
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_finite(vertices[i])) throw InputError("convex polygon: non-finite vertex");
    vertices.push_back(std::conj(vertices[i]));
  }
  return detail::make_region(detail::PolygonNode{convex_hull(std::move(vertices))},
                             default_resolution());
}

inline Region Region::cascade(std::vector<double> gammas, double scale) {
  if (gammas.empty()) throw InputError("cascade: need at least one gain");
  for (double g : gammas) {
    if (!(g > 0.0) || !std::isfinite(g)) throw InputError("cascade: gains must be positive");
  }
  if (!(scale > 0.0)) throw InputError("cascade: scale must be positive");
  return detail::make_region(detail::CascadeNode{std::move(gammas), scale},
                             std::max<std::size_t>(default_resolution(), 4096));
}

inline Region Region::circle_curve(Complex center, double radius) {
  if (!(radius >= 0.0)) throw InputError("circle: radius must be >= 0");
  return detail::make_region(detail::CircleCurveNode{center, radius}, default_resolution());
}

inline Region Region::union_of(std::vector<Region> operands) {
  if (operands.empty()) throw InputError("union: no operands");
  if (operands.size() == 1) return operands.front();
  const auto n = detail::max_resolution(operands);
  const bool outer = detail::any_outer(operands);
  return detail::make_region(detail::UnionNode{std::move(operands)}, n, outer);
}

inline Region Region::intersection(Region a, Region b) {
  std::vector<Region> ops{std::move(a), std::move(b)};
  const auto n = detail::max_resolution(ops);
  const bool outer = detail::any_outer(ops);
  return detail::make_region(detail::IntersectionNode{std::move(ops)}, n, outer);
}

inline Region Region::inverted(Region operand) {
  const auto n = operand.resolution();
  const bool outer = operand.outer_bound();
  return detail::make_region(detail::InvertNode{std::move(operand)}, n, outer);
}

inline Region Region::affine(Region operand, double scale, double shift) {
  if (scale == 0.0 || !std::isfinite(scale) || !std::isfinite(shift)) {
    throw InputError("affine map: scale must be finite and nonzero");
  }
  const auto n = operand.resolution();
  const bool outer = operand.outer_bound();
  return detail::make_region(detail::AffineNode{std::move(operand), scale, shift}, n, outer);
}

inline Region Region::dilated(Region operand, double center, double radius) {
  if (!(radius >= 0.0)) throw InputError("dilation: radius must be >= 0");
  const auto n = operand.resolution();
  const bool outer = operand.outer_bound();
  return detail::make_region(detail::DilateNode{std::move(operand), center, radius}, n, outer);
}

inline Region Region::chord_closure(Region operand) {
  std::vector<detail::Segment> segs;
  for (const auto& chain : operand.boundary()) {
    const auto& pts = chain.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!is_finite(pts[i])) continue;
      const Complex a{pts[i].real(), std::abs(pts[i].imag())};
      if (i + 1 < pts.size() && is_finite(pts[i + 1])) {
        segs.emplace_back(a, Complex{pts[i + 1].real(), std::abs(pts[i + 1].imag())});
      } else {
        segs.emplace_back(a, a);
      }
    }
  }
  const auto n = operand.resolution();
  const bool outer = operand.outer_bound();
  return detail::make_region(detail::ChordClosureNode{std::move(operand), std::move(segs)}, n,
                             outer);
}

inline Region Region::arc_closure(Region operand, ArcSide side) {
  std::vector<detail::Segment> segs;
  auto polar_of = [](Complex z) { return Complex{std::abs(z), std::abs(std::arg(z))}; };
  for (const auto& chain : operand.boundary()) {
    const auto& pts = chain.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!is_finite(pts[i])) continue;
      const Complex a = polar_of(pts[i]);
      if (i + 1 < pts.size() && is_finite(pts[i + 1])) {
        segs.emplace_back(a, polar_of(pts[i + 1]));
      } else {
        segs.emplace_back(a, a);
      }
    }
  }
  const auto n = operand.resolution();
  const bool outer = operand.outer_bound();
  return detail::make_region(detail::ArcClosureNode{std::move(operand), side, std::move(segs)}, n,
                             outer);
}

// --- Region queries ---------------------------------------------------------

inline bool Region::includes_infinity() const { return node_->includes_infinity; }
inline std::size_t Region::resolution() const { return node_->resolution; }
inline bool Region::outer_bound() const { return node_->outer_bound; }

inline Region Region::mark_outer_bound() const {
  auto node = std::make_shared<detail::Node>();
  node->data = node_->data;
  node->resolution = node_->resolution;
  node->includes_infinity = node_->includes_infinity;
  node->outer_bound = true;
  return Region(std::move(node));
}

inline bool Region::contains(Complex z) const {
  using namespace detail;
  if (is_infinite(z)) return includes_infinity();
  return std::visit(
      overloaded{
          [&](const LeafNode& leaf) { return primitive_contains(leaf, z); },
          [&](const UnionNode& u) {
            return std::any_of(u.operands.begin(), u.operands.end(),
                               [&](const Region& r) { return r.contains(z); });
          },
          [&](const IntersectionNode& x) {
            return std::all_of(x.operands.begin(), x.operands.end(),
                               [&](const Region& r) { return r.contains(z); });
          },
          [&](const InvertNode& inv) {
            if (z == Complex{0.0, 0.0}) return inv.operand.includes_infinity();
            return inv.operand.contains(mobius_invert(z));
          },
          [&](const AffineNode& a) { return a.operand.contains((z - a.shift) / a.scale); },
          [&](const DilateNode& d) {
            const Complex p = z - d.center;
            if (d.operand.contains(p)) return true;
            return nearest_on_boundary(p, d.operand.boundary()).distance <= d.radius + tol_at(z);
          },
          [&](const PolygonNode& poly) {
            return convex_polygon_distance(z, poly.vertices) <= tol_at(z);
          },
          [&](const CascadeNode& c) {
            const double n = static_cast<double>(c.gammas.size());
            double gain = c.scale;
            for (double g : c.gammas) gain *= g;
            const double r = std::abs(z);
            if (r <= tol_at(z)) return true;
            const double cs = std::max(0.0, std::cos(std::arg(z) / n));
            return r <= gain * std::pow(cs, n) + tol_at(z);
          },
          [&](const CircleCurveNode& c) {
            const double tol = 1e-9 * (1.0 + c.radius);
            return std::abs(std::abs(z - c.center) - c.radius) <= tol ||
                   std::abs(std::abs(z - std::conj(c.center)) - c.radius) <= tol;
          },
          [&](const ChordClosureNode& c) {
            if (c.operand.contains(z)) return true;
            const auto env = envelope_at(c.segments, z.real(), true);
            return env && std::abs(z.imag()) <= *env + tol_at(z);
          },
          [&](const ArcClosureNode& c) {
            if (c.operand.contains(z)) return true;
            const double r = std::abs(z);
            const double a = std::abs(std::arg(z));
            const bool right = c.side == ArcSide::kRight;
            const auto env = envelope_at(c.segments, r, right);
            if (!env) return false;
            return right ? a <= *env + 1e-12 : a >= *env - 1e-12;
          }},
      node_->data);
}

namespace detail {

inline Boundary build_boundary(const Node& node) {
  const std::size_t n = node.resolution;
  Boundary out;
  std::visit(
      overloaded{
          [&](const LeafNode& leaf) {
            std::visit(
                overloaded{
                    [&](const Disc& d) {
                      out.push_back(circle_chain(d.center, d.radius, n));
                      if (d.center.imag() != 0.0) out.push_back(conj_chain(out.back()));
                    },
                    [&](const HalfPlane& h) {
                      const Complex p0 = h.offset * unit_vector(h.angle);
                      const Complex dir = Complex{0.0, 1.0} * unit_vector(h.angle);
                      out.push_back(make_chain(
                          [p0, dir](double t) { return p0 + std::tan(t) * dir; },
                          linspace(-kLineParamLimit, kLineParamLimit, n + 1), n));
                      if (!is_real_axis_angle(h.angle)) out.push_back(conj_chain(out.back()));
                    },
                    [&](const AnnularSector& s) {
                      auto radial = [&](double angle) {
                        const Complex dir = std::polar(1.0, angle);
                        if (std::isinf(s.rmax)) {
                          return make_chain(
                              [dir, r0 = s.rmin](double t) { return (r0 + std::tan(t)) * dir; },
                              linspace(0.0, kLineParamLimit, n / 2 + 1), n);
                        }
                        return make_chain([dir](double r) { return r * dir; },
                                          linspace(s.rmin, s.rmax, n / 2 + 1), n);
                      };
                      auto arc = [&](double r) {
                        return make_chain([r](double t) { return std::polar(r, t); },
                                          linspace(-s.phimax, s.phimax, n + 1), n);
                      };
                      if (s.rmin == s.rmax && s.phimax == 0.0) {
                        out.push_back(make_chain([r = s.rmin](double) { return Complex{r, 0.0}; },
                                                 {0.0}, n));
                        return;
                      }
                      if (std::isfinite(s.rmax) && s.phimax > 0.0) out.push_back(arc(s.rmax));
                      if (s.rmin > 0.0 && s.phimax > 0.0) out.push_back(arc(s.rmin));
                      if (s.phimax < kPi || s.rmin == s.rmax) {
                        out.push_back(radial(s.phimax));
                        if (s.phimax > 0.0) out.push_back(radial(-s.phimax));
                      }
                    },
                    [&](const HulledCurve&) {
                      const auto& k = leaf.klein;
                      if (k.size() == 1) {
                        const Complex z = bk_unmap(k[0]);
                        out.push_back(make_chain([z](double) { return z; }, {0.0}, n));
                        if (z.imag() != 0.0) out.push_back(conj_chain(out.back()));
                        return;
                      }
                      const std::size_t edges = k.size() == 2 ? 1 : k.size();
                      double perimeter = 0.0;
                      for (std::size_t e = 0; e < edges; ++e) {
                        perimeter += std::abs(k[(e + 1) % k.size()] - k[e]);
                      }
                      std::vector<double> params;
                      for (std::size_t e = 0; e < edges; ++e) {
                        const double len = std::abs(k[(e + 1) % k.size()] - k[e]);
                        const auto extra = static_cast<std::size_t>(
                            perimeter > 0.0 ? std::floor(len / perimeter * static_cast<double>(n))
                                            : 0.0);
                        for (std::size_t s = 0; s <= extra; ++s) {
                          params.push_back(static_cast<double>(e) +
                                           static_cast<double>(s) / static_cast<double>(extra + 1));
                        }
                      }
                      params.push_back(static_cast<double>(edges));
                      auto curve = [k, edges](double t) {
                        const double ts = std::clamp(t, 0.0, static_cast<double>(edges));
                        auto e = static_cast<std::size_t>(std::floor(ts));
                        if (e >= edges) e = edges - 1;
                        const double f = ts - static_cast<double>(e);
                        const Complex w = k[e] + f * (k[(e + 1) % k.size()] - k[e]);
                        const double m = std::abs(w);
                        return bk_unmap(m > 1.0 ? w / m : w);
                      };
                      out.push_back(make_chain(curve, std::move(params), n));
                      out.push_back(conj_chain(out.back()));
                    }},
                leaf.primitive);
          },
          [&](const UnionNode& u) {
            for (const auto& r : u.operands) {
              const auto& b = r.boundary();
              out.insert(out.end(), b.begin(), b.end());
            }
          },
          [&](const IntersectionNode& x) {
            for (std::size_t i = 0; i < x.operands.size(); ++i) {
              Boundary pieces = x.operands[i].boundary();
              for (std::size_t j = 0; j < x.operands.size(); ++j) {
                if (i != j) pieces = clip_boundary(pieces, x.operands[j], n);
              }
              out.insert(out.end(), pieces.begin(), pieces.end());
            }
          },
          [&](const InvertNode& inv) {
            for (const auto& chain : inv.operand.boundary()) {
              out.push_back(map_chain(chain, [](Complex z) { return mobius_invert(z); }));
            }
          },
          [&](const AffineNode& a) {
            for (const auto& chain : a.operand.boundary()) {
              out.push_back(map_chain(chain, [s = a.scale, c = a.shift](Complex z) {
                return s * z + c;
              }));
            }
          },
          [&](const DilateNode& d) {
            // Offset curves on both sides plus small circles at chain ends and
            // corners; every sample is within `radius` of the operand.
            const std::size_t ring = 32;
            for (const auto& chain : d.operand.boundary()) {
              out.push_back(map_chain(chain, [c = d.center](Complex z) { return z + c; }));
              if (d.radius == 0.0) continue;
              const auto& pts = chain.points;
              if (pts.size() == 1) {
                out.push_back(circle_chain(pts[0] + d.center, d.radius, ring));
                continue;
              }
              const double span = chain.params.back() - chain.params.front();
              const double h = std::max(1e-9 * (1.0 + std::abs(span)), 1e-7 * std::abs(span));
              for (double side : {1.0, -1.0}) {
                auto curve = [f = chain.curve, h, side, c = d.center, r = d.radius](double t) {
                  const Complex tangent = f(t + h) - f(t - h);
                  const double m = std::abs(tangent);
                  const Complex normal =
                      m > 0.0 && std::isfinite(m) ? Complex{0.0, side} * tangent / m : Complex{0, 0};
                  return f(t) + c + r * normal;
                };
                out.push_back(make_chain(curve, chain.params, n));
              }
              for (std::size_t i = 0; i < pts.size(); ++i) {
                if (!is_finite(pts[i])) continue;
                bool corner = i == 0 || i + 1 == pts.size();
                if (!corner && is_finite(pts[i - 1]) && is_finite(pts[i + 1])) {
                  const Complex a = pts[i] - pts[i - 1];
                  const Complex b = pts[i + 1] - pts[i];
                  if (std::abs(a) > 0.0 && std::abs(b) > 0.0) {
                    corner = std::abs(std::arg(b / a)) > 0.02;
                  }
                }
                if (corner) out.push_back(circle_chain(pts[i] + d.center, d.radius, ring));
              }
            }
          },
          [&](const PolygonNode& poly) {
            const auto& v = poly.vertices;
            if (v.size() == 1) {
              out.push_back(make_chain([z = v[0]](double) { return z; }, {0.0}, n));
              return;
            }
            const std::size_t edges = v.size() == 2 ? 1 : v.size();
            std::vector<double> params;
            const std::size_t per_edge = std::max<std::size_t>(1, n / edges);
            for (std::size_t e = 0; e < edges; ++e) {
              for (std::size_t s = 0; s < per_edge; ++s) {
                params.push_back(static_cast<double>(e) +
                                 static_cast<double>(s) / static_cast<double>(per_edge));
              }
            }
            params.push_back(static_cast<double>(edges));
            out.push_back(make_chain(
                [v, edges](double t) {
                  const double ts = std::clamp(t, 0.0, static_cast<double>(edges));
                  auto e = static_cast<std::size_t>(std::floor(ts));
                  if (e >= edges) e = edges - 1;
                  const double f = ts - static_cast<double>(e);
                  return v[e] + f * (v[(e + 1) % v.size()] - v[e]);
                },
                std::move(params), n));
          },
          [&](const CascadeNode& c) {
            double gain = c.scale;
            for (double g : c.gammas) gain *= g;
            const double m = static_cast<double>(c.gammas.size());
            auto curve = [gain, m](double phi) {
              const double cs = std::max(0.0, std::cos(phi / m));
              return gain * std::pow(cs, m) * std::polar(1.0, -phi);
            };
            out.push_back(make_chain(curve, linspace(-kPi, kPi, n + 1), n));
          },
          [&](const CircleCurveNode& c) {
            out.push_back(circle_chain(c.center, c.radius, n));
            if (c.center.imag() != 0.0) out.push_back(conj_chain(out.back()));
          },
          [&](const ChordClosureNode& c) {
            const auto& b = c.operand.boundary();
            out.insert(out.end(), b.begin(), b.end());
            double lo = kInf, hi = -kInf;
            for (const auto& [a, e] : c.segments) {
              lo = std::min({lo, a.real(), e.real()});
              hi = std::max({hi, a.real(), e.real()});
            }
            if (!(hi >= lo)) return;
            auto segs = c.segments;
            auto upper = [segs, lo, hi](double x) {
              const auto y = envelope_at(segs, std::clamp(x, lo, hi), true);
              return Complex{std::clamp(x, lo, hi), y.value_or(0.0)};
            };
            out.push_back(make_chain(upper, linspace(lo, hi, n + 1), n));
            out.push_back(conj_chain(out.back()));
          },
          [&](const ArcClosureNode& c) {
            const auto& b = c.operand.boundary();
            out.insert(out.end(), b.begin(), b.end());
            double lo = kInf, hi = -kInf;
            for (const auto& [a, e] : c.segments) {
              lo = std::min({lo, a.real(), e.real()});
              hi = std::max({hi, a.real(), e.real()});
            }
            if (!(hi >= lo) || !std::isfinite(hi)) return;
            auto segs = c.segments;
            const bool right = c.side == ArcSide::kRight;
            auto env = [segs, lo, hi, right](double r) {
              const double rr = std::clamp(r, lo, hi);
              const auto a = envelope_at(segs, rr, right);
              return std::polar(rr, a.value_or(0.0));
            };
            out.push_back(make_chain(env, linspace(lo, hi, n + 1), n));
            out.push_back(conj_chain(out.back()));
          }},
      node.data);
  return out;
}

}  // namespace detail

inline const Boundary& Region::boundary() const {
  std::call_once(node_->once, [this] { node_->boundary = detail::build_boundary(*node_); });
  return node_->boundary;
}

inline std::vector<Complex> Region::boundary_points() const {
  std::vector<Complex> out;
  for (const auto& chain : boundary()) {
    for (auto p : chain.points) {
      if (is_finite(p)) out.push_back(p);
    }
  }
  return out;
}

inline std::optional<Primitive> Region::primitive() const {
  if (const auto* leaf = std::get_if<detail::LeafNode>(&node_->data)) return leaf->primitive;
  return std::nullopt;
}

inline std::vector<Primitive> Region::primitives() const {
  if (auto p = primitive()) return {*p};
  std::vector<Primitive> out;
  if (const auto* u = std::get_if<detail::UnionNode>(&node_->data)) {
    for (const auto& r : u->operands) {
      auto sub = r.primitives();
      if (sub.empty()) return {};
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

inline Region Region::with_resolution(std::size_t resolution) const {
  using namespace detail;
  resolution = std::max<std::size_t>(resolution, 16);
  auto rebuild = [resolution](const Region& r) { return r.with_resolution(resolution); };
  NodeData data = std::visit(
      overloaded{
          [](const LeafNode& leaf) -> NodeData { return leaf; },
          [&](const UnionNode& u) -> NodeData {
            UnionNode out;
            for (const auto& r : u.operands) out.operands.push_back(rebuild(r));
            return out;
          },
          [&](const IntersectionNode& x) -> NodeData {
            IntersectionNode out;
            for (const auto& r : x.operands) out.operands.push_back(rebuild(r));
            return out;
          },
          [&](const InvertNode& i) -> NodeData { return InvertNode{rebuild(i.operand)}; },
          [&](const AffineNode& a) -> NodeData {
            return AffineNode{rebuild(a.operand), a.scale, a.shift};
          },
          [&](const DilateNode& d) -> NodeData {
            return DilateNode{rebuild(d.operand), d.center, d.radius};
          },
          [](const PolygonNode& p) -> NodeData { return p; },
          [](const CascadeNode& c) -> NodeData { return c; },
          [](const CircleCurveNode& c) -> NodeData { return c; },
          [&](const ChordClosureNode& c) -> NodeData {
            return std::get<ChordClosureNode>(Region::chord_closure(rebuild(c.operand)).node().data);
          },
          [&](const ArcClosureNode& c) -> NodeData {
            return std::get<ArcClosureNode>(
                Region::arc_closure(rebuild(c.operand), c.side).node().data);
          }},
      node_->data);
  return make_region(std::move(data), resolution, node_->outer_bound);
}

}  // namespace srgkit
