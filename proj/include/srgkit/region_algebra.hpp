#pragma once

// Set algebra on Regions: h-convex hulls, distances, real affine maps,
// inversion, Minkowski sums and products, chord/arc closures.
//
// Exact primitive rules are used where a closed form exists; every other
// composite result is an outer bound (never smaller than the true set).

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "srgkit/geometry.hpp"
#include "srgkit/region.hpp"

namespace srgkit {

/// Filled h-convex hull of points in the closed upper half-plane, mirrored.
inline Region h_convex_hull(const std::vector<Complex>& points) {
  if (points.empty()) throw InputError("h_convex_hull: empty point list");
  for (auto p : points) {
    if (!is_finite(p)) throw InputError("h_convex_hull: non-finite point");
    if (p.imag() < 0.0) throw InputError("h_convex_hull: points must satisfy Im >= 0");
  }
  return Region::hulled_curve(points);
}

/// Intersection with the disc |z| <= radius; turns unbounded regions into
/// bounded crops for operations that reject infinity.
inline Region region_crop(const Region& a, double radius) {
  return Region::intersection(a, Region::disc({0.0, 0.0}, radius));
}

// --- distance -----------------------------------------------------------------

struct DistanceReport {
  double value = kInf;
  /// Local boundary sample spacing at the witnesses (0 for closed forms).
  double certificate = 0.0;
  Complex witness_a;
  Complex witness_b;
  bool exact = false;
};

namespace detail {

inline double local_spacing(const BoundaryChain& chain, std::size_t i) {
  double s = 0.0;
  const auto& p = chain.points;
  if (i > 0 && is_finite(p[i - 1]) && is_finite(p[i])) s = std::max(s, std::abs(p[i] - p[i - 1]));
  if (i + 1 < p.size() && is_finite(p[i + 1]) && is_finite(p[i])) {
    s = std::max(s, std::abs(p[i + 1] - p[i]));
  }
  return s;
}

struct SampleRef {
  std::size_t chain = 0;
  std::size_t index = 0;
};

inline std::pair<double, double> neighbour_interval(const BoundaryChain& chain, std::size_t i) {
  const std::size_t lo = i == 0 ? 0 : i - 1;
  const std::size_t hi = std::min(i + 1, chain.params.size() - 1);
  return {chain.params[lo], chain.params[hi]};
}

/// Largest value of the linear functional Re(z e^{-j angle}) over region r.
inline std::pair<double, Complex> max_directional(const Region& r, double angle) {
  const Complex rot = std::conj(unit_vector(angle));
  const auto& boundary = r.boundary();
  double best = -kInf;
  Complex witness;
  SampleRef ref;
  bool found = false;
  for (std::size_t c = 0; c < boundary.size(); ++c) {
    for (std::size_t i = 0; i < boundary[c].points.size(); ++i) {
      const Complex z = boundary[c].points[i];
      if (!is_finite(z)) continue;
      const double v = (z * rot).real();
      if (v > best) {
        best = v;
        witness = z;
        ref = {c, i};
        found = true;
      }
    }
  }
  if (!found) throw InputError("region has no boundary samples (empty region)");
  const auto& chain = boundary[ref.chain];
  if (chain.params.size() > 1) {
    const auto [a, b] = neighbour_interval(chain, ref.index);
    auto f = [&](double t) {
      const Complex z = chain.curve(t);
      return is_finite(z) ? -(z * rot).real() : kInf;
    };
    const double t = golden_min(f, a, b);
    const Complex z = chain.curve(t);
    if (is_finite(z) && (z * rot).real() > best) {
      best = (z * rot).real();
      witness = z;
    }
  }
  return {best, witness};
}

inline DistanceReport disc_disc(const Disc& a, const Disc& b) {
  DistanceReport out;
  out.exact = true;
  const Complex cb = std::abs(a.center - b.center) <= std::abs(a.center - std::conj(b.center))
                         ? b.center
                         : std::conj(b.center);
  const double d = std::abs(a.center - cb);
  out.value = std::max(0.0, d - a.radius - b.radius);
  const Complex u = d > 0.0 ? (cb - a.center) / d : Complex{1.0, 0.0};
  out.witness_a = a.center + a.radius * u;
  out.witness_b = cb - b.radius * u;
  return out;
}

inline DistanceReport disc_half_plane(const Disc& d, const HalfPlane& h) {
  DistanceReport out;
  out.exact = true;
  const Complex n = unit_vector(h.angle);
  const Complex rot = std::conj(n);
  Complex c = d.center;
  if ((std::conj(c) * rot).real() > (c * rot).real()) c = std::conj(c);
  const double v = (c * rot).real() - h.offset;
  out.value = std::max(0.0, -v - d.radius);
  out.witness_a = c + d.radius * n;
  out.witness_b = c - v * n;
  return out;
}

inline DistanceReport half_plane_pair(const HalfPlane& a, const HalfPlane& b) {
  DistanceReport out;
  out.exact = true;
  out.value = 0.0;
  // mirrored copies have normal angles +-angle
  for (double sa : {1.0, -1.0}) {
    for (double sb : {1.0, -1.0}) {
      const Complex na = std::polar(1.0, sa * a.angle);
      const Complex nb = std::polar(1.0, sb * b.angle);
      if (std::abs(na + nb) > 1e-12) return out;  // some pair is not anti-parallel
    }
  }
  out.value = std::max(0.0, a.offset + b.offset);
  const Complex n = std::polar(1.0, a.angle);
  out.witness_a = a.offset * n;
  out.witness_b = -b.offset * n;
  return out;
}

}  // namespace detail

/// Distance from a point to a region (0 when inside), with boundary witness.
inline DistanceReport point_region_distance(Complex p, const Region& r) {
  DistanceReport out;
  out.witness_a = p;
  if (r.contains(p)) {
    out.value = 0.0;
    out.witness_b = p;
    return out;
  }
  if (auto prim = r.primitive()) {
    if (const auto* d = std::get_if<Disc>(&*prim)) return detail::disc_disc(Disc{p, 0.0}, *d);
    if (const auto* h = std::get_if<HalfPlane>(&*prim)) {
      return detail::disc_half_plane(Disc{p, 0.0}, *h);
    }
  }
  const auto w = detail::nearest_on_boundary(p, r.boundary());
  if (!std::isfinite(w.distance)) throw InputError("region has no boundary samples (empty region)");
  out.value = w.distance;
  out.witness_b = w.point;
  // spacing at the nearest sample
  double best = kInf;
  for (const auto& chain : r.boundary()) {
    for (std::size_t i = 0; i < chain.points.size(); ++i) {
      if (!is_finite(chain.points[i])) continue;
      const double d = std::abs(chain.points[i] - w.point);
      if (d < best) {
        best = d;
        out.certificate = detail::local_spacing(chain, i);
      }
    }
  }
  return out;
}

namespace detail {

inline DistanceReport half_plane_region(const HalfPlane& h, const Region& r) {
  const auto [vmax, witness] = max_directional(r, h.angle);
  DistanceReport out;
  out.value = std::max(0.0, h.offset - vmax);
  out.witness_b = witness;
  out.witness_a = witness + (h.offset - vmax) * std::polar(1.0, h.angle);
  return out;
}

inline DistanceReport generic_distance(const Region& a, const Region& b) {
  const auto& ba = a.boundary();
  const auto& bb = b.boundary();
  DistanceReport out;
  // overlap test: any boundary sample of one inside the other
  for (const auto& [x, y] : {std::pair{&ba, &b}, std::pair{&bb, &a}}) {
    for (const auto& chain : *x) {
      for (auto z : chain.points) {
        if (is_finite(z) && y->contains(z)) {
          out.value = 0.0;
          out.witness_a = out.witness_b = z;
          return out;
        }
      }
    }
  }
  double best = kInf;
  SampleRef ra, rb;
  for (std::size_t ca = 0; ca < ba.size(); ++ca) {
    for (std::size_t ia = 0; ia < ba[ca].points.size(); ++ia) {
      const Complex za = ba[ca].points[ia];
      if (!is_finite(za)) continue;
      for (std::size_t cb = 0; cb < bb.size(); ++cb) {
        for (std::size_t ib = 0; ib < bb[cb].points.size(); ++ib) {
          const Complex zb = bb[cb].points[ib];
          if (!is_finite(zb)) continue;
          const double d = std::norm(za - zb);
          if (d < best) {
            best = d;
            ra = {ca, ia};
            rb = {cb, ib};
          }
        }
      }
    }
  }
  if (!std::isfinite(best)) throw InputError("region has no boundary samples (empty region)");
  const auto& chain_a = ba[ra.chain];
  const auto& chain_b = bb[rb.chain];
  Complex pa = chain_a.points[ra.index];
  Complex pb = chain_b.points[rb.index];
  auto refine = [](const BoundaryChain& chain, std::size_t idx, Complex target, Complex current) {
    if (chain.params.size() < 2) return current;
    const auto [lo, hi] = neighbour_interval(chain, idx);
    auto f = [&](double t) {
      const Complex z = chain.curve(t);
      return is_finite(z) ? std::abs(z - target) : kInf;
    };
    const Complex z = chain.curve(golden_min(f, lo, hi));
    return is_finite(z) && std::abs(z - target) < std::abs(current - target) ? z : current;
  };
  for (int round = 0; round < 4; ++round) {
    pa = refine(chain_a, ra.index, pb, pa);
    pb = refine(chain_b, rb.index, pa, pb);
  }
  out.value = std::abs(pa - pb);
  out.witness_a = pa;
  out.witness_b = pb;
  out.certificate =
      std::max(local_spacing(chain_a, ra.index), local_spacing(chain_b, rb.index));
  return out;
}

inline DistanceReport swap_witnesses(DistanceReport r) {
  std::swap(r.witness_a, r.witness_b);
  return r;
}

inline DistanceReport ordered_distance(const Region& a, const Region& b) {
  const auto pa = a.primitive();
  const auto pb = b.primitive();
  const Disc* da = pa ? std::get_if<Disc>(&*pa) : nullptr;
  const Disc* db = pb ? std::get_if<Disc>(&*pb) : nullptr;
  const HalfPlane* ha = pa ? std::get_if<HalfPlane>(&*pa) : nullptr;
  const HalfPlane* hb = pb ? std::get_if<HalfPlane>(&*pb) : nullptr;
  if (da && db) return disc_disc(*da, *db);
  if (da && hb) return disc_half_plane(*da, *hb);
  if (ha && db) return swap_witnesses(disc_half_plane(*db, *ha));
  if (ha && hb) return half_plane_pair(*ha, *hb);
  if (da && da->center.imag() == 0.0) {
    auto r = point_region_distance(da->center, b);
    const double raw = r.value;
    r.value = std::max(0.0, raw - da->radius);
    if (raw > 0.0) r.witness_a = da->center + da->radius * (r.witness_b - da->center) / raw;
    r.exact = false;
    return r;
  }
  if (db && db->center.imag() == 0.0) return swap_witnesses(ordered_distance(b, a));
  if (ha) return half_plane_region(*ha, b);
  if (hb) return swap_witnesses(half_plane_region(*hb, a));
  return generic_distance(a, b);
}

}  // namespace detail

/// inf |a - b| over a in A, b in B, with witnesses and sampling certificate.
/// Symmetric: the smaller of both evaluation orders is reported.
inline DistanceReport region_distance_report(const Region& a, const Region& b) {
  auto ab = detail::ordered_distance(a, b);
  if (ab.exact) return ab;
  auto ba = detail::swap_witnesses(detail::ordered_distance(b, a));
  if (ba.value < ab.value) return ba;
  return ab;
}

inline double region_distance(const Region& a, const Region& b) {
  return region_distance_report(a, b).value;
}

/// Hausdorff distance between the sampled boundaries (bounded regions).
inline double boundary_hausdorff(const Region& a, const Region& b) {
  double h = 0.0;
  for (const auto& [x, y] : {std::pair{&a, &b}, std::pair{&b, &a}}) {
    for (auto z : x->boundary_points()) {
      h = std::max(h, detail::nearest_on_boundary(z, y->boundary()).distance);
    }
  }
  return h;
}

// --- affine maps and inversion ------------------------------------------------

namespace detail {

inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace detail

/// Pointwise alpha * A for real alpha != 0.
inline Region region_scale(const Region& a, double alpha) {
  using namespace detail;
  if (alpha == 0.0 || !std::isfinite(alpha)) throw InputError("region_scale: alpha must be nonzero");
  if (alpha == 1.0) return a;
  const auto n = a.resolution();
  auto keep_flags = [&](Region r) { return a.outer_bound() ? r.mark_outer_bound() : r; };
  if (auto prim = a.primitive()) {
    std::optional<Primitive> out = std::visit(
        overloaded{
            [&](const Disc& d) -> std::optional<Primitive> {
              return Disc{alpha * d.center, std::abs(alpha) * d.radius};
            },
            [&](const HalfPlane& h) -> std::optional<Primitive> {
              if (alpha > 0.0) return HalfPlane{h.angle, alpha * h.offset};
              return HalfPlane{wrap_angle(h.angle + kPi), -alpha * h.offset};
            },
            [&](const AnnularSector& s) -> std::optional<Primitive> {
              if (alpha < 0.0 && s.phimax < kPi) return std::nullopt;
              const double k = std::abs(alpha);
              return AnnularSector{k * s.rmin, k * s.rmax, s.phimax};
            },
            [&](const HulledCurve& h) -> std::optional<Primitive> {
              HulledCurve out;
              for (auto s : h.samples) out.samples.push_back(alpha > 0.0 ? alpha * s : alpha * std::conj(s));
              return out;
            }},
        *prim);
    if (out) return keep_flags(Region::from_primitive(std::move(*out), n));
  }
  const auto& data = a.node().data;
  if (const auto* c = std::get_if<CascadeNode>(&data); c && alpha > 0.0) {
    return keep_flags(Region::cascade(c->gammas, c->scale * alpha));
  }
  if (const auto* p = std::get_if<PolygonNode>(&data)) {
    std::vector<Complex> v;
    for (auto z : p->vertices) v.push_back(alpha * z);
    return keep_flags(Region::convex_polygon(std::move(v)));
  }
  if (const auto* c = std::get_if<CircleCurveNode>(&data)) {
    return keep_flags(Region::circle_curve(alpha * c->center, std::abs(alpha) * c->radius));
  }
  if (const auto* f = std::get_if<AffineNode>(&data)) {
    return Region::affine(f->operand, alpha * f->scale, alpha * f->shift);
  }
  return Region::affine(a, alpha, 0.0);
}

/// Pointwise c + A for real c.
inline Region region_shift(const Region& a, double c) {
  using namespace detail;
  if (!std::isfinite(c)) throw InputError("region_shift: shift must be finite");
  if (c == 0.0) return a;
  const auto n = a.resolution();
  auto keep_flags = [&](Region r) { return a.outer_bound() ? r.mark_outer_bound() : r; };
  if (auto prim = a.primitive()) {
    std::optional<Primitive> out = std::visit(
        overloaded{
            [&](const Disc& d) -> std::optional<Primitive> { return Disc{d.center + c, d.radius}; },
            [&](const HalfPlane& h) -> std::optional<Primitive> {
              return HalfPlane{h.angle, h.offset + c * std::cos(h.angle)};
            },
            [&](const AnnularSector&) -> std::optional<Primitive> { return std::nullopt; },
            [&](const HulledCurve& h) -> std::optional<Primitive> {
              HulledCurve out;
              for (auto s : h.samples) out.samples.push_back(s + c);
              return out;
            }},
        *prim);
    if (out) return keep_flags(Region::from_primitive(std::move(*out), n));
  }
  const auto& data = a.node().data;
  if (const auto* p = std::get_if<PolygonNode>(&data)) {
    std::vector<Complex> v;
    for (auto z : p->vertices) v.push_back(z + c);
    return keep_flags(Region::convex_polygon(std::move(v)));
  }
  if (const auto* cc = std::get_if<CircleCurveNode>(&data)) {
    return keep_flags(Region::circle_curve(cc->center + c, cc->radius));
  }
  if (const auto* f = std::get_if<AffineNode>(&data)) {
    return Region::affine(f->operand, f->scale, f->shift + c);
  }
  return Region::affine(a, 1.0, c);
}

/// Image of A under z -> 1/conj(z); 0 and infinity are exchanged.
inline Region region_invert(const Region& a) {
  using namespace detail;
  const auto n = a.resolution();
  auto keep_flags = [&](Region r) { return a.outer_bound() ? r.mark_outer_bound() : r; };
  if (auto prim = a.primitive()) {
    std::optional<Primitive> out = std::visit(
        overloaded{
            [&](const Disc& d) -> std::optional<Primitive> {
              const double m = std::abs(d.center);
              if (d.radius == 0.0 && m == 0.0) return std::nullopt;
              const double gap = std::norm(d.center) - d.radius * d.radius;
              if (std::abs(m - d.radius) <= 1e-14 * (1.0 + m)) {
                return HalfPlane{std::arg(d.center), 1.0 / (2.0 * m)};
              }
              if (gap > 0.0) return Disc{d.center / gap, d.radius / gap};
              return std::nullopt;
            },
            [&](const HalfPlane& h) -> std::optional<Primitive> {
              if (h.offset > 0.0) {
                return Disc{std::polar(1.0 / (2.0 * h.offset), h.angle), 1.0 / (2.0 * h.offset)};
              }
              if (h.offset == 0.0) return h;
              return std::nullopt;
            },
            [&](const AnnularSector& s) -> std::optional<Primitive> {
              const double lo = std::isinf(s.rmax) ? 0.0 : 1.0 / s.rmax;
              const double hi = s.rmin == 0.0 ? kInf : 1.0 / s.rmin;
              return AnnularSector{lo, hi, s.phimax};
            },
            [&](const HulledCurve& h) -> std::optional<Primitive> {
              HulledCurve out;
              for (auto s : h.samples) {
                if (s == Complex{0.0, 0.0}) return std::nullopt;
                out.samples.push_back(mobius_invert(s));
              }
              return out;
            }},
        *prim);
    if (out) return keep_flags(Region::from_primitive(std::move(*out), n));
  }
  const auto& data = a.node().data;
  if (const auto* inv = std::get_if<InvertNode>(&data)) return inv->operand;
  if (const auto* c = std::get_if<CircleCurveNode>(&data)) {
    const double gap = std::norm(c->center) - c->radius * c->radius;
    if (std::abs(gap) > 1e-14) {
      return keep_flags(Region::circle_curve(c->center / gap, c->radius / std::abs(gap)));
    }
  }
  return Region::inverted(a);
}

// --- closures and property checks ---------------------------------------------

inline Region chord_closure(const Region& a) { return Region::chord_closure(a); }
inline Region right_arc_closure(const Region& a) { return Region::arc_closure(a, ArcSide::kRight); }
inline Region left_arc_closure(const Region& a) { return Region::arc_closure(a, ArcSide::kLeft); }

namespace detail {

inline std::vector<Complex> strided_boundary(const Region& a, std::size_t cap = 4096) {
  auto pts = a.boundary_points();
  if (pts.size() <= cap) return pts;
  std::vector<Complex> out;
  const double step = static_cast<double>(pts.size()) / static_cast<double>(cap);
  for (std::size_t i = 0; i < cap; ++i) out.push_back(pts[static_cast<std::size_t>(i * step)]);
  return out;
}

}  // namespace detail

/// [z, conj z] inside A for every boundary sample z, tested at k points each.
inline bool has_chord_property(const Region& a, std::size_t k = 16) {
  k = std::max<std::size_t>(k, 2);
  for (auto z : detail::strided_boundary(a)) {
    for (std::size_t i = 1; i < k; ++i) {
      const double t = 1.0 - 2.0 * static_cast<double>(i) / static_cast<double>(k);
      if (!a.contains({z.real(), z.imag() * t})) return false;
    }
  }
  return true;
}

/// Origin-centred arc from z to conj z (through the positive real axis for
/// the right side, the negative one for the left) inside A.
inline bool has_arc_property(const Region& a, ArcSide side, std::size_t k = 16) {
  k = std::max<std::size_t>(k, 2);
  for (auto z : detail::strided_boundary(a)) {
    const double r = std::abs(z);
    const double phi = std::abs(std::arg(z));
    for (std::size_t i = 1; i < k; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(k);
      const double theta = side == ArcSide::kRight ? phi * (1.0 - 2.0 * t)
                                                   : phi + t * 2.0 * (kPi - phi);
      if (!a.contains(std::polar(r, theta))) return false;
    }
  }
  return true;
}

// --- sums and products --------------------------------------------------------

namespace detail {

inline bool is_real_point(const Region& a, Complex* value = nullptr) {
  if (auto p = a.primitive()) {
    if (const auto* d = std::get_if<Disc>(&*p); d && d->radius == 0.0 && d->center.imag() == 0.0) {
      if (value) *value = d->center;
      return true;
    }
  }
  return false;
}

inline const Disc* as_real_disc(const std::optional<Primitive>& p) {
  if (!p) return nullptr;
  const auto* d = std::get_if<Disc>(&*p);
  return d && d->center.imag() == 0.0 ? d : nullptr;
}

/// Convex outer polygon of a bounded region: hull of boundary samples pushed
/// out by the largest chord-to-curve sag, so curved edges are covered.
inline std::vector<Complex> outer_convex_polygon(const Region& a) {
  // every segment is pushed out along its bulge by twice its sag, so
  // straight boundary pieces (and corners next to them) stay exact
  std::vector<Complex> pts;
  auto add = [&](Complex z) {
    const double tol = 1e-12 * (1.0 + std::abs(z));
    for (int i = 0; i < 4; ++i) {
      const Complex q = z + std::polar(tol, kPi / 4 + i * kPi / 2);
      pts.push_back(q);
      pts.push_back(std::conj(q));
    }
  };
  for (const auto& chain : a.boundary()) {
    const auto& p = chain.points;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!is_finite(p[i])) continue;
      add(p[i]);
      if (i + 1 >= p.size() || !is_finite(p[i + 1])) continue;
      const Complex m = chain.curve(0.5 * (chain.params[i] + chain.params[i + 1]));
      if (!is_finite(m)) continue;
      const Complex d = p[i + 1] - p[i];
      const double len2 = std::norm(d);
      const double t = len2 > 0.0 ? std::clamp(((m - p[i]) * std::conj(d)).real() / len2, 0.0, 1.0) : 0.0;
      const Complex bulge = 2.0 * (m - (p[i] + t * d));
      if (std::abs(bulge) == 0.0) continue;
      add(p[i] + bulge);
      add(p[i + 1] + bulge);
    }
  }
  if (pts.empty()) throw InputError("region has no boundary samples (empty region)");
  return convex_hull(std::move(pts));
}

}  // namespace detail

/// Outer bound of {a + b}. Exact for disc pairs and for sums with a disc
/// centred on the real axis.
inline Region minkowski_sum(const Region& a, const Region& b) {
  using namespace detail;
  if (a.includes_infinity() || b.includes_infinity()) {
    throw InputError("minkowski_sum: operands must not contain infinity");
  }
  const auto pa = a.primitive();
  const auto pb = b.primitive();
  const Disc* da = pa ? std::get_if<Disc>(&*pa) : nullptr;
  const Disc* db = pb ? std::get_if<Disc>(&*pb) : nullptr;
  const bool outer = a.outer_bound() || b.outer_bound();
  auto flag = [outer](Region r) { return outer ? r.mark_outer_bound() : r; };
  if (da && db) {
    const double r = da->radius + db->radius;
    if (da->center.imag() == 0.0 || db->center.imag() == 0.0) {
      return flag(Region::disc(da->center + db->center, r));
    }
    return flag(Region::union_of({Region::disc(da->center + db->center, r),
                                  Region::disc(da->center + std::conj(db->center), r)}));
  }
  if (const Disc* d = as_real_disc(pb)) {
    if (d->radius == 0.0) return region_shift(a, d->center.real());
    return Region::dilated(a, d->center.real(), d->radius);
  }
  if (const Disc* d = as_real_disc(pa)) {
    if (d->radius == 0.0) return region_shift(b, d->center.real());
    return Region::dilated(b, d->center.real(), d->radius);
  }
  auto poly = convex_minkowski_sum(outer_convex_polygon(a), outer_convex_polygon(b));
  return Region::convex_polygon(std::move(poly)).mark_outer_bound();
}

namespace detail {

/// Smallest annular sector (about the origin) covering a bounded region.
inline AnnularSector sector_cover(const Region& a) {
  if (auto p = a.primitive()) {
    if (const auto* s = std::get_if<AnnularSector>(&*p)) return *s;
  }
  const double rmin = point_region_distance({0.0, 0.0}, a).value;
  double rmax = 0.0;
  double phi = 0.0;
  const auto& boundary = a.boundary();
  for (const auto& chain : boundary) {
    for (std::size_t i = 0; i < chain.points.size(); ++i) {
      const Complex z = chain.points[i];
      if (!is_finite(z)) continue;
      if (std::abs(z) > rmax || std::abs(std::arg(z)) > phi) {
        rmax = std::max(rmax, std::abs(z));
        phi = std::max(phi, std::abs(std::arg(z)));
        if (chain.params.size() > 1) {
          const auto [lo, hi] = neighbour_interval(chain, i);
          auto neg_mod = [&](double t) { return -std::abs(chain.curve(t)); };
          auto neg_arg = [&](double t) { return -std::abs(std::arg(chain.curve(t))); };
          rmax = std::max(rmax, std::abs(chain.curve(golden_min(neg_mod, lo, hi))));
          phi = std::max(phi, std::abs(std::arg(chain.curve(golden_min(neg_arg, lo, hi)))));
        }
      }
    }
  }
  if (a.contains({0.0, 0.0})) phi = kPi;
  const double pad = 1e-9;
  return AnnularSector{std::max(0.0, rmin - pad * (1.0 + rmin)), rmax * (1.0 + pad) + pad,
                       std::min(kPi, phi + pad)};
}

inline Region sector_region(const AnnularSector& s, std::size_t resolution) {
  if (s.rmin == 0.0 && s.phimax >= kPi) return Region::from_primitive(Disc{{0.0, 0.0}, s.rmax}, resolution);
  return Region::from_primitive(s, resolution);
}

}  // namespace detail

/// Outer bound of {a * b}. Exact for sector pairs and real scalings.
inline Region region_product(const Region& a, const Region& b) {
  using namespace detail;
  if (a.includes_infinity() || b.includes_infinity()) {
    throw InputError("region_product: operands must not contain infinity");
  }
  Complex k;
  if (is_real_point(b, &k)) {
    if (k.real() == 0.0) return Region::point({0.0, 0.0});
    return region_scale(a, k.real());
  }
  if (is_real_point(a, &k)) {
    if (k.real() == 0.0) return Region::point({0.0, 0.0});
    return region_scale(b, k.real());
  }
  const auto pa = a.primitive();
  const auto pb = b.primitive();
  const auto n = std::max(a.resolution(), b.resolution());
  const AnnularSector* sa = pa ? std::get_if<AnnularSector>(&*pa) : nullptr;
  const AnnularSector* sb = pb ? std::get_if<AnnularSector>(&*pb) : nullptr;
  // a single real point written as a degenerate sector
  auto sector_point = [](const AnnularSector* s) {
    return s && s->rmin == s->rmax && s->phimax == 0.0;
  };
  if (sector_point(sb)) return region_scale(a, sb->rmin);
  if (sector_point(sa)) return region_scale(b, sa->rmin);
  const bool outer = a.outer_bound() || b.outer_bound();
  if (sa && sb) {
    AnnularSector s{sa->rmin * sb->rmin, sa->rmax * sb->rmax, std::min(kPi, sa->phimax + sb->phimax)};
    auto r = sector_region(s, n);
    return outer ? r.mark_outer_bound() : r;
  }
  const Disc* da = pa ? std::get_if<Disc>(&*pa) : nullptr;
  const Disc* db = pb ? std::get_if<Disc>(&*pb) : nullptr;
  if (da && db) {
    auto cover = [&](Complex c2) {
      const double r = std::abs(da->center) * db->radius + std::abs(c2) * da->radius +
                       da->radius * db->radius;
      return Region::disc(da->center * c2, r);
    };
    if (da->center.imag() == 0.0 || db->center.imag() == 0.0) return cover(db->center).mark_outer_bound();
    return Region::union_of({cover(db->center), cover(std::conj(db->center))}).mark_outer_bound();
  }
  const auto ca = sector_cover(a);
  const auto cb = sector_cover(b);
  AnnularSector s{ca.rmin * cb.rmin, ca.rmax * cb.rmax, std::min(kPi, ca.phimax + cb.phimax)};
  return sector_region(s, n).mark_outer_bound();
}

}  // namespace srgkit
