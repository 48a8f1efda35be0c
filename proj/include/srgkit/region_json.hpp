#pragma once

// Region <-> JSON.
//
//   {"primitives": [ ... ], "includes_infinity": bool, "resolution": n}
//
// Leaf kinds: disc {center:[re,im], radius}, half_plane {angle, offset},
// annular_sector {rmin, rmax (null = infinity), phimax}, hulled_curve
// {samples:[[re,im],...]}. Composite nodes appear as further kinds that nest
// complete region documents: intersection, union {operands}, invert, affine
// {scale, shift}, dilate {center, radius}, chord_closure, arc_closure {side},
// and the closed-form shapes convex_polygon {vertices}, cascade {gammas,
// scale}, circle_curve {center, radius}.

#include <string>

#include <nlohmann/json.hpp>

#include "srgkit/region.hpp"

namespace srgkit {

using Json = nlohmann::json;

namespace detail {

// + 0.0 folds negative zeros so documents stay canonical
inline Json point_json(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

inline Complex json_point(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(std::string(what) + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline double json_number(const Json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw InputError(std::string("region json: missing numeric field '") + key + "'");
  }
  return obj[key].get<double>();
}

Json region_document(const Region& r);
Region region_from_document(const Json& doc);

inline Json primitive_json(const Primitive& p) {
  return std::visit(
      overloaded{[](const Disc& d) {
                   return Json{{"kind", "disc"}, {"center", point_json(d.center)}, {"radius", d.radius}};
                 },
                 [](const HalfPlane& h) {
                   return Json{{"kind", "half_plane"}, {"angle", h.angle}, {"offset", h.offset}};
                 },
                 [](const AnnularSector& s) {
                   return Json{{"kind", "annular_sector"},
                               {"rmin", s.rmin},
                               {"rmax", std::isinf(s.rmax) ? Json(nullptr) : Json(s.rmax)},
                               {"phimax", s.phimax}};
                 },
                 [](const HulledCurve& h) {
                   Json samples = Json::array();
                   for (auto z : h.samples) samples.push_back(point_json(z));
                   return Json{{"kind", "hulled_curve"}, {"samples", samples}};
                 }},
      p);
}

inline Json item_json(const Region& r) {
  return std::visit(
      overloaded{
          [](const LeafNode& leaf) { return primitive_json(leaf.primitive); },
          [](const UnionNode& u) {
            Json ops = Json::array();
            for (const auto& o : u.operands) ops.push_back(region_document(o));
            return Json{{"kind", "union"}, {"operands", ops}};
          },
          [](const IntersectionNode& x) {
            Json ops = Json::array();
            for (const auto& o : x.operands) ops.push_back(region_document(o));
            return Json{{"kind", "intersection"}, {"operands", ops}};
          },
          [](const InvertNode& i) {
            return Json{{"kind", "invert"}, {"operand", region_document(i.operand)}};
          },
          [](const AffineNode& a) {
            return Json{{"kind", "affine"},
                        {"operand", region_document(a.operand)},
                        {"scale", a.scale},
                        {"shift", a.shift}};
          },
          [](const DilateNode& d) {
            return Json{{"kind", "dilate"},
                        {"operand", region_document(d.operand)},
                        {"center", d.center},
                        {"radius", d.radius}};
          },
          [](const PolygonNode& p) {
            Json v = Json::array();
            for (auto z : p.vertices) v.push_back(point_json(z));
            return Json{{"kind", "convex_polygon"}, {"vertices", v}};
          },
          [](const CascadeNode& c) {
            return Json{{"kind", "cascade"}, {"gammas", c.gammas}, {"scale", c.scale}};
          },
          [](const CircleCurveNode& c) {
            return Json{{"kind", "circle_curve"}, {"center", point_json(c.center)}, {"radius", c.radius}};
          },
          [](const ChordClosureNode& c) {
            return Json{{"kind", "chord_closure"}, {"operand", region_document(c.operand)}};
          },
          [](const ArcClosureNode& c) {
            return Json{{"kind", "arc_closure"},
                        {"operand", region_document(c.operand)},
                        {"side", c.side == ArcSide::kRight ? "right" : "left"}};
          }},
      r.node().data);
}

inline Json region_document(const Region& r) {
  Json prims = Json::array();
  if (const auto* u = std::get_if<UnionNode>(&r.node().data)) {
    for (const auto& o : u->operands) prims.push_back(item_json(o));
  } else {
    prims.push_back(item_json(r));
  }
  Json doc{{"primitives", prims},
           {"includes_infinity", r.includes_infinity()},
           {"resolution", r.resolution()}};
  if (r.outer_bound()) doc["outer_bound"] = true;
  return doc;
}

/// Re-creates r's node with the given resolution / flag, children untouched.
inline Region retag(const Region& r, std::size_t resolution, bool outer) {
  return make_region(r.node().data, resolution, outer);
}

inline Region item_from_json(const Json& item, std::size_t resolution) {
  if (!item.is_object() || !item.contains("kind") || !item["kind"].is_string()) {
    throw InputError("region json: primitive without 'kind'");
  }
  const std::string kind = item["kind"].get<std::string>();
  auto sub = [&](const char* key) {
    if (!item.contains(key)) throw InputError("region json: '" + kind + "' needs '" + key + "'");
    return region_from_document(item[key]);
  };
  auto subs = [&]() {
    if (!item.contains("operands") || !item["operands"].is_array() || item["operands"].empty()) {
      throw InputError("region json: '" + kind + "' needs nonempty 'operands'");
    }
    std::vector<Region> out;
    for (const auto& d : item["operands"]) out.push_back(region_from_document(d));
    return out;
  };
  if (kind == "disc") {
    return Region::from_primitive(
        Disc{json_point(item.value("center", Json()), "disc center"), json_number(item, "radius")},
        resolution);
  }
  if (kind == "half_plane") {
    return Region::from_primitive(HalfPlane{json_number(item, "angle"), json_number(item, "offset")},
                                  resolution);
  }
  if (kind == "annular_sector") {
    const double rmax = item.contains("rmax") && item["rmax"].is_null() ? kInf
                                                                         : json_number(item, "rmax");
    return Region::from_primitive(
        AnnularSector{json_number(item, "rmin"), rmax, json_number(item, "phimax")}, resolution);
  }
  if (kind == "hulled_curve") {
    if (!item.contains("samples") || !item["samples"].is_array()) {
      throw InputError("region json: hulled_curve needs 'samples'");
    }
    std::vector<Complex> samples;
    for (const auto& s : item["samples"]) samples.push_back(json_point(s, "hulled_curve sample"));
    return Region::from_primitive(HulledCurve{std::move(samples)}, resolution);
  }
  if (kind == "convex_polygon") {
    std::vector<Complex> v;
    for (const auto& s : item.value("vertices", Json::array())) v.push_back(json_point(s, "vertex"));
    return Region::convex_polygon(std::move(v));
  }
  if (kind == "cascade") {
    if (!item.contains("gammas") || !item["gammas"].is_array()) {
      throw InputError("region json: cascade needs 'gammas'");
    }
    std::vector<double> g;
    for (const auto& x : item["gammas"]) {
      if (!x.is_number()) throw InputError("region json: cascade gammas must be numbers");
      g.push_back(x.get<double>());
    }
    return Region::cascade(std::move(g), item.contains("scale") ? json_number(item, "scale") : 1.0);
  }
  if (kind == "circle_curve") {
    return Region::circle_curve(json_point(item.value("center", Json()), "circle center"),
                                json_number(item, "radius"));
  }
  if (kind == "union") return Region::union_of(subs());
  if (kind == "intersection") {
    auto ops = subs();
    if (ops.size() != 2) throw InputError("region json: intersection takes two operands");
    return Region::intersection(ops[0], ops[1]);
  }
  if (kind == "invert") return Region::inverted(sub("operand"));
  if (kind == "affine") {
    return Region::affine(sub("operand"), json_number(item, "scale"), json_number(item, "shift"));
  }
  if (kind == "dilate") {
    return Region::dilated(sub("operand"), json_number(item, "center"), json_number(item, "radius"));
  }
  if (kind == "chord_closure") return Region::chord_closure(sub("operand"));
  if (kind == "arc_closure") {
    const std::string side = item.value("side", std::string("right"));
    if (side != "right" && side != "left") throw InputError("region json: arc side must be right|left");
    return Region::arc_closure(sub("operand"), side == "right" ? ArcSide::kRight : ArcSide::kLeft);
  }
  throw InputError("region json: unknown kind '" + kind + "'");
}

inline Region region_from_document(const Json& doc) {
  if (!doc.is_object() || !doc.contains("primitives") || !doc["primitives"].is_array() ||
      doc["primitives"].empty()) {
    throw InputError("region json: expected object with nonempty 'primitives' array");
  }
  std::size_t resolution = default_resolution();
  if (doc.contains("resolution")) {
    if (!doc["resolution"].is_number_integer() || doc["resolution"].get<long long>() < 16) {
      throw InputError("region json: 'resolution' must be an integer >= 16");
    }
    resolution = doc["resolution"].get<std::size_t>();
  }
  const bool outer = doc.value("outer_bound", false);
  std::vector<Region> items;
  for (const auto& item : doc["primitives"]) items.push_back(retag(item_from_json(item, resolution), resolution, false));
  Region r = items.size() == 1 ? items.front() : Region::union_of(std::move(items));
  r = retag(r, resolution, outer);
  if (doc.contains("includes_infinity")) {
    if (!doc["includes_infinity"].is_boolean()) {
      throw InputError("region json: 'includes_infinity' must be boolean");
    }
    if (doc["includes_infinity"].get<bool>() != r.includes_infinity()) {
      throw InputError("region json: 'includes_infinity' contradicts the primitives");
    }
  }
  return r;
}

}  // namespace detail

inline Json region_to_json(const Region& r) { return detail::region_document(r); }

inline Region region_from_json(const Json& doc) { return detail::region_from_document(doc); }

inline std::string region_to_string(const Region& r, int indent = -1) {
  return region_to_json(r).dump(indent);
}

inline Region region_from_string(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("region json: ") + e.what());
  }
  return region_from_json(doc);
}

}  // namespace srgkit
