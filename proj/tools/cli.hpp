#pragma once

// srgkit command line: run(argv) -> exit status.
//
//   0 pass / stable, 1 unstable or no certificate, 2 input error,
//   3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repro.hpp"
#include "srgkit/srgkit.hpp"

namespace srgkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoCertificate = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

inline Region load_region(const std::string& path) { return region_from_string(read_file(path)); }

inline OperatorClass class_from_kind(const std::string& kind, double mu, double lambda, double gamma) {
  if (kind == "gain_bound") return OperatorClass::gain_bound(mu);
  if (kind == "incrementally_positive" || kind == "positive") return OperatorClass::incrementally_positive();
  if (kind == "input_strict") return OperatorClass::input_strict(lambda);
  if (kind == "output_strict") return OperatorClass::output_strict(gamma);
  if (kind == "sector") return OperatorClass::sector(mu, lambda);
  throw InputError("unknown operator class '" + kind + "'");
}

inline Region static_region(const std::string& kind, double u_star, double s_star) {
  if (kind == "saturation") return saturation_srg();
  if (kind == "relu") return relu_srg();
  if (kind == "saturating") return saturating_disc(u_star, s_star);
  if (kind == "elbow") return elbow_circle();
  throw InputError("unknown static nonlinearity '" + kind + "'");
}

inline FrequencyGrid grid_from(double wmin, double wmax, std::size_t points) {
  FrequencyGrid g;
  g.wmin = wmin;
  g.wmax = wmax;
  g.points = points;
  if (!(wmin > 0.0) || !(wmin < wmax) || points < 2) throw InputError("frequency grid needs 0 < wmin < wmax, >= 2 points");
  return g;
}

// --- analysis specs ----------------------------------------------------------------

/// One region builder entry of an analysis spec:
///   {"builder": "class", "kind": ..., "mu"|"lambda"|"gamma": ...}
///   {"builder": "lti", "tf": ..., "omega": {"wmin", "wmax", "points"}}
///   {"builder": "static", "kind": "saturation"|"relu"|"saturating"|"elbow", ...}
///   {"builder": "cascade", "gammas": [...]}
///   {"builder": "json", "region": {...}} or {"builder": "json", "file": path}
inline Region region_from_builder(const Json& b, const std::string& name) {
  const std::string where = "region '" + name + "'";
  if (!b.is_object() || !b.contains("builder") || !b["builder"].is_string()) {
    throw InputError(where + ": expected object with 'builder'");
  }
  const std::string kind = b["builder"].get<std::string>();
  auto num = [&](const char* key, double fallback) {
    if (!b.contains(key)) return fallback;
    if (!b[key].is_number()) throw InputError(where + ": '" + key + "' must be a number");
    return b[key].get<double>();
  };
  if (kind == "class") {
    return class_srg(class_from_kind(b.value("kind", std::string()), num("mu", 0.0), num("lambda", 0.0),
                                     num("gamma", 1.0)));
  }
  if (kind == "lti") {
    if (!b.contains("tf") || !b["tf"].is_string()) throw InputError(where + ": lti needs 'tf'");
    FrequencyGrid g;
    if (b.contains("omega")) {
      const Json& w = b["omega"];
      g = grid_from(w.value("wmin", g.wmin), w.value("wmax", g.wmax), w.value("points", g.points));
    }
    return lti_srg(parse_tf(b["tf"].get<std::string>()), g);
  }
  if (kind == "static") return static_region(b.value("kind", std::string()), num("u_star", 1.0), num("s_star", 1.0));
  if (kind == "cascade") {
    if (!b.contains("gammas") || !b["gammas"].is_array()) throw InputError(where + ": cascade needs 'gammas'");
    std::vector<double> g;
    for (const auto& x : b["gammas"]) {
      if (!x.is_number()) throw InputError(where + ": gammas must be numbers");
      g.push_back(x.get<double>());
    }
    return cascade_srg(g);
  }
  if (kind == "json") {
    if (b.contains("region")) return region_from_json(b["region"]);
    if (b.contains("file") && b["file"].is_string()) return load_region(b["file"].get<std::string>());
    throw InputError(where + ": json builder needs 'region' or 'file'");
  }
  throw InputError(where + ": unknown builder '" + kind + "'");
}

struct AnalysisSpec {
  std::map<std::string, Region> regions;
  std::string type;  // nyquist | robust_feedback
  std::string loop, h1, h2;
  std::vector<double> taus;
  std::string trace_path, svg_path;
};

inline AnalysisSpec parse_analysis_spec(const Json& j) {
  if (!j.is_object()) throw InputError("analysis spec: expected a JSON object");
  AnalysisSpec s;
  if (!j.contains("regions") || !j["regions"].is_object() || j["regions"].empty()) {
    throw InputError("analysis spec: needs a nonempty 'regions' object");
  }
  for (const auto& [name, b] : j["regions"].items()) s.regions.emplace(name, region_from_builder(b, name));
  if (!j.contains("interconnection") || !j["interconnection"].is_object()) {
    throw InputError("analysis spec: needs exactly one 'interconnection' object");
  }
  const Json& ic = j["interconnection"];
  s.type = ic.value("type", std::string());
  auto ref = [&](const char* key) {
    if (!ic.contains(key) || !ic[key].is_string()) throw InputError(std::string("interconnection needs '") + key + "'");
    const std::string name = ic[key].get<std::string>();
    if (!s.regions.count(name)) throw InputError("interconnection references unknown region '" + name + "'");
    return name;
  };
  if (s.type == "nyquist") {
    s.loop = ref("loop");
  } else if (s.type == "robust_feedback" || s.type == "robust-feedback") {
    s.type = "robust_feedback";
    s.h1 = ref("h1");
    s.h2 = ref("h2");
  } else {
    throw InputError("interconnection type must be nyquist or robust_feedback");
  }
  s.taus = default_tau_grid();
  if (j.contains("tau")) {
    const Json& t = j["tau"];
    if (t.is_array()) {
      s.taus.clear();
      for (const auto& x : t) {
        if (!x.is_number() || !(x.get<double>() > 0.0) || x.get<double>() > 1.0) {
          throw InputError("tau values must lie in (0, 1]");
        }
        s.taus.push_back(x.get<double>());
      }
    } else if (t.is_object() && t.contains("points")) {
      const auto n = t["points"].get<long long>();
      if (n < 1) throw InputError("tau grid must be nonempty");
      s.taus = default_tau_grid(static_cast<std::size_t>(n));
    } else {
      throw InputError("'tau' must be an array or {\"points\": n}");
    }
    if (s.taus.empty()) throw InputError("tau grid must be nonempty");
  }
  if (j.contains("outputs")) {
    const Json& o = j["outputs"];
    s.trace_path = o.value("trace", std::string());
    s.svg_path = o.value("svg", std::string());
  }
  return s;
}

inline std::string trace_csv(const Verdict& v, const Meta& meta) {
  Meta m = meta;
  std::string flags;
  for (const auto& f : v.conservatism_flags) flags += (flags.empty() ? "" : "; ") + f;
  m.emplace_back("tau grid", std::to_string(v.tau_trace.size()) + " points: geometric on (1e-4, 1] plus 1, local minima refined");
  m.emplace_back("flags", flags.empty() ? "none" : flags);
  std::string csv = csv_header(m, "tau,r_tau");
  for (auto [t, r] : v.tau_trace) csv += num16(t) + "," + num16(r) + "\n";
  return csv;
}

inline Json verdict_json(const Verdict& v, const std::string& type) {
  auto fin = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
  Json j{{"interconnection", type},
         {"stable", v.stable},
         {"margin", fin(v.margin)},
         {"gain_bound", fin(v.gain_bound)},
         {"flags", v.conservatism_flags},
         {"tau_points", v.tau_trace.size()}};
  if (type == "nyquist") j["output_gain_bound"] = fin(v.output_gain_bound);
  return j;
}

/// Region plot with the margin drawn as a segment between the separated sets.
inline std::string verdict_svg(const AnalysisSpec& s, const std::vector<Complex>& nyquist = {}) {
  PlotOptions o;
  if (s.type == "nyquist") {
    const Region& l = s.regions.at(s.loop);
    const auto rep = region_distance_report(l, Region::point({-1.0, 0.0}));
    o.title = "loop SRG, s_m = " + short_num(rep.value);
    return render_svg({PlotLayer{l}}, PlotOverlay{nyquist, {{rep.witness_a, rep.witness_b}}}, o);
  }
  const Region inv = region_invert(s.regions.at(s.h1));
  const Region neg = region_scale(s.regions.at(s.h2), -1.0);
  const auto rep = region_distance_report(inv, neg);
  o.title = "SRG(H1)^-1 and -SRG(H2), r_m = " + short_num(rep.value);
  return render_svg({PlotLayer{inv}, PlotLayer{neg, "#f58518", "#8a4a0e", 0.35}},
                    PlotOverlay{{}, {{rep.witness_a, rep.witness_b}}}, o);
}

inline Verdict evaluate(const AnalysisSpec& s) {
  if (s.type == "nyquist") return nyquist_stability(s.regions.at(s.loop), s.taus);
  return robust_feedback(s.regions.at(s.h1), s.regions.at(s.h2), s.taus);
}

// --- command line -----------------------------------------------------------------

struct LoopInputs {
  std::string tf, loop, h1, h2;
  std::size_t tau_points = 128;

  void add(CLI::App* c) {
    c->add_option("--tf", tf, "loop transfer function (Nyquist form)");
    c->add_option("--loop", loop, "loop region JSON file (Nyquist form)");
    c->add_option("--h1", h1, "forward region JSON file (robust-feedback form)");
    c->add_option("--h2", h2, "feedback region JSON file (robust-feedback form)");
    c->add_option("--tau-points", tau_points, "tau grid size")->check(CLI::PositiveNumber);
  }

  [[nodiscard]] AnalysisSpec spec() const {
    AnalysisSpec s;
    s.taus = default_tau_grid(tau_points);
    const int forms = int(!tf.empty()) + int(!loop.empty()) + int(!h1.empty() || !h2.empty());
    if (forms != 1) throw InputError("give exactly one of --tf, --loop, or --h1/--h2");
    if (!h1.empty() || !h2.empty()) {
      if (h1.empty() || h2.empty()) throw InputError("--h1 and --h2 go together");
      s.type = "robust_feedback";
      s.h1 = "H1";
      s.h2 = "H2";
      s.regions.emplace("H1", load_region(h1));
      s.regions.emplace("H2", load_region(h2));
    } else {
      s.type = "nyquist";
      s.loop = "L";
      s.regions.emplace("L", tf.empty() ? load_region(loop) : lti_srg(parse_tf(tf)));
    }
    return s;
  }

  [[nodiscard]] std::vector<Complex> nyquist() const {
    return tf.empty() ? std::vector<Complex>{} : nyquist_curve(parse_tf(tf));
  }

  [[nodiscard]] Meta meta() const {
    if (!tf.empty()) return {{"loop", "lti " + to_string(parse_tf(tf))}};
    if (!loop.empty()) return {{"loop", loop}};
    return {{"h1", h1}, {"h2", h2}};
  }
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"srgkit: scaled relative graphs and incremental stability certificates", "srgkit"};
  app.set_version_flag("--version", std::string(SRGKIT_VERSION));
  app.require_subcommand(1);
  std::function<int()> action;

  // srg ...
  auto* srg = app.add_subcommand("srg", "build a region and print its JSON");
  srg->require_subcommand(1);
  std::string srg_out, srg_svg;
  auto emit_region = [&](const Region& r) {
    const std::string text = region_to_string(r, 2) + "\n";
    if (srg_out.empty()) {
      out << text;
    } else {
      write_file(srg_out, text);
    }
    if (!srg_svg.empty()) write_file(srg_svg, render_svg({PlotLayer{r}}));
    return kExitOk;
  };
  auto region_outputs = [&](CLI::App* c) {
    c->add_option("--out", srg_out, "write the region JSON here instead of stdout");
    c->add_option("--svg", srg_svg, "also plot the region");
  };

  std::string cls_kind;
  double cls_mu = 0.0, cls_lambda = 0.0, cls_gamma = 1.0;
  auto* cls = srg->add_subcommand("class", "SRG of an operator class");
  cls->add_option("--kind", cls_kind, "gain_bound|incrementally_positive|input_strict|output_strict|sector")
      ->required();
  cls->add_option("--mu", cls_mu, "gain bound / sector lower bound");
  cls->add_option("--lambda", cls_lambda, "input strictness / sector upper bound");
  cls->add_option("--gamma", cls_gamma, "output strictness");
  region_outputs(cls);
  cls->callback([&] {
    action = [&] { return emit_region(class_srg(class_from_kind(cls_kind, cls_mu, cls_lambda, cls_gamma))); };
  });

  std::string lti_tf;
  double wmin = 1e-3, wmax = 1e3;
  std::size_t wpoints = 2048;
  auto* lti = srg->add_subcommand("lti", "SRG of a stable transfer function");
  lti->add_option("--tf", lti_tf, "transfer function, e.g. \"1/(s+1)\"")->required();
  lti->add_option("--wmin", wmin, "lowest grid frequency");
  lti->add_option("--wmax", wmax, "highest grid frequency (tail extended automatically)");
  lti->add_option("--wpoints", wpoints, "log grid points");
  region_outputs(lti);
  lti->callback([&] {
    action = [&] { return emit_region(lti_srg(parse_tf(lti_tf), grid_from(wmin, wmax, wpoints))); };
  });

  std::vector<double> cas_gammas;
  auto* cas = srg->add_subcommand("cascade", "SRG bound of a cascade of output-strict positive systems");
  cas->add_option("--gammas", cas_gammas, "comma separated gammas")->required()->delimiter(',');
  region_outputs(cas);
  cas->callback([&] { action = [&] { return emit_region(cascade_srg(cas_gammas)); }; });

  std::string st_kind;
  double st_u = 1.0, st_s = 1.0;
  auto* st = srg->add_subcommand("static", "SRG of a static nonlinearity");
  st->add_option("--kind", st_kind, "saturation|relu|saturating|elbow")->required();
  st->add_option("--u-star", st_u, "knee input (saturating)");
  st->add_option("--s-star", st_s, "knee output (saturating)");
  region_outputs(st);
  st->callback([&] { action = [&] { return emit_region(static_region(st_kind, st_u, st_s)); }; });

  // analyze spec.json
  std::string spec_path, report_out;
  auto* analyze = app.add_subcommand("analyze", "run an analysis spec (see docs/formats.md)");
  analyze->add_option("spec", spec_path, "analysis spec JSON")->required();
  analyze->add_option("--out", report_out, "write the verdict JSON here as well");
  analyze->callback([&] {
    action = [&] {
      const AnalysisSpec s = parse_analysis_spec(parse_json_text(read_file(spec_path), spec_path));
      const Verdict v = evaluate(s);
      const std::string report = verdict_json(v, s.type).dump(2) + "\n";
      out << report;
      if (!report_out.empty()) write_file(report_out, report);
      if (!s.trace_path.empty()) write_file(s.trace_path, trace_csv(v, {{"spec", spec_path}, {"interconnection", s.type}}));
      if (!s.svg_path.empty()) write_file(s.svg_path, verdict_svg(s));
      return v.stable ? kExitOk : kExitNoCertificate;
    };
  });

  // margin / sweep-tau
  LoopInputs margin_in;
  std::string margin_svg;
  auto* margin = app.add_subcommand("margin", "stability margin and incremental gain bound");
  margin_in.add(margin);
  margin->add_option("--svg", margin_svg, "plot regions with the margin segment");
  margin->callback([&] {
    action = [&] {
      const AnalysisSpec s = margin_in.spec();
      const Verdict v = evaluate(s);
      out << "interconnection: " << s.type << "\n"
          << "stable: " << (v.stable ? "yes" : "no") << "\n"
          << (s.type == "nyquist" ? "s_m: " : "r_m: ") << num16(v.margin) << "\n"
          << "gain_bound: " << num16(v.gain_bound) << "\n";
      if (s.type == "nyquist") out << "output_gain_bound: " << num16(v.output_gain_bound) << "\n";
      for (const auto& f : v.conservatism_flags) out << "flag: " << f << "\n";
      if (!margin_svg.empty()) write_file(margin_svg, verdict_svg(s, margin_in.nyquist()));
      return v.stable ? kExitOk : kExitNoCertificate;
    };
  });

  LoopInputs sweep_in;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep-tau", "write the separation distance r_tau over the tau grid");
  sweep_in.add(sweep);
  sweep->add_option("--out", sweep_out, "CSV path (tau, r_tau)")->required();
  sweep->callback([&] {
    action = [&] {
      const AnalysisSpec s = sweep_in.spec();
      const Verdict v = evaluate(s);
      Meta m = sweep_in.meta();
      m.emplace_back("interconnection", s.type);
      write_file(sweep_out, trace_csv(v, m));
      out << "stable: " << (v.stable ? "yes" : "no") << "\n";
      return v.stable ? kExitOk : kExitNoCertificate;
    };
  });

  // sample
  std::string op_path, strategy = "square", cloud_out, check_region;
  std::size_t count = 1000;
  double tol = 1e-6;
  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "empirical SRG points from simulated probe pairs");
  sample->add_option("--op", op_path, "operator spec JSON")->required();
  sample->add_option("--strategy", strategy, "square|sinusoid|random");
  sample->add_option("--n", count, "number of probe pairs")->check(CLI::PositiveNumber);
  sample->add_option("--out", cloud_out, "CSV path (gain, angle[, slack])")->required();
  sample->add_option("--region", check_region, "region JSON to check the points against");
  sample->add_option("--tol", tol, "inclusion tolerance");
  sample->add_option("--dt", so.dt, "time step");
  sample->add_option("--horizon", so.horizon, "signal length");
  sample->add_option("--seed", so.seed, "random seed");
  sample->add_option("--u-star", so.u_star, "square-wave knee / elbow input");
  sample->add_option("--epsilon", so.epsilon, "square-wave elbow amplitude");
  sample->add_option("--amplitude", so.amplitude, "sinusoid / random amplitude");
  sample->add_option("--freqs", so.frequencies, "sinusoid frequencies")->delimiter(',');
  sample->callback([&] {
    action = [&] {
      const OperatorSpec op = operator_from_json(parse_json_text(read_file(op_path), op_path));
      const Strategy strat = parse_strategy(strategy);
      const SampleCloud cloud = sample_srg(op, strat, count, so);
      std::optional<InclusionReport> rep;
      if (!check_region.empty()) rep = check_inclusion(cloud.points, load_region(check_region), tol);
      Meta m{{"operator", op_path},
             {"strategy", to_string(strat)},
             {"dt", short_num(cloud.dt)},
             {"horizon", short_num(cloud.horizon)},
             {"seed", std::to_string(cloud.seed)},
             {"probes", std::to_string(count)}};
      for (auto [req, used] : snapped_delays(op, so.dt)) {
        m.emplace_back("delay snapped", short_num(req) + " -> " + num16(used));
      }
      if (rep) m.emplace_back("region", check_region + " (tol " + short_num(tol) + ")");
      std::string csv = csv_header(m, rep ? "gain,angle,slack" : "gain,angle");
      for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto& z = cloud.points[i];
        csv += num16(z.gain) + "," + (z.angle_defined ? num16(z.angle) : std::string("nan"));
        if (rep) csv += "," + num16(rep->slack[i]);
        csv += "\n";
      }
      write_file(cloud_out, csv);
      out << "points: " << cloud.points.size() << "\n";
      if (!rep) return kExitOk;
      out << "violations: " << rep->violations.size() << "\nworst_violation: " << num16(rep->worst_violation) << "\n";
      return rep->pass ? kExitOk : kExitNoCertificate;
    };
  });

  // plot
  std::vector<std::string> plot_regions;
  std::string plot_tf, plot_out, plot_title;
  auto* plot = app.add_subcommand("plot", "render regions to SVG");
  plot->add_option("--region", plot_regions, "region JSON file (repeatable)")->required();
  plot->add_option("--tf", plot_tf, "overlay this Nyquist diagram");
  plot->add_option("--out", plot_out, "SVG path")->required();
  plot->add_option("--title", plot_title, "plot title");
  plot->callback([&] {
    action = [&] {
      std::vector<PlotLayer> layers;
      for (const auto& p : plot_regions) layers.push_back({load_region(p)});
      PlotOverlay ov;
      if (!plot_tf.empty()) ov.curve = nyquist_curve(parse_tf(plot_tf));
      PlotOptions o;
      o.title = plot_title;
      write_file(plot_out, render_svg(layers, ov, o));
      return kExitOk;
    };
  });

  // repro ...
  auto* repro = app.add_subcommand("repro", "regenerate the example figures as CSV + SVG");
  repro->require_subcommand(1);
  std::string out_dir = ".";
  auto emit = [&](const Artefacts& a) {
    for (const auto& [name, content] : a.files) {
      const std::string path = (std::filesystem::path(out_dir) / name).string();
      write_file(path, content);
      out << "wrote " << path << "\n";
    }
    out << a.summary << "\n";
    return kExitOk;
  };

  auto* third = repro->add_subcommand("third-order", "SRG of 1/(s^3+5s^2+2s+1) with its Nyquist diagram");
  third->add_option("--out-dir", out_dir, "output directory");
  third->callback([&] { action = [&] { return emit(repro_third_order()); }; });

  double tmin = 0.05, tmax = 3.0;
  std::size_t tpoints = 60;
  auto* delay = repro->add_subcommand("delay", "beta bound and gain bound against the loop delay");
  delay->add_option("--out-dir", out_dir, "output directory");
  delay->add_option("--tmin", tmin, "smallest delay");
  delay->add_option("--tmax", tmax, "largest delay");
  delay->add_option("--tpoints", tpoints, "number of delays");
  delay->callback([&] { action = [&] { return emit(repro_delay(tmin, tmax, tpoints)); }; });

  std::vector<double> rc_gammas{1.0, 1.0, 1.0, 1.0};
  auto* rcas = repro->add_subcommand("cascade", "cascade SRGs and the inverse cascade margin");
  rcas->add_option("--out-dir", out_dir, "output directory");
  rcas->add_option("--gammas", rc_gammas, "gammas of the inverse-SRG figure")->delimiter(',');
  rcas->callback([&] { action = [&] { return emit(repro_cascade(rc_gammas)); }; });

  double c_beta = 1.0, c_gamma = 0.5, c_tmin = 0.0, c_tmax = 2.0, c_wmax = 1000.0;
  std::size_t c_tpoints = 21;
  auto* cong = repro->add_subcommand("congestion", "N_u/delta bound against the delay");
  cong->add_option("--out-dir", out_dir, "output directory");
  cong->add_option("--beta", c_beta, "plant pole");
  cong->add_option("--gamma", c_gamma, "sector bound of the feedback nonlinearity");
  cong->add_option("--tmin", c_tmin, "smallest delay");
  cong->add_option("--tmax", c_tmax, "largest delay");
  cong->add_option("--tpoints", c_tpoints, "number of delays");
  cong->add_option("--omega-max", c_wmax, "frequency truncation of the plant hull");
  cong->callback([&] {
    action = [&] { return emit(repro_congestion(c_beta, c_gamma, c_tmin, c_tmax, c_tpoints, c_wmax)); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    return action ? action() : kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "no certificate: " << e.what() << "\n";
    return kExitNoCertificate;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace srgkit::cli
