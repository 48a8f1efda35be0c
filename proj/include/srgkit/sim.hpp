#pragma once

// Time-domain oracle: simulate operators on piecewise-constant signals,
// compute empirical SRG / SG points and check them against regions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "srgkit/error.hpp"
#include "srgkit/region.hpp"
#include "srgkit/region_algebra.hpp"
#include "srgkit/transfer_function.hpp"

namespace srgkit {

inline constexpr double kDefaultDt = 1.0 / 256.0;

struct Signal {
  double dt = kDefaultDt;
  std::vector<double> samples;

  [[nodiscard]] std::size_t size() const { return samples.size(); }
  [[nodiscard]] double horizon() const { return dt * static_cast<double>(samples.size()); }
};

inline double inner(const Signal& a, const Signal& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) acc += a.samples[i] * b.samples[i];
  return acc * a.dt;
}

inline double norm(const Signal& a) { return std::sqrt(inner(a, a)); }

inline Signal operator-(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) throw InputError("signal length mismatch");
  Signal out{a.dt, a.samples};
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] -= b.samples[i];
  return out;
}

inline Signal operator+(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) throw InputError("signal length mismatch");
  Signal out{a.dt, a.samples};
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += b.samples[i];
  return out;
}

inline Signal constant_signal(double value, double horizon, double dt = kDefaultDt) {
  const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
  return {dt, std::vector<double>(std::max<std::size_t>(n, 1), value)};
}

// --- operator specs --------------------------------------------------------------

struct StaticNL {
  enum class Kind { kSaturation, kRelu, kDeadzone, kTable };
  Kind kind = Kind::kSaturation;
  std::vector<std::pair<double, double>> table;  // sorted (x, y), linear extrapolation
};
struct LtiOp {
  TransferFunction tf;
};
struct DelayOp {
  double T = 0.0;
};
struct GainOp {
  double k = 1.0;
};
struct OperatorSpec;
struct CascadeOp {
  std::vector<OperatorSpec> parts;  // applied first to last
};
struct FeedbackOp {
  std::vector<OperatorSpec> loop;  // {forward, backward}: y = F(u - B(y))
};

struct OperatorSpec {
  std::variant<StaticNL, LtiOp, DelayOp, GainOp, CascadeOp, FeedbackOp> node;

  static OperatorSpec saturation() { return {StaticNL{StaticNL::Kind::kSaturation, {}}}; }
  static OperatorSpec relu() { return {StaticNL{StaticNL::Kind::kRelu, {}}}; }
  static OperatorSpec deadzone() { return {StaticNL{StaticNL::Kind::kDeadzone, {}}}; }
  static OperatorSpec table(std::vector<std::pair<double, double>> pts) {
    if (pts.size() < 2) throw InputError("static table needs at least two points");
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i].first == pts[i - 1].first) throw InputError("static table: duplicate abscissa");
    }
    return {StaticNL{StaticNL::Kind::kTable, std::move(pts)}};
  }
  static OperatorSpec lti(TransferFunction tf) { return {LtiOp{std::move(tf)}}; }
  static OperatorSpec delay(double t) { return {DelayOp{t}}; }
  static OperatorSpec gain(double k) { return {GainOp{k}}; }
  static OperatorSpec cascade(std::vector<OperatorSpec> parts) { return {CascadeOp{std::move(parts)}}; }
  static OperatorSpec feedback(OperatorSpec forward, OperatorSpec backward) {
    return {FeedbackOp{{std::move(forward), std::move(backward)}}};
  }
};

inline double static_map(const StaticNL& s, double u) {
  switch (s.kind) {
    case StaticNL::Kind::kSaturation: return std::clamp(u, -1.0, 1.0);
    case StaticNL::Kind::kRelu: return std::max(0.0, u);
    case StaticNL::Kind::kDeadzone: return std::abs(u) <= 1.0 ? 0.0 : u - std::copysign(1.0, u);
    case StaticNL::Kind::kTable: {
      const auto& t = s.table;
      std::size_t i = 1;
      while (i + 1 < t.size() && u > t[i].first) ++i;
      const auto [x0, y0] = t[i - 1];
      const auto [x1, y1] = t[i];
      return y0 + (y1 - y0) * (u - x0) / (x1 - x0);
    }
  }
  return u;
}

// --- steppers --------------------------------------------------------------------

namespace detail {

/// One discrete-time operator: output(u) evaluates the current output for
/// input u without changing state; advance(u) commits the step.
class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual double output(double u) const = 0;
  virtual void advance(double u) = 0;
};

class StaticStepper final : public Stepper {
 public:
  explicit StaticStepper(StaticNL s) : s_(std::move(s)) {}
  double output(double u) const override { return static_map(s_, u); }
  void advance(double) override {}

 private:
  StaticNL s_;
};

class GainStepper final : public Stepper {
 public:
  explicit GainStepper(double k) : k_(k) {}
  double output(double u) const override { return k_ * u; }
  void advance(double) override {}

 private:
  double k_;
};

class DelayStepper final : public Stepper {
 public:
  explicit DelayStepper(std::size_t n) : buffer_(n, 0.0) {}
  double output(double u) const override { return buffer_.empty() ? u : buffer_.front(); }
  void advance(double u) override {
    if (buffer_.empty()) return;
    buffer_.pop_front();
    buffer_.push_back(u);
  }

 private:
  std::deque<double> buffer_;
};

/// Controllable canonical realisation, exact zero-order-hold discretisation.
class LtiStepper final : public Stepper {
 public:
  LtiStepper(const TransferFunction& tf, double dt) {
    if (tf.num_degree() > tf.den_degree()) throw InputError("simulation needs a proper transfer function");
    const auto n = static_cast<Eigen::Index>(tf.den_degree());
    Polynomial b(tf.den.size() - tf.num.size(), 0.0);
    b.insert(b.end(), tf.num.begin(), tf.num.end());
    d_ = b[0];
    x_ = Eigen::VectorXd::Zero(n);
    if (n == 0) return;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) m(n - 1, i) = -tf.den[static_cast<std::size_t>(n - i)];
    m(n - 1, n) = 1.0;
    const Eigen::MatrixXd e = (m * dt).exp();
    ad_ = e.topLeftCorner(n, n);
    bd_ = e.topRightCorner(n, 1);
    c_ = Eigen::RowVectorXd(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(n - i);
      c_(i) = b[k] - d_ * tf.den[k];
    }
  }
  double output(double u) const override {
    return (x_.size() ? (c_ * x_)(0) : 0.0) + d_ * u;
  }
  void advance(double u) override {
    if (x_.size()) x_ = ad_ * x_ + bd_ * u;
  }

 private:
  Eigen::MatrixXd ad_;
  Eigen::VectorXd bd_;
  Eigen::RowVectorXd c_;
  Eigen::VectorXd x_;
  double d_ = 0.0;
};

class CascadeStepper final : public Stepper {
 public:
  explicit CascadeStepper(std::vector<std::unique_ptr<Stepper>> parts) : parts_(std::move(parts)) {}
  double output(double u) const override {
    for (const auto& p : parts_) u = p->output(u);
    return u;
  }
  void advance(double u) override {
    for (auto& p : parts_) {
      const double y = p->output(u);
      p->advance(u);
      u = y;
    }
  }

 private:
  std::vector<std::unique_ptr<Stepper>> parts_;
};

/// y = F(u - B(y)), solved per step by fixed-point iteration.
class FeedbackStepper final : public Stepper {
 public:
  FeedbackStepper(std::unique_ptr<Stepper> f, std::unique_ptr<Stepper> b) : f_(std::move(f)), b_(std::move(b)) {}
  double output(double u) const override { return solve(u); }
  void advance(double u) override {
    const double y = solve(u);
    const double e = u - b_->output(y);
    f_->advance(e);
    b_->advance(y);
  }

 private:
  double solve(double u) const {
    double y = f_->output(u - b_->output(0.0));
    for (int i = 0; i < 200; ++i) {
      const double next = f_->output(u - b_->output(y));
      if (!std::isfinite(next)) break;
      if (std::abs(next - y) <= 1e-12 * (1.0 + std::abs(next))) return next;
      y = next;
    }
    throw NumericalError("feedback loop: per-step fixed-point iteration did not converge (u = " +
                         detail::format_number(u) + ", last y = " + detail::format_number(y) + ")");
  }

  std::unique_ptr<Stepper> f_;
  std::unique_ptr<Stepper> b_;
};

inline std::size_t delay_steps(double t, double dt) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("delay must be >= 0");
  return static_cast<std::size_t>(std::llround(t / dt));
}

inline std::unique_ptr<Stepper> compile(const OperatorSpec& op, double dt) {
  return std::visit(
      overloaded{
          [](const StaticNL& s) -> std::unique_ptr<Stepper> { return std::make_unique<StaticStepper>(s); },
          [](const GainOp& g) -> std::unique_ptr<Stepper> { return std::make_unique<GainStepper>(g.k); },
          [dt](const DelayOp& d) -> std::unique_ptr<Stepper> {
            return std::make_unique<DelayStepper>(delay_steps(d.T, dt));
          },
          [dt](const LtiOp& l) -> std::unique_ptr<Stepper> {
            auto lti = std::make_unique<LtiStepper>(l.tf, dt);
            if (l.tf.delay == 0.0) return lti;
            std::vector<std::unique_ptr<Stepper>> parts;
            parts.push_back(std::make_unique<DelayStepper>(delay_steps(l.tf.delay, dt)));
            parts.push_back(std::move(lti));
            return std::make_unique<CascadeStepper>(std::move(parts));
          },
          [dt](const CascadeOp& c) -> std::unique_ptr<Stepper> {
            if (c.parts.empty()) throw InputError("cascade needs at least one part");
            std::vector<std::unique_ptr<Stepper>> parts;
            for (const auto& p : c.parts) parts.push_back(compile(p, dt));
            return std::make_unique<CascadeStepper>(std::move(parts));
          },
          [dt](const FeedbackOp& f) -> std::unique_ptr<Stepper> {
            if (f.loop.size() != 2) throw InputError("feedback needs forward and backward operators");
            return std::make_unique<FeedbackStepper>(compile(f.loop[0], dt), compile(f.loop[1], dt));
          }},
      op.node);
}

inline void collect_delays(const OperatorSpec& op, double dt, std::vector<std::pair<double, double>>& out) {
  std::visit(overloaded{[&](const DelayOp& d) {
                          out.emplace_back(d.T, static_cast<double>(delay_steps(d.T, dt)) * dt);
                        },
                        [&](const LtiOp& l) {
                          if (l.tf.delay > 0.0) {
                            out.emplace_back(l.tf.delay, static_cast<double>(delay_steps(l.tf.delay, dt)) * dt);
                          }
                        },
                        [&](const CascadeOp& c) {
                          for (const auto& p : c.parts) collect_delays(p, dt, out);
                        },
                        [&](const FeedbackOp& f) {
                          for (const auto& p : f.loop) collect_delays(p, dt, out);
                        },
                        [](const auto&) {}},
             op.node);
}

}  // namespace detail

/// (requested, simulated) delay pairs; delays are snapped to multiples of dt.
inline std::vector<std::pair<double, double>> snapped_delays(const OperatorSpec& op, double dt = kDefaultDt) {
  std::vector<std::pair<double, double>> out;
  detail::collect_delays(op, dt, out);
  return out;
}

/// Zero initial state; output has the input's length and dt.
inline Signal apply_operator(const OperatorSpec& op, const Signal& u) {
  if (!(u.dt > 0.0)) throw InputError("signal dt must be > 0");
  auto stepper = detail::compile(op, u.dt);
  Signal y{u.dt, std::vector<double>(u.size())};
  for (std::size_t k = 0; k < u.size(); ++k) {
    y.samples[k] = stepper->output(u.samples[k]);
    stepper->advance(u.samples[k]);
  }
  return y;
}

// --- z-points ----------------------------------------------------------------------

struct ZPoint {
  double gain = 0.0;
  double angle = 0.0;  // [0, pi]; the conjugate is implied
  bool infinite = false;
  bool angle_defined = true;

  [[nodiscard]] Complex point() const {
    if (infinite) return infinity_point();
    if (gain == 0.0) return {0.0, 0.0};
    return std::polar(gain, angle);
  }
};

/// Empty when both increments vanish.
inline std::optional<ZPoint> z_point(const Signal& u1, const Signal& u2, const Signal& y1, const Signal& y2) {
  const Signal du = u1 - u2;
  const Signal dy = y1 - y2;
  const double nu = norm(du);
  const double ny = norm(dy);
  if (nu == 0.0 && ny == 0.0) return std::nullopt;
  if (nu == 0.0) return ZPoint{kInf, 0.0, true, false};
  if (ny == 0.0) return ZPoint{0.0, kPi / 2, false, false};
  // angle between unit vectors a, b as 2 atan2(|a - b|, |a + b|), accurate near 0 and pi
  double diff = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < du.size(); ++k) {
    const double a = du.samples[k] / nu, b = dy.samples[k] / ny;
    diff += (a - b) * (a - b);
    sum += (a + b) * (a + b);
  }
  return ZPoint{ny / nu, 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum)), false, true};
}

// --- probe families ----------------------------------------------------------------

enum class Strategy { kSquareWave, kSinusoid, kRandomPc };

inline Strategy parse_strategy(const std::string& s) {
  if (s == "square" || s == "square_wave" || s == "square_wave_pairs") return Strategy::kSquareWave;
  if (s == "sinusoid" || s == "sinusoid_pairs") return Strategy::kSinusoid;
  if (s == "random" || s == "random_pc") return Strategy::kRandomPc;
  throw InputError("unknown sampling strategy '" + s + "'");
}

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kSquareWave: return "square_wave";
    case Strategy::kSinusoid: return "sinusoid";
    case Strategy::kRandomPc: return "random_pc";
  }
  return "?";
}

struct SampleOptions {
  double dt = kDefaultDt;
  /// Signal length; square-wave probes live on [0, 1] and are zero after.
  double horizon = 1.0;
  std::uint64_t seed = 1;
  double u_star = 1.0;    // elbow / knee location of the square-wave probes
  double epsilon = 0.25;  // elbow probe amplitude
  std::vector<double> frequencies{0.0, 0.1, 0.3, 1.0, 3.0, 10.0};
  double amplitude = 1.0;
  double segment = 0.125;  // random piecewise-constant segment length
};

struct ProbePair {
  Signal u1;
  Signal u2;
};

namespace detail {

inline std::size_t steps(double horizon, double dt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(horizon / dt)));
}

inline ProbePair square_probe(std::size_t i, const SampleOptions& o) {
  const std::size_t n = steps(o.horizon, o.dt);
  const std::size_t unit = steps(1.0, o.dt);  // support [0, 1]
  const std::size_t j = i / 2;
  const std::size_t tau_steps = j % (unit + 1);
  ProbePair p{{o.dt, std::vector<double>(n, 0.0)}, {o.dt, std::vector<double>(n, 0.0)}};
  if (i % 2 == 0) {
    // elbow probe: u1 = u*, u2 = u* + eps on [0, tau), u* - eps on [tau, 1]
    for (std::size_t k = 0; k < std::min(unit, n); ++k) {
      p.u1.samples[k] = o.u_star;
      p.u2.samples[k] = k < tau_steps ? o.u_star + o.epsilon : o.u_star - o.epsilon;
    }
  } else {
    // knee probe: u1 = M, u2 = M + u* on [0, tau), 0 on [tau, 1]
    const double m = o.u_star * std::pow(2.0, static_cast<double>((j / (unit + 1)) % 64) / 8.0);
    for (std::size_t k = 0; k < std::min(unit, n); ++k) {
      p.u1.samples[k] = m;
      p.u2.samples[k] = k < tau_steps ? m + o.u_star : 0.0;
    }
  }
  return p;
}

inline ProbePair sinusoid_probe(std::size_t i, const SampleOptions& o) {
  if (o.frequencies.empty()) throw InputError("sinusoid probes need at least one frequency");
  const double w = o.frequencies[i % o.frequencies.size()];
  const double amp = o.amplitude * (1.0 + static_cast<double>((i / o.frequencies.size()) % 4));
  // whole number of periods inside the horizon
  double horizon = o.horizon;
  if (w > 0.0) {
    const double period = 2.0 * kPi / w;
    horizon = std::max(1.0, std::floor(o.horizon / period)) * period;
  }
  const std::size_t n = steps(horizon, o.dt);
  ProbePair p{{o.dt, std::vector<double>(n)}, {o.dt, std::vector<double>(n, 0.0)}};
  for (std::size_t k = 0; k < n; ++k) {
    p.u1.samples[k] = w > 0.0 ? amp * std::sin(w * (static_cast<double>(k) + 0.5) * o.dt) : amp;
  }
  return p;
}

inline ProbePair random_probe(std::size_t i, const SampleOptions& o) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(static_cast<std::uint64_t>(i) >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, o.amplitude);
  const std::size_t n = steps(o.horizon, o.dt);
  const std::size_t active = std::max<std::size_t>(1, n / 2);
  const std::size_t seg = std::max<std::size_t>(1, steps(o.segment, o.dt));
  ProbePair p{{o.dt, std::vector<double>(n, 0.0)}, {o.dt, std::vector<double>(n, 0.0)}};
  double a = 0.0, b = 0.0;
  for (std::size_t k = 0; k < active; ++k) {
    if (k % seg == 0) {
      a = normal(rng);
      b = normal(rng);
    }
    p.u1.samples[k] = a;
    p.u2.samples[k] = b;
  }
  return p;
}

}  // namespace detail

/// Probe pair number i of a family; deterministic in (strategy, i, options).
inline ProbePair make_probe(Strategy s, std::size_t i, const SampleOptions& o) {
  if (!(o.dt > 0.0) || !(o.horizon > 0.0)) throw InputError("sampling needs dt > 0 and horizon > 0");
  switch (s) {
    case Strategy::kSquareWave: return detail::square_probe(i, o);
    case Strategy::kSinusoid: return detail::sinusoid_probe(i, o);
    case Strategy::kRandomPc: return detail::random_probe(i, o);
  }
  throw InputError("unknown strategy");
}

struct SampleCloud {
  std::vector<ZPoint> points;
  Strategy strategy = Strategy::kSquareWave;
  double dt = kDefaultDt;
  double horizon = 1.0;
  std::uint64_t seed = 1;
};

inline SampleCloud sample_srg(const OperatorSpec& op, Strategy s, std::size_t count, const SampleOptions& o = {}) {
  if (count == 0) throw InputError("sample count must be >= 1");
  SampleCloud cloud{{}, s, o.dt, o.horizon, o.seed};
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = make_probe(s, i, o);
    if (auto z = z_point(p.u1, p.u2, apply_operator(op, p.u1), apply_operator(op, p.u2))) {
      cloud.points.push_back(*z);
    }
  }
  return cloud;
}

/// Scaled graph about u_star: each probe's increment u1 - u2 is applied on
/// top of u_star and compared against the response to u_star.
inline SampleCloud sample_sg(const OperatorSpec& op, const Signal& u_star, Strategy s, std::size_t count,
                             SampleOptions o = {}) {
  if (count == 0) throw InputError("sample count must be >= 1");
  o.dt = u_star.dt;
  o.horizon = u_star.horizon();
  SampleCloud cloud{{}, s, o.dt, o.horizon, o.seed};
  const Signal y_star = apply_operator(op, u_star);
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = make_probe(s, i, o);
    Signal delta = p.u1 - p.u2;
    delta.samples.resize(u_star.size(), 0.0);
    const Signal u = u_star + delta;
    if (auto z = z_point(u, u_star, apply_operator(op, u), y_star)) cloud.points.push_back(*z);
  }
  return cloud;
}

/// Union of scaled graphs about the constant inputs in `levels`.
inline SampleCloud sample_sg_constant_inputs(const OperatorSpec& op, const std::vector<double>& levels, Strategy s,
                                             std::size_t count_per_level, const SampleOptions& o = {}) {
  SampleCloud cloud{{}, s, o.dt, o.horizon, o.seed};
  for (double v : levels) {
    auto part = sample_sg(op, constant_signal(v, o.horizon, o.dt), s, count_per_level, o);
    cloud.points.insert(cloud.points.end(), part.points.begin(), part.points.end());
  }
  return cloud;
}

// --- inclusion -----------------------------------------------------------------------

/// Signed distance from z to the region boundary, positive inside.
inline double region_slack(const Region& r, Complex z) {
  if (is_infinite(z)) return r.includes_infinity() ? kInf : -kInf;
  if (auto p = r.primitive()) {
    if (const auto* d = std::get_if<Disc>(&*p)) {
      return d->radius - std::min(std::abs(z - d->center), std::abs(z - std::conj(d->center)));
    }
  }
  if (r.contains(z)) return detail::nearest_on_boundary(z, r.boundary()).distance;
  return -point_region_distance(z, r).value;
}

struct InclusionReport {
  std::vector<double> slack;
  std::vector<std::size_t> violations;  // indices with slack < -tol
  double worst_violation = 0.0;          // max(0, -min slack)
  bool pass = true;
};

inline InclusionReport check_inclusion(const std::vector<ZPoint>& points, const Region& r, double tol) {
  if (!(tol > 0.0)) throw InputError("inclusion tolerance must be > 0");
  InclusionReport rep;
  rep.slack.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double s = region_slack(r, points[i].point());
    rep.slack.push_back(s);
    rep.worst_violation = std::max(rep.worst_violation, -s);
    if (s < -tol) rep.violations.push_back(i);
  }
  rep.pass = rep.violations.empty();
  return rep;
}

// --- JSON ---------------------------------------------------------------------------------

inline OperatorSpec operator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw InputError("operator json: expected object with 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  auto num = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw InputError("operator json: '" + type + "' needs numeric '" + key + "'");
    }
    return j[key].get<double>();
  };
  if (type == "static") {
    const std::string kind = j.value("kind", std::string());
    if (kind == "saturation") return OperatorSpec::saturation();
    if (kind == "relu") return OperatorSpec::relu();
    if (kind == "deadzone") return OperatorSpec::deadzone();
    if (kind == "table") {
      std::vector<std::pair<double, double>> pts;
      for (const auto& p : j.value("points", nlohmann::json::array())) {
        if (!p.is_array() || p.size() != 2) throw InputError("operator json: table points are [x, y]");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      return OperatorSpec::table(std::move(pts));
    }
    throw InputError("operator json: unknown static kind '" + kind + "'");
  }
  if (type == "lti") {
    if (!j.contains("tf") || !j["tf"].is_string()) throw InputError("operator json: lti needs 'tf'");
    return OperatorSpec::lti(parse_tf(j["tf"].get<std::string>()));
  }
  if (type == "delay") return OperatorSpec::delay(num("T"));
  if (type == "gain") return OperatorSpec::gain(num("k"));
  if (type == "cascade") {
    std::vector<OperatorSpec> parts;
    for (const auto& p : j.value("parts", nlohmann::json::array())) parts.push_back(operator_from_json(p));
    if (parts.empty()) throw InputError("operator json: cascade needs 'parts'");
    return OperatorSpec::cascade(std::move(parts));
  }
  if (type == "feedback") {
    if (!j.contains("forward") || !j.contains("backward")) {
      throw InputError("operator json: feedback needs 'forward' and 'backward'");
    }
    return OperatorSpec::feedback(operator_from_json(j["forward"]), operator_from_json(j["backward"]));
  }
  throw InputError("operator json: unknown type '" + type + "'");
}

}  // namespace srgkit
