#pragma once

// Real rational transfer functions with an optional pure delay,
// G(s) = N(s)/D(s) * exp(-T s).

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "srgkit/error.hpp"
#include "srgkit/geometry.hpp"

namespace srgkit {

/// Coefficients in descending powers of s.
using Polynomial = std::vector<double>;

struct TransferFunction {
  Polynomial num{1.0};
  Polynomial den{1.0};
  double delay = 0.0;

  [[nodiscard]] std::size_t num_degree() const { return num.empty() ? 0 : num.size() - 1; }
  [[nodiscard]] std::size_t den_degree() const { return den.size() - 1; }
  [[nodiscard]] bool strictly_proper() const { return num_degree() < den_degree(); }
};

namespace detail {

inline Polynomial poly_trim(Polynomial p) {
  std::size_t lead = 0;
  while (lead + 1 < p.size() && p[lead] == 0.0) ++lead;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lead));
  if (p.empty()) p.push_back(0.0);
  return p;
}

inline bool poly_is_zero(const Polynomial& p) {
  for (double c : p) {
    if (c != 0.0) return false;
  }
  return true;
}

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b, double sign = 1.0) {
  const std::size_t n = std::max(a.size(), b.size());
  Polynomial out(n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[n - a.size() + i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[n - b.size() + i] += sign * b[i];
  return poly_trim(out);
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_trim(out);
}

inline Complex poly_eval(const Polynomial& p, Complex s) {
  Complex acc{0.0, 0.0};
  for (double c : p) acc = acc * s + c;
  return acc;
}

/// N/D with a delay exponent; the parser's value type.
struct RationalTerm {
  Polynomial num{1.0};
  Polynomial den{1.0};
  double delay = 0.0;
};

class TfParser {
 public:
  explicit TfParser(std::string text) : text_(std::move(text)) {}

  RationalTerm parse() {
    RationalTerm v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("transfer function syntax error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalTerm add(const RationalTerm& a, const RationalTerm& b, double sign) {
    if (a.delay != b.delay) fail("delay must be a common factor of the whole expression");
    if (a.den == b.den) return {poly_add(a.num, b.num, sign), a.den, a.delay};
    return {poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den), sign), poly_mul(a.den, b.den),
            a.delay};
  }

  RationalTerm mul(const RationalTerm& a, const RationalTerm& b) {
    return {poly_mul(a.num, b.num), poly_mul(a.den, b.den), a.delay + b.delay};
  }

  RationalTerm div(const RationalTerm& a, const RationalTerm& b) {
    if (poly_is_zero(b.num)) fail("division by zero polynomial");
    return {poly_mul(a.num, b.den), poly_mul(a.den, b.num), a.delay - b.delay};
  }

  RationalTerm expr() {
    RationalTerm v = term();
    for (;;) {
      if (eat('+')) {
        v = add(v, term(), 1.0);
      } else if (eat('-')) {
        v = add(v, term(), -1.0);
      } else {
        return v;
      }
    }
  }

  RationalTerm term() {
    RationalTerm v = unary();
    for (;;) {
      if (eat('*')) {
        v = mul(v, unary());
      } else if (eat('/')) {
        v = div(v, unary());
      } else {
        return v;
      }
    }
  }

  RationalTerm unary() {
    if (eat('-')) {
      RationalTerm v = unary();
      for (double& c : v.num) c = -c;
      return v;
    }
    if (eat('+')) return unary();
    return power();
  }

  RationalTerm power() {
    RationalTerm base = primary();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    bool negative = false;
    if (eat('-')) negative = true;
    skip();
    std::size_t digits = pos_;
    while (digits < text_.size() && std::isdigit(static_cast<unsigned char>(text_[digits]))) ++digits;
    if (digits == pos_) {
      pos_ = start;
      fail("exponent must be an integer literal");
    }
    const int k = std::stoi(text_.substr(pos_, digits - pos_));
    pos_ = digits;
    RationalTerm out;
    for (int i = 0; i < k; ++i) out = mul(out, base);
    if (negative) out = div(RationalTerm{}, out);
    return out;
  }

  RationalTerm primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalTerm v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 's') {
      ++pos_;
      return {{1.0, 0.0}, {1.0}, 0.0};
    }
    if (text_.compare(pos_, 3, "exp") == 0) {
      pos_ += 3;
      if (!eat('(')) fail("expected '(' after exp");
      const std::size_t arg_pos = pos_;
      RationalTerm arg = expr();
      if (!eat(')')) fail("expected ')'");
      const auto num = poly_trim(arg.num);
      const auto den = poly_trim(arg.den);
      const bool linear = arg.delay == 0.0 && den.size() == 1 && num.size() == 2 && num[1] == 0.0;
      if (!linear) {
        pos_ = arg_pos;
        fail("delay exponent must be of the form -T*s with constant T");
      }
      const double t = -num[0] / den[0];
      if (!(t >= 0.0) || !std::isfinite(t)) {
        pos_ = arg_pos;
        fail("delay T must be a nonnegative constant");
      }
      return {{1.0}, {1.0}, t};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return {{v}, {1.0}, 0.0};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_poly(const Polynomial& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t power = p.size() - 1 - i;
    if (i > 0) out += "+";
    out += format_number(p[i]);
    if (power >= 1) out += "*s^" + std::to_string(power);
  }
  return out;
}

}  // namespace detail

/// Normalises coefficient lists: leading zeros stripped, monic denominator.
inline TransferFunction make_tf(Polynomial num, Polynomial den, double delay = 0.0) {
  num = detail::poly_trim(std::move(num));
  den = detail::poly_trim(std::move(den));
  if (detail::poly_is_zero(den)) throw InputError("transfer function: zero denominator");
  if (!(delay >= 0.0) || !std::isfinite(delay)) throw InputError("transfer function: delay must be >= 0");
  for (double c : num)
    if (!std::isfinite(c)) throw InputError("transfer function: non-finite coefficient");
  for (double c : den)
    if (!std::isfinite(c)) throw InputError("transfer function: non-finite coefficient");
  const double lead = den.front();
  if (lead != 1.0) {
    for (double& c : num) c /= lead;
    for (double& c : den) c /= lead;
  }
  return {std::move(num), std::move(den), delay};
}

inline TransferFunction parse_tf(const std::string& expr) {
  auto term = detail::TfParser(expr).parse();
  if (term.delay < 0.0) throw InputError("transfer function: net delay exponent must be -T*s with T >= 0");
  return make_tf(std::move(term.num), std::move(term.den), term.delay);
}

/// Canonical text form; parse_tf(to_string(tf)) reproduces the coefficients.
inline std::string to_string(const TransferFunction& tf) {
  std::string out = "(" + detail::format_poly(tf.num) + ")/(" + detail::format_poly(tf.den) + ")";
  if (tf.delay > 0.0) out += "*exp(-" + detail::format_number(tf.delay) + "*s)";
  return out;
}

/// G(j w) including the exact delay phase.
inline Complex eval_tf(const TransferFunction& tf, double omega) {
  const Complex s{0.0, omega};
  const Complex d = detail::poly_eval(tf.den, s);
  double scale = 0.0;
  for (double c : tf.den) scale = std::max(scale, std::abs(c));
  if (std::abs(d) <= 1e-14 * scale * std::max(1.0, std::pow(std::abs(omega), tf.den_degree()))) {
    throw NumericalError("eval_tf: pole on the imaginary axis at w = " + detail::format_number(omega));
  }
  Complex g = detail::poly_eval(tf.num, s) / d;
  if (tf.delay > 0.0) g *= std::polar(1.0, -omega * tf.delay);
  return g;
}

inline std::vector<Complex> tf_poles(const TransferFunction& tf) {
  const std::size_t n = tf.den_degree();
  if (n == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) companion(0, static_cast<Eigen::Index>(i)) = -tf.den[i + 1] / tf.den[0];
  for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

/// All poles strictly in the open left half-plane (Re < -1e-9).
inline bool is_hurwitz(const TransferFunction& tf) {
  for (auto p : tf_poles(tf)) {
    if (!(p.real() < -1e-9)) return false;
  }
  return true;
}

struct FrequencyGrid {
  double wmin = 1e-3;
  double wmax = 1e3;
  std::size_t points = 2048;
  bool include_zero = true;
  bool extend_tail = true;
};

/// Log-spaced frequencies (plus w = 0); for strictly proper G the grid is
/// extended past wmax until |G| drops below 1e-6 of its maximum.
inline std::vector<double> frequency_grid(const TransferFunction& tf, const FrequencyGrid& grid = {}) {
  if (!(grid.wmin > 0.0) || !(grid.wmax > grid.wmin) || grid.points < 2) {
    throw InputError("frequency grid: need 0 < wmin < wmax and at least 2 points");
  }
  std::vector<double> w;
  if (grid.include_zero) w.push_back(0.0);
  const double la = std::log10(grid.wmin);
  const double lb = std::log10(grid.wmax);
  for (std::size_t i = 0; i < grid.points; ++i) {
    w.push_back(std::pow(10.0, la + (lb - la) * static_cast<double>(i) / static_cast<double>(grid.points - 1)));
  }
  if (grid.extend_tail && tf.strictly_proper()) {
    double peak = 0.0;
    for (double x : w) peak = std::max(peak, std::abs(eval_tf(tf, x)));
    const double step = std::pow(10.0, (lb - la) / static_cast<double>(grid.points - 1));
    double x = w.back();
    while (std::abs(eval_tf(tf, x)) >= 1e-6 * peak && x < 1e12) {
      x *= step;
      w.push_back(x);
    }
  }
  return w;
}

}  // namespace srgkit
