#include "qfdiv/ocf.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace qfdiv {

OperatorConvexFunction::OperatorConvexFunction(
    std::string label, std::function<double(double)> eval, ExtendedReal f0,
    ExtendedReal fpinf, std::optional<CanonicalData> canonical)
    : label_(std::move(label)),
      eval_(std::move(eval)),
      f0_(f0),
      fpinf_(fpinf),
      canonical_(std::move(canonical)) {}

OperatorConvexFunction OperatorConvexFunction::xlogx() {
  return OperatorConvexFunction(
      "xlogx", [](double t) { return t * std::log(t); }, ExtendedReal(0.0),
      ExtendedReal::infinity(), std::nullopt);
}

OperatorConvexFunction OperatorConvexFunction::neglog() {
  return OperatorConvexFunction(
      "neglog", [](double t) { return -std::log(t); }, ExtendedReal::infinity(),
      ExtendedReal(0.0), std::nullopt);
}

OperatorConvexFunction OperatorConvexFunction::power(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("power: alpha must lie in (1, inf)");
  }
  std::ostringstream label;
  label << "power(" << alpha << ")";
  return OperatorConvexFunction(
      label.str(), [alpha](double t) { return std::pow(t, alpha); },
      ExtendedReal(0.0), ExtendedReal::infinity(), std::nullopt);
}

OperatorConvexFunction OperatorConvexFunction::negpower(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("negpower: alpha must lie in (0, 1)");
  }
  std::ostringstream label;
  label << "negpower(" << alpha << ")";
  return OperatorConvexFunction(
      label.str(), [alpha](double t) { return -std::pow(t, alpha); },
      ExtendedReal(0.0), ExtendedReal(0.0), std::nullopt);
}

OperatorConvexFunction OperatorConvexFunction::square() {
  return OperatorConvexFunction(
      "square", [](double t) { return t * t; }, ExtendedReal(0.0),
      ExtendedReal::infinity(), std::nullopt);
}

OperatorConvexFunction OperatorConvexFunction::affine(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("affine: coefficients must be finite");
  }
  std::ostringstream label;
  label << "affine(" << a << "," << b << ")";
  return OperatorConvexFunction(
      label.str(), [a, b](double t) { return a + b * t; }, ExtendedReal(a),
      ExtendedReal(b), std::nullopt);
}

OperatorConvexFunction OperatorConvexFunction::chi2() {
  return OperatorConvexFunction(
      "chi2", [](double t) { return (t - 1.0) * (t - 1.0); }, ExtendedReal(1.0),
      ExtendedReal::infinity(), std::nullopt);
}

namespace {

double canonical_eval(const CanonicalData& g, double t) {
  const double u = t - 1.0;
  double v = g.a + g.b * u + g.c * u * u + g.d * u * u / t;
  for (const auto& atom : g.atoms) v += atom.w * u * u / (t + atom.s);
  return v;
}

}  // namespace

OperatorConvexFunction OperatorConvexFunction::canonical(const CanonicalData& data) {
  if (data.c < 0.0 || data.d < 0.0) {
    throw std::invalid_argument("canonical: c and d must be nonnegative");
  }
  for (const auto& atom : data.atoms) {
    if (!(atom.s > 0.0) || !(atom.w > 0.0)) {
      throw std::invalid_argument("canonical: atoms need s > 0 and w > 0");
    }
  }
  ExtendedReal f0 = ExtendedReal::infinity();
  if (data.d == 0.0) {
    double v = data.a - data.b + data.c;
    for (const auto& atom : data.atoms) v += atom.w / atom.s;
    f0 = ExtendedReal(v);
  }
  ExtendedReal fpinf = ExtendedReal::infinity();
  if (data.c == 0.0) {
    double v = data.b + data.d;
    for (const auto& atom : data.atoms) v += atom.w;
    fpinf = ExtendedReal(v);
  }
#ifndef NDEBUG
  if (f0.is_finite()) {
    assert(std::abs(canonical_eval(data, 1e-9) - f0.value()) <=
           1e-6 * std::max(1.0, std::abs(f0.value())));
  }
  if (fpinf.is_finite()) {
    assert(std::abs(canonical_eval(data, 1e9) / 1e9 - fpinf.value()) <=
           1e-6 * std::max(1.0, std::abs(fpinf.value())));
  }
#endif
  CanonicalData copy = data;
  return OperatorConvexFunction(
      "canonical", [copy](double t) { return canonical_eval(copy, t); }, f0,
      fpinf, data);
}

double OperatorConvexFunction::operator()(double t) const {
  if (!(t > 0.0)) {
    throw std::domain_error("OperatorConvexFunction: argument must be positive");
  }
  return eval_(t);
}

const CanonicalData& OperatorConvexFunction::canonical_data() const {
  if (!canonical_) {
    throw std::logic_error("canonical_data: function is not in canonical form");
  }
  return *canonical_;
}

OperatorConvexFunction OperatorConvexFunction::transpose() const {
  auto inner = eval_;
  return OperatorConvexFunction(
      "transpose(" + label_ + ")",
      [inner](double t) { return t * inner(1.0 / t); }, fpinf_, f0_,
      std::nullopt);
}

OperatorConvexFunction OperatorConvexFunction::cutoff_approximant(int n) const {
  if (!canonical_) {
    throw std::invalid_argument(
        "cutoff_approximant: requires the canonical form");
  }
  if (n < 1) throw std::invalid_argument("cutoff_approximant: n must be >= 1");
  const CanonicalData& g = *canonical_;
  const double nd = static_cast<double>(n);
  CanonicalData truncated;
  truncated.a = g.a;
  truncated.b = g.b;
  for (const auto& atom : g.atoms) {
    if (atom.s >= 1.0 / nd && atom.s <= nd) truncated.atoms.push_back(atom);
  }
  if (g.c > 0.0) truncated.atoms.push_back({nd, g.c * nd});
  if (g.d > 0.0) truncated.atoms.push_back({1.0 / nd, g.d});
  return canonical(truncated);
}

ExtendedReal OperatorConvexFunction::perspective_weight(double t) const {
  constexpr double clamp_tol = 1e-9;
  if (t < -clamp_tol || t > 1.0 + clamp_tol) {
    throw std::domain_error("perspective_weight: argument outside [0, 1]");
  }
  if (t <= 0.0) return f0_;
  if (t >= 1.0) return fpinf_;
  const double q = 1.0 - t;
  return ExtendedReal(q * eval_(t / q));
}

}  // namespace qfdiv
