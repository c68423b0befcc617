#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfdiv/extended_real.hpp"

namespace qfdiv {

// One term w * (t-1)^2 / (t+s) of a canonical representation; s > 0, w > 0.
struct CanonicalAtom {
  double s;
  double w;
};

// Canonical combination a + b(t-1) + c(t-1)^2 + d(t-1)^2/t + atom terms.
struct CanonicalData {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  std::vector<CanonicalAtom> atoms;
};

// Convex function on (0, inf) together with its exact boundary data
// f(0+) and f'(+inf), each a value in (-inf, +inf].
class OperatorConvexFunction {
 public:
  static OperatorConvexFunction xlogx();
  static OperatorConvexFunction neglog();
  // t^alpha, alpha in (1, inf).
  static OperatorConvexFunction power(double alpha);
  // -t^alpha, alpha in (0, 1).
  static OperatorConvexFunction negpower(double alpha);
  static OperatorConvexFunction square();
  static OperatorConvexFunction affine(double a, double b);
  // (t-1)^2.
  static OperatorConvexFunction chi2();
  static OperatorConvexFunction canonical(const CanonicalData& data);

  // Evaluate at t > 0.
  double operator()(double t) const;

  ExtendedReal value_at_zero() const { return f0_; }
  ExtendedReal slope_at_infinity() const { return fpinf_; }
  std::pair<ExtendedReal, ExtendedReal> endpoints() const { return {f0_, fpinf_}; }

  // t |-> t f(1/t); endpoints swap.
  OperatorConvexFunction transpose() const;

  bool is_canonical() const { return canonical_.has_value(); }
  const CanonicalData& canonical_data() const;

  // Truncation that keeps only spectral content at scales within [1/n, n];
  // both endpoints of the result are finite. Canonical form only.
  OperatorConvexFunction cutoff_approximant(int n) const;

  // (1-t) f(t/(1-t)) for t in (0,1); f(0+) at t=0 and f'(+inf) at t=1.
  // Accepts t within 1e-9 outside [0,1] and clamps.
  ExtendedReal perspective_weight(double t) const;

  const std::string& label() const { return label_; }

 private:
  OperatorConvexFunction(std::string label, std::function<double(double)> eval,
                         ExtendedReal f0, ExtendedReal fpinf,
                         std::optional<CanonicalData> canonical);

  std::string label_;
  std::function<double(double)> eval_;
  ExtendedReal f0_;
  ExtendedReal fpinf_;
  std::optional<CanonicalData> canonical_;
};

}  // namespace qfdiv
