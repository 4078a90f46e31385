#ifndef SCOL_REGION_HPP
#define SCOL_REGION_HPP

#include <cmath>

#include "scol/error.hpp"

namespace scol {

/// Root of exp(1/x) = x, by 60 bisection steps on [1.5, 2].
inline double alpha_star() {
  static const double root = [] {
    double lo = 1.5, hi = 2.0;
    // f(x) = exp(1/x) - x is decreasing on this bracket: f(1.5) > 0 > f(2).
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (std::exp(1.0 / mid) - mid > 0.0) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

struct RegionParams {
  double epsilon = 0.0;
  double alpha = 0.0;  // (1 + epsilon) * alpha_star
  double beta = 0.0;   // 2 - alpha + alpha / (2 (alpha^2 - 1))
  double alpha_star = 0.0;

  /// Smallest real q admitted at degree bound delta.
  double threshold(int delta) const { return alpha * delta + beta; }
};

inline RegionParams region_params(double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::BadParams, "epsilon must be positive");
  RegionParams p;
  p.epsilon = epsilon;
  p.alpha_star = alpha_star();
  p.alpha = (1.0 + epsilon) * p.alpha_star;
  p.beta = 2.0 - p.alpha + p.alpha / (2.0 * (p.alpha * p.alpha - 1.0));
  return p;
}

/// (Delta, q) lies in the parameter region for this epsilon.
inline bool in_region(int delta, int q, double epsilon) {
  const auto p = region_params(epsilon);
  return delta >= 3 && static_cast<double>(q) >= p.threshold(delta);
}

/// q >= (1+eps) alpha* Delta + 1, the hypothesis of the top-eigenvalue bound.
inline bool above_eigenvalue_threshold(int delta, int q, double epsilon) {
  const auto p = region_params(epsilon);
  return delta >= 3 && static_cast<double>(q) >= p.alpha * delta + 1.0;
}

/// Marginal-ratio lower-bound function
///   (q-2)/(Delta-1) * [(1 - 1/m)^m]^{(Delta-1)/(q-2)},  m = q - Delta + 1,
/// evaluated through a single exp/log.
inline double phi(int delta, int q) {
  if (delta < 3 || q < 3 || q < delta + 1)
    throw Error(ErrorCode::BadParams, "phi requires Delta, q >= 3 and q >= Delta + 1");
  const double m = static_cast<double>(q - delta + 1);
  const double ratio = static_cast<double>(q - 2) / static_cast<double>(delta - 1);
  return ratio * std::exp(m * std::log1p(-1.0 / m) / ratio);
}

/// Lower bound on phi over the region: 1 + (1 + 1/alpha*) epsilon.
inline double phi_region_bound(double epsilon) { return 1.0 + (1.0 + 1.0 / alpha_star()) * epsilon; }

}  // namespace scol

#endif  // SCOL_REGION_HPP
