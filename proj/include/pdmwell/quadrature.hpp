#pragma once

// Gauss-Legendre rules (Newton iteration on the Legendre recurrence) and the
// finite / semi-infinite integration drivers used by the verification
// harness. Rules are immutable after construction and freely shareable.

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace pdmwell {

namespace detail {

// P_n(x) and P'_n(x) from the Legendre three-term recurrence; |x| < 1.
template <typename Scalar>
std::pair<Scalar, Scalar> legendre_with_deriv(int n, Scalar x) {
  Scalar prev = Scalar(1);
  Scalar cur = x;
  for (int j = 2; j <= n; ++j) {
    const Scalar next = ((2 * j - 1) * x * cur - (j - 1) * prev) / j;
    prev = cur;
    cur = next;
  }
  return {cur, n * (x * cur - prev) / (x * x - 1)};
}

} // namespace detail

/// Nodes and weights of a Gauss-Legendre rule on (-1, 1). Nodes are strictly
/// increasing and symmetric about 0; paired weights are bitwise equal.
template <typename Scalar>
struct QuadratureRule {
  int order = 0;
  Eigen::Vector<Scalar, Eigen::Dynamic> nodes;
  Eigen::Vector<Scalar, Eigen::Dynamic> weights;
};

using QuadratureRuled = QuadratureRule<double>;

/// Build the Gauss-Legendre rule of the given order. Newton iteration from
/// Chebyshev initial guesses; stops at |dz| < 1e-15 or throws after 100
/// iterations rather than falling back silently.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_legendre_rule(int order) {
  if (order < 1) throw std::domain_error("gauss_legendre_rule: order must be positive");
  QuadratureRule<Scalar> rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);

  const Scalar pi = Scalar(3.141592653589793238462643383279503L);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar z = std::cos(pi * (i + Scalar(0.75)) / (order + Scalar(0.5)));
    if (order % 2 == 1 && i == half - 1) {
      z = Scalar(0); // middle root is exact for odd orders
    } else {
      Scalar dz;
      int iter = 0;
      do {
        const auto [value, deriv] = detail::legendre_with_deriv(order, z);
        dz = value / deriv;
        z -= dz;
        if (++iter >= 100)
          throw std::runtime_error("gauss_legendre_rule: Newton iteration did not converge");
      } while (std::abs(dz) > Scalar(1e-15));
    }
    const auto [value, deriv] = detail::legendre_with_deriv(order, z);
    (void)value;
    const Scalar w = 2 / ((1 - z * z) * deriv * deriv);
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }

  for (int i = 1; i < order; ++i)
    if (!(rule.nodes[i] > rule.nodes[i - 1]))
      throw std::runtime_error("gauss_legendre_rule: nodes not strictly increasing");
  if (std::abs(rule.weights.sum() - Scalar(2)) > Scalar(1e-13))
    throw std::runtime_error("gauss_legendre_rule: weights do not sum to 2");
  return rule;
}

/// Gauss-Legendre estimate of the integral of f over (a, b) with a
/// prebuilt reference rule.
template <typename F, typename Scalar>
Scalar integrate_finite(F&& f, Scalar a, Scalar b, const QuadratureRule<Scalar>& rule) {
  if (!(a < b)) throw std::domain_error("integrate_finite: require a < b");
  const Scalar center = (a + b) / 2;
  const Scalar scale = (b - a) / 2;
  Scalar sum = 0;
  for (int i = 0; i < rule.order; ++i)
    sum += rule.weights[i] * f(center + scale * rule.nodes[i]);
  return scale * sum;
}

/// Convenience overload that builds the rule of the given order.
template <typename F, typename Scalar>
Scalar integrate_finite(F&& f, Scalar a, Scalar b, int order) {
  return integrate_finite(std::forward<F>(f), a, b, gauss_legendre_rule<Scalar>(order));
}

/// Integral of f over (a, +inf) for integrands bounded by
/// poly(x) * exp(-decay_rate * (x - a)). Truncates where the full envelope
/// u^poly_degree * exp(-decay_rate u) falls below tail_tol with a safety
/// margin of 10 decay lengths (the span solves the envelope equation by
/// fixed-point iteration), then applies composite Gauss-Legendre panels of
/// one decay length (panels_per_decay subdivisions each).
template <typename F, typename Scalar>
Scalar integrate_semi_infinite(F&& f, Scalar a, Scalar decay_rate, Scalar tail_tol,
                               int poly_degree = 0, int order = 64, int panels_per_decay = 1) {
  if (!(decay_rate > Scalar(0)))
    throw std::domain_error("integrate_semi_infinite: decay_rate must be positive");
  if (!(tail_tol > Scalar(0)))
    throw std::domain_error("integrate_semi_infinite: tail_tol must be positive");
  if (poly_degree < 0 || panels_per_decay < 1)
    throw std::domain_error("integrate_semi_infinite: bad refinement parameters");

  // Solve decay_rate * s - poly_degree * ln(s) = ln(1/tail_tol) + 10 for the
  // truncation span s; the iteration contracts once s > poly_degree / decay_rate.
  const Scalar base = std::log(1 / tail_tol) + 10;
  Scalar span = (base + poly_degree) / decay_rate;
  for (int it = 0; it < 4 && poly_degree > 0; ++it)
    span = (base + poly_degree * std::log(std::max(span, std::numbers::e_v<Scalar>))) /
           decay_rate;
  const int panels = static_cast<int>(std::ceil(span * decay_rate)) * panels_per_decay;
  const Scalar width = span / panels;
  const QuadratureRule<Scalar> rule = gauss_legendre_rule<Scalar>(order);
  Scalar sum = 0;
  for (int j = 0; j < panels; ++j)
    sum += integrate_finite(f, a + j * width, a + (j + 1) * width, rule);
  return sum;
}

} // namespace pdmwell
