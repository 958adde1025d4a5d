#pragma once

// Exactly solvable oscillator-shaped quantum wells with position-dependent
// mass. Two geometries: a semiconfined well with one impenetrable wall at
// x = a (Laguerre wavefunctions on (a, inf)) and a fully confined well with
// walls at x = a and x = b (Jacobi wavefunctions on (a, b)). Energies and
// normalization constants come from the closed forms; wavefunctions are
// assembled in log space so large weight exponents never overflow.

#include <pdmwell/special_functions.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pdmwell {

template <typename Scalar>
struct PhysParams {
  Scalar m0 = 1;    // mass scale
  Scalar omega = 1; // oscillator frequency
  Scalar hbar = 1;
};

using PhysParamsd = PhysParams<double>;

enum class WellKind { semiconfined, confined };

/// Geometry plus derived structural constants of one well. Construct through
/// the named factories; all parameters are validated there.
template <typename Scalar>
class WellModel {
 public:
  static WellModel semiconfined(const PhysParams<Scalar>& phys, Scalar a) {
    validate_phys(phys);
    if (!(a > Scalar(0))) throw std::domain_error("WellModel: wall position a must be positive");
    WellModel m;
    m.kind_ = WellKind::semiconfined;
    m.phys_ = phys;
    m.a_ = a;
    m.lambda0_sq_ = phys.m0 * phys.omega / phys.hbar;
    m.left_exp_ = m.lambda0_sq_ * a * a;
    return m;
  }

  static WellModel confined(const PhysParams<Scalar>& phys, Scalar a, Scalar b) {
    validate_phys(phys);
    if (!(a > Scalar(0))) throw std::domain_error("WellModel: wall position a must be positive");
    if (!(b > a)) throw std::domain_error("WellModel: require b > a");
    WellModel m;
    m.kind_ = WellKind::confined;
    m.phys_ = phys;
    m.a_ = a;
    m.b_ = b;
    m.lambda0_sq_ = phys.m0 * phys.omega / phys.hbar;
    m.left_exp_ = m.lambda0_sq_ * a * a * b / (b - a);
    m.right_exp_ = m.lambda0_sq_ * a * b * b / (b - a);
    // the two weight exponents must recombine into the spectral sum rule
    const Scalar sum = m.lambda0_sq_ * a * b * (a + b) / (b - a);
    if (std::abs(m.left_exp_ + m.right_exp_ - sum) > Scalar(1e-12) * sum)
      throw std::logic_error("WellModel: inconsistent weight exponents");
    return m;
  }

  WellKind kind() const { return kind_; }
  const PhysParams<Scalar>& phys() const { return phys_; }
  Scalar a() const { return a_; }

  Scalar b() const {
    require_confined();
    return b_;
  }

  /// m0 * omega / hbar, the squared inverse oscillator length.
  Scalar lambda0_sq() const { return lambda0_sq_; }

  /// Exponent of the (x - a) factor of the wavefunction weight.
  Scalar left_exponent() const { return left_exp_; }

  /// Exponent of the (b - x) factor (confined well only).
  Scalar right_exponent() const {
    require_confined();
    return right_exp_;
  }

  /// Sum of both Jacobi parameters, 2 * (left + right exponent).
  Scalar exponent_sum() const {
    require_confined();
    return 2 * (left_exp_ + right_exp_);
  }

 private:
  WellModel() = default;

  static void validate_phys(const PhysParams<Scalar>& phys) {
    if (!(phys.m0 > Scalar(0)) || !(phys.omega > Scalar(0)) || !(phys.hbar > Scalar(0)))
      throw std::domain_error("WellModel: m0, omega, hbar must all be positive");
  }

  void require_confined() const {
    if (kind_ != WellKind::confined)
      throw std::logic_error("WellModel: quantity only defined for the confined well");
  }

  WellKind kind_ = WellKind::semiconfined;
  PhysParams<Scalar> phys_;
  Scalar a_ = 1;
  Scalar b_ = 0;
  Scalar lambda0_sq_ = 1;
  Scalar left_exp_ = 0;
  Scalar right_exp_ = 0;
};

using WellModeld = WellModel<double>;

namespace detail {

template <typename Scalar>
void require_in_domain(const WellModel<Scalar>& model, Scalar x, bool closed) {
  const bool left_ok = closed ? x >= model.a() : x > model.a();
  if (!left_ok) throw std::domain_error("pdmwell: x outside the well domain");
  if (model.kind() == WellKind::confined) {
    const bool right_ok = closed ? x <= model.b() : x < model.b();
    if (!right_ok) throw std::domain_error("pdmwell: x outside the well domain");
  }
}

template <typename Scalar>
void require_level(int n) {
  if (n < 0) throw std::domain_error("pdmwell: level index n must be nonnegative");
}

} // namespace detail

/// Position-dependent mass profile M(x). Diverges at the walls, so x must be
/// strictly interior.
template <typename Scalar>
Scalar mass_at(const WellModel<Scalar>& model, Scalar x) {
  detail::require_in_domain(model, x, /*closed=*/false);
  const auto& p = model.phys();
  if (model.kind() == WellKind::semiconfined) return model.a() * p.m0 / (x - model.a());
  return model.a() * model.b() * p.m0 / ((x - model.a()) * (model.b() - x));
}

/// 1 / M(x), extended continuously to 0 at the walls. Defined on the closed
/// domain; used by the finite-difference oracle's flux coefficients.
template <typename Scalar>
Scalar inverse_mass_at(const WellModel<Scalar>& model, Scalar x) {
  detail::require_in_domain(model, x, /*closed=*/true);
  const auto& p = model.phys();
  if (model.kind() == WellKind::semiconfined) return (x - model.a()) / (model.a() * p.m0);
  return (x - model.a()) * (model.b() - x) / (model.a() * model.b() * p.m0);
}

/// Oscillator potential M(x) * omega^2 * x^2 / 2 built on the local mass.
template <typename Scalar>
Scalar potential_at(const WellModel<Scalar>& model, Scalar x) {
  const auto& p = model.phys();
  return mass_at(model, x) * p.omega * p.omega * x * x / 2;
}

/// Closed-form energy of level n.
template <typename Scalar>
Scalar energy_level(const WellModel<Scalar>& model, int n) {
  detail::require_level<Scalar>(n);
  const auto& p = model.phys();
  const Scalar a = model.a();
  if (model.kind() == WellKind::semiconfined)
    return p.hbar * p.omega * (n + Scalar(0.5)) + 2 * p.m0 * p.omega * p.omega * a * a;
  const Scalar b = model.b();
  return (b + a) / (b - a) * p.hbar * p.omega * (n + Scalar(0.5)) +
         p.hbar * p.hbar * n * (n + 1) / (2 * p.m0 * a * b) +
         2 * p.m0 * p.omega * p.omega * a * a * b * b / ((b - a) * (b - a));
}

/// Normalization constant of level n, stored as log magnitude plus sign so
/// that large weight exponents stay representable.
template <typename Scalar>
struct NormConstant {
  Scalar log_abs = 0;
  int sign = 1;
};

template <typename Scalar>
NormConstant<Scalar> norm_constant(const WellModel<Scalar>& model, int n) {
  detail::require_level<Scalar>(n);
  NormConstant<Scalar> c;
  if (model.kind() == WellKind::semiconfined) {
    const Scalar A = model.left_exponent();
    const Scalar rate = 2 * model.lambda0_sq() * model.a();
    c.log_abs = A + (A + Scalar(0.5)) * std::log(rate) +
                (log_gamma(Scalar(n) + 1) - log_gamma(n + 2 * A + 1)) / 2;
    c.sign = n % 2 == 0 ? 1 : -1;
    return c;
  }
  const Scalar A = model.left_exponent();
  const Scalar B = model.right_exponent();
  const Scalar S = model.exponent_sum();
  c.log_abs = -(S / 2 + Scalar(0.5)) * std::log(model.b() - model.a()) +
              (std::log(2 * n + S + 1) + log_gamma(n + S + 1) + log_gamma(Scalar(n) + 1) -
               log_gamma(n + 2 * A + 1) - log_gamma(n + 2 * B + 1)) /
                  2;
  c.sign = 1;
  return c;
}

/// Argument handed to the Laguerre factor of the semiconfined wavefunction.
template <typename Scalar>
Scalar laguerre_argument(const WellModel<Scalar>& model, Scalar x) {
  return 2 * model.lambda0_sq() * model.a() * (x - model.a());
}

/// Argument handed to the Jacobi factor of the confined wavefunction,
/// mapping (a, b) onto (-1, 1).
template <typename Scalar>
Scalar jacobi_argument(const WellModel<Scalar>& model, Scalar x) {
  return (2 * x - model.a() - model.b()) / (model.b() - model.a());
}

/// Parameters of the Laguerre factor of semiconfined level n.
template <typename Scalar>
LaguerreParams<Scalar> laguerre_params(const WellModel<Scalar>& model, int n) {
  if (model.kind() != WellKind::semiconfined)
    throw std::logic_error("laguerre_params: confined well uses Jacobi factors");
  return LaguerreParams<Scalar>(n, 2 * model.left_exponent());
}

/// Parameters of the Jacobi factor of confined level n. The first parameter
/// pairs with the (b - x) side of the weight, the second with (x - a).
template <typename Scalar>
JacobiParams<Scalar> jacobi_params(const WellModel<Scalar>& model, int n) {
  return JacobiParams<Scalar>(n, 2 * model.right_exponent(), 2 * model.left_exponent());
}

/// Normalized wavefunction value. Zero at the walls by continuous extension;
/// throws outside the closed domain.
template <typename Scalar>
Scalar wavefunction_at(const WellModel<Scalar>& model, int n, Scalar x) {
  detail::require_in_domain(model, x, /*closed=*/true);
  detail::require_level<Scalar>(n);
  const NormConstant<Scalar> c = norm_constant(model, n);
  if (model.kind() == WellKind::semiconfined) {
    if (x == model.a()) return 0;
    const Scalar g = model.left_exponent() * std::log(x - model.a()) -
                     model.lambda0_sq() * model.a() * x;
    const Scalar poly = laguerre_eval(laguerre_params(model, n), laguerre_argument(model, x));
    return c.sign * std::exp(c.log_abs + g) * poly;
  }
  if (x == model.a() || x == model.b()) return 0;
  const Scalar g = model.left_exponent() * std::log(x - model.a()) +
                   model.right_exponent() * std::log(model.b() - x);
  const Scalar poly = jacobi_eval(jacobi_params(model, n), jacobi_argument(model, x));
  return c.sign * std::exp(c.log_abs + g) * poly;
}

/// Probability density |psi_n(x)|^2.
template <typename Scalar>
Scalar density_at(const WellModel<Scalar>& model, int n, Scalar x) {
  const Scalar psi = wavefunction_at(model, n, x);
  return psi * psi;
}

/// Wavefunction with its first two derivatives at a strictly interior point.
/// Derivatives use the exact degree-lowering identities of the polynomial
/// factor plus product and chain rule on the log weight.
template <typename Scalar>
struct WavefunctionJet {
  Scalar psi = 0;
  Scalar dpsi = 0;
  Scalar d2psi = 0;
};

template <typename Scalar>
WavefunctionJet<Scalar> wavefunction_derivatives(const WellModel<Scalar>& model, int n, Scalar x) {
  detail::require_in_domain(model, x, /*closed=*/false);
  detail::require_level<Scalar>(n);
  const NormConstant<Scalar> c = norm_constant(model, n);

  Scalar g, gp, gpp;       // log weight and its derivatives
  Scalar poly, dpoly, d2poly; // polynomial factor, derivatives w.r.t. x
  if (model.kind() == WellKind::semiconfined) {
    const Scalar A = model.left_exponent();
    const Scalar u = x - model.a();
    const Scalar rate = model.lambda0_sq() * model.a();
    g = A * std::log(u) - rate * x;
    gp = A / u - rate;
    gpp = -A / (u * u);
    const LaguerreParams<Scalar> lp = laguerre_params(model, n);
    const Scalar arg = laguerre_argument(model, x);
    const Scalar darg = 2 * rate;
    poly = laguerre_eval(lp, arg);
    dpoly = laguerre_deriv(lp, arg) * darg;
    d2poly = laguerre_deriv2(lp, arg) * darg * darg;
  } else {
    const Scalar A = model.left_exponent();
    const Scalar B = model.right_exponent();
    const Scalar u = x - model.a();
    const Scalar v = model.b() - x;
    g = A * std::log(u) + B * std::log(v);
    gp = A / u - B / v;
    gpp = -A / (u * u) - B / (v * v);
    const JacobiParams<Scalar> jp = jacobi_params(model, n);
    const Scalar arg = jacobi_argument(model, x);
    const Scalar darg = 2 / (model.b() - model.a());
    poly = jacobi_eval(jp, arg);
    dpoly = jacobi_deriv(jp, arg) * darg;
    d2poly = jacobi_deriv2(jp, arg) * darg * darg;
  }

  const Scalar weight = c.sign * std::exp(c.log_abs + g);
  WavefunctionJet<Scalar> jet;
  jet.psi = weight * poly;
  jet.dpsi = weight * (gp * poly + dpoly);
  jet.d2psi = weight * ((gpp + gp * gp) * poly + 2 * gp * dpoly + d2poly);
  return jet;
}

/// One row of a spectrum listing.
template <typename Scalar>
struct SpectrumLevel {
  int n = 0;
  Scalar energy = 0;
  Scalar log_norm = 0;
  int sign = 1;
};

template <typename Scalar>
std::vector<SpectrumLevel<Scalar>> spectrum_table(const WellModel<Scalar>& model, int n_max) {
  detail::require_level<Scalar>(n_max);
  std::vector<SpectrumLevel<Scalar>> table;
  table.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const NormConstant<Scalar> c = norm_constant(model, n);
    table.push_back({n, energy_level(model, n), c.log_abs, c.sign});
  }
  return table;
}

/// Right edge of the numerically relevant support of levels 0..n_max: the
/// confined well ends at b; for the semiconfined well, scan outward with
/// domain doubling until every level has fallen below rel_tol of its peak.
/// The returned extent depends only on (model, n_max, rel_tol), so grid
/// refinements of a discretized oracle all see the same domain.
template <typename Scalar>
Scalar tail_extent(const WellModel<Scalar>& model, int n_max, Scalar rel_tol = Scalar(1e-12)) {
  detail::require_level<Scalar>(n_max);
  if (!(rel_tol > Scalar(0)) || !(rel_tol < Scalar(1)))
    throw std::domain_error("tail_extent: rel_tol must lie in (0, 1)");
  if (model.kind() == WellKind::confined) return model.b();

  const Scalar rate = model.lambda0_sq() * model.a(); // amplitude decay of exp(-rate x)
  Scalar span = (12 + n_max) / rate;
  const int samples = 4096;
  for (int round = 0; round < 60; ++round) {
    Scalar peak = 0;
    int last_above = -1;
    for (int j = 0; j < samples; ++j) {
      const Scalar x = model.a() + (j + Scalar(0.5)) * span / samples;
      Scalar mag = 0;
      for (int n = 0; n <= n_max; ++n)
        mag = std::max(mag, std::abs(wavefunction_at(model, n, x)));
      peak = std::max(peak, mag);
      if (mag >= rel_tol * peak) last_above = j;
    }
    if (last_above < samples - samples / 8)
      return model.a() + (last_above + 1) * span / samples;
    span *= 2;
  }
  throw std::runtime_error("tail_extent: support did not close after doubling scan");
}

} // namespace pdmwell
