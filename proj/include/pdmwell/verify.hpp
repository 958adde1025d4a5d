#pragma once

// Numerical cross-checks of the closed-form well solutions: orthonormality
// by quadrature, residuals of the reduced eigenvalue equation, an
// independent finite-difference spectrum, and the approach of the confined
// well to the semiconfined one as the outer wall recedes. Every check
// reports an observed number against an explicit bound.

#include <pdmwell/models.hpp>
#include <pdmwell/quadrature.hpp>
#include <pdmwell/tridiagonal.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdmwell {

/// Gram matrix G(m, n) = integral of psi_m * psi_n over the well, for
/// m, n <= n_max. Confined wells integrate over (a, b) with one rule of the
/// given order; the semiconfined well uses exponential-tail truncation with
/// the same order per unit-decay panel.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> orthonormality_matrix(
    const WellModel<Scalar>& model, int n_max, int quad_order = 200) {
  detail::require_level<Scalar>(n_max);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gram(n_max + 1, n_max + 1);
  for (int m = 0; m <= n_max; ++m) {
    for (int n = m; n <= n_max; ++n) {
      const auto f = [&](Scalar x) {
        return wavefunction_at(model, m, x) * wavefunction_at(model, n, x);
      };
      Scalar value;
      if (model.kind() == WellKind::confined) {
        value = integrate_finite(f, model.a(), model.b(), quad_order);
      } else {
        const Scalar decay = 2 * model.lambda0_sq() * model.a();
        const int degree = static_cast<int>(std::ceil(2 * model.left_exponent())) + m + n;
        value = integrate_semi_infinite(f, model.a(), decay, Scalar(1e-15), degree, quad_order);
      }
      gram(m, n) = value;
      gram(n, m) = value;
    }
  }
  return gram;
}

/// Relative residual of the reduced second-order eigenvalue equation at x,
/// scaled by the largest of the three participating terms. A correct
/// (level, energy) pair drives this to roundoff; a perturbed energy does not.
template <typename Scalar>
Scalar ode_residual(const WellModel<Scalar>& model, int n, Scalar x, Scalar energy) {
  const WavefunctionJet<Scalar> jet = wavefunction_derivatives(model, n, x);
  const auto& p = model.phys();
  const Scalar a = model.a();
  const Scalar l2 = model.lambda0_sq();
  Scalar t1, t2, t3;
  if (model.kind() == WellKind::semiconfined) {
    const Scalar c0 = 2 * p.m0 * a * energy / (p.hbar * p.hbar);
    t1 = jet.d2psi;
    t2 = jet.dpsi / (x - a);
    t3 = -(l2 * l2 * a * a * x * x - c0 * x + a * c0) / ((x - a) * (x - a)) * jet.psi;
  } else {
    const Scalar b = model.b();
    const Scalar c1 = 2 * p.m0 * a * b * energy / (p.hbar * p.hbar);
    const Scalar c2 = c1 + l2 * l2 * a * a * b * b;
    const Scalar u = x - a;
    const Scalar v = b - x;
    t1 = jet.d2psi;
    t2 = -(2 * x - (a + b)) / (u * v) * jet.dpsi;
    t3 = -(c2 * x * x - (a + b) * c1 * x + a * b * c1) / (u * u * v * v) * jet.psi;
  }
  const Scalar scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
  if (scale == Scalar(0)) return 0;
  return std::abs(t1 + t2 + t3) / scale;
}

template <typename Scalar>
Scalar ode_residual(const WellModel<Scalar>& model, int n, Scalar x) {
  return ode_residual(model, n, x, energy_level(model, n));
}

/// Largest relative residual of level n over n_points Chebyshev-spaced
/// interior points of the numerically relevant domain; the clustering toward
/// the walls probes the equation where its coefficients are most singular.
/// energy_scale multiplies the closed-form energy, so 1 probes the exact
/// pair and anything else probes detuning.
template <typename Scalar>
Scalar max_ode_residual(const WellModel<Scalar>& model, int n, int n_points,
                        Scalar energy_scale = Scalar(1)) {
  if (n_points < 1) throw std::domain_error("max_ode_residual: need at least one point");
  const Scalar lo = model.a();
  const Scalar hi = model.kind() == WellKind::confined ? model.b() : tail_extent(model, n);
  const Scalar mid = (lo + hi) / 2;
  const Scalar half = (hi - lo) / 2;
  const Scalar energy = energy_level(model, n) * energy_scale;
  Scalar worst = 0;
  for (int j = 0; j < n_points; ++j) {
    const Scalar x =
        mid + half * std::cos(std::numbers::pi_v<Scalar> * (2 * j + 1) / (2 * n_points));
    worst = std::max(worst, ode_residual(model, n, x, energy));
  }
  return worst;
}

/// Flux-form finite-difference Hamiltonian on n_cells interior nodes of
/// (a, x_right) with Dirichlet walls. The inverse mass enters at half-grid
/// points, where its continuous extension to 0 at the walls keeps the
/// operator finite and symmetric.
template <typename Scalar>
TridiagonalOperator<Scalar> fd_hamiltonian(const WellModel<Scalar>& model, int n_cells,
                                           Scalar x_right) {
  if (n_cells < 2) throw std::domain_error("fd_hamiltonian: need at least two cells");
  if (!(x_right > model.a())) throw std::domain_error("fd_hamiltonian: x_right must exceed a");
  const Scalar h = (x_right - model.a()) / (n_cells + 1);
  const Scalar kinetic = model.phys().hbar * model.phys().hbar / (2 * h * h);
  TridiagonalOperator<Scalar> op;
  op.diag.resize(n_cells);
  op.off.resize(n_cells - 1);
  for (int i = 0; i < n_cells; ++i) {
    const Scalar x = model.a() + (i + 1) * h;
    const Scalar k_left = inverse_mass_at(model, x - h / 2);
    const Scalar k_right = inverse_mass_at(model, x + h / 2);
    op.diag[i] = kinetic * (k_left + k_right) + potential_at(model, x);
    if (i + 1 < n_cells) op.off[i] = -kinetic * k_right;
  }
  return op;
}

/// The k lowest finite-difference eigenvalues. The confined well ends at b;
/// the semiconfined domain is truncated at the tail extent of the requested
/// levels, which depends only on the model, so every grid refinement
/// discretizes the identical interval.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> fd_oracle_spectrum(const WellModel<Scalar>& model,
                                                         int n_cells, int k) {
  if (k < 1) throw std::domain_error("fd_oracle_spectrum: k must be positive");
  const Scalar x_right =
      model.kind() == WellKind::confined ? model.b() : tail_extent(model, k - 1);
  return smallest_eigenvalues(fd_hamiltonian(model, n_cells, x_right), k);
}

/// Richardson extrapolation from three successive grid halvings. The order
/// is estimated from the ratio of successive differences; when the
/// differences do not contract with a consistent sign the data is returned
/// unextrapolated with order NaN.
template <typename Scalar>
struct RichardsonEstimate {
  Scalar value = 0;
  Scalar order = 0;
};

template <typename Scalar>
RichardsonEstimate<Scalar> richardson_extrapolate(Scalar coarse, Scalar mid, Scalar fine) {
  const Scalar d1 = mid - coarse;
  const Scalar d2 = fine - mid;
  if (d2 == Scalar(0) || d1 * d2 <= Scalar(0))
    return {fine, std::numeric_limits<Scalar>::quiet_NaN()};
  const Scalar ratio = d1 / d2;
  if (!(ratio > Scalar(1))) return {fine, std::numeric_limits<Scalar>::quiet_NaN()};
  return {fine + d2 / (ratio - 1), std::log2(ratio)};
}

/// One step of the outer-wall recession study at fixed level n.
template <typename Scalar>
struct LimitRow {
  Scalar b = 0;
  Scalar energy_confined = 0;
  Scalar energy_semi = 0;
  Scalar error = 0;             // energy_confined - energy_semi
  Scalar ratio_to_previous = 0; // previous error / this error; NaN on the first row
};

template <typename Scalar>
std::vector<LimitRow<Scalar>> limit_energy_study(const PhysParams<Scalar>& phys, Scalar a, int n,
                                                 Scalar b_start, Scalar b_factor, int steps) {
  if (steps < 1) throw std::domain_error("limit_energy_study: need at least one step");
  if (!(b_start > a)) throw std::domain_error("limit_energy_study: b_start must exceed a");
  if (!(b_factor > Scalar(1))) throw std::domain_error("limit_energy_study: b_factor must exceed 1");
  const WellModel<Scalar> semi = WellModel<Scalar>::semiconfined(phys, a);
  const Scalar e_semi = energy_level(semi, n);
  std::vector<LimitRow<Scalar>> rows;
  rows.reserve(steps);
  Scalar b = b_start;
  for (int j = 0; j < steps; ++j, b *= b_factor) {
    const WellModel<Scalar> conf = WellModel<Scalar>::confined(phys, a, b);
    LimitRow<Scalar> row;
    row.b = b;
    row.energy_confined = energy_level(conf, n);
    row.energy_semi = e_semi;
    row.error = row.energy_confined - e_semi;
    row.ratio_to_previous = j == 0 ? std::numeric_limits<Scalar>::quiet_NaN()
                                   : rows.back().error / row.error;
    rows.push_back(row);
  }
  return rows;
}

/// Closed form of the energy excess of the confined well over the
/// semiconfined one at level n. Every term is positive and vanishes as the
/// outer wall recedes, the slowest like 1/b.
template <typename Scalar>
Scalar confinement_energy_shift(const PhysParams<Scalar>& phys, Scalar a, Scalar b, int n) {
  detail::require_level<Scalar>(n);
  if (!(b > a) || !(a > Scalar(0)))
    throw std::domain_error("confinement_energy_shift: require 0 < a < b");
  const Scalar hw = phys.hbar * phys.omega;
  return 2 * a / (b - a) * hw * (n + Scalar(0.5)) +
         phys.hbar * phys.hbar * n * (n + 1) / (2 * phys.m0 * a * b) +
         2 * phys.m0 * phys.omega * phys.omega * a * a * (b * b / ((b - a) * (b - a)) - 1);
}

/// Largest deviation over the sample points between the Jacobi polynomial
/// with second parameter (b/a) * alpha, mapped from (a, b), and its Laguerre
/// limit. Shrinks toward zero as b grows at fixed alpha.
template <typename Scalar>
Scalar jacobi_laguerre_deviation(Scalar alpha, Scalar a, Scalar b, int n,
                                 const Eigen::Vector<Scalar, Eigen::Dynamic>& xs) {
  if (!(a > Scalar(0)) || !(b > a))
    throw std::domain_error("jacobi_laguerre_deviation: require 0 < a < b");
  const JacobiParams<Scalar> jp(n, alpha, b * alpha / a);
  const LaguerreParams<Scalar> lp(n, alpha);
  Scalar worst = 0;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const Scalar x = xs[i];
    const Scalar jacobi = jacobi_eval(jp, 1 - 2 * (x - a) / (b - a));
    const Scalar laguerre = laguerre_eval(lp, alpha * (x - a) / a);
    worst = std::max(worst, std::abs(jacobi - laguerre));
  }
  return worst;
}

/// Largest pointwise deviation between the normalized confined and
/// semiconfined wavefunctions of level n over the sample points.
template <typename Scalar>
Scalar wavefunction_limit_deviation(const PhysParams<Scalar>& phys, Scalar a, Scalar b, int n,
                                    const Eigen::Vector<Scalar, Eigen::Dynamic>& xs) {
  const WellModel<Scalar> semi = WellModel<Scalar>::semiconfined(phys, a);
  const WellModel<Scalar> conf = WellModel<Scalar>::confined(phys, a, b);
  Scalar worst = 0;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const Scalar x = xs[i];
    worst = std::max(worst, std::abs(wavefunction_at(conf, n, x) - wavefunction_at(semi, n, x)));
  }
  return worst;
}

/// One named check: an observed value against its bound.
struct CheckRecord {
  std::string id;
  double observed = 0;
  double bound = 0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;

  void require_le(std::string id, double observed, double bound) {
    checks.push_back({std::move(id), observed, bound, observed <= bound});
  }
  void require_lt(std::string id, double observed, double bound) {
    checks.push_back({std::move(id), observed, bound, observed < bound});
  }
  void require_ge(std::string id, double observed, double bound) {
    checks.push_back({std::move(id), observed, bound, observed >= bound});
  }

  bool overall_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.pass; });
  }
};

/// Check-suite selector: everything, or one check family.
enum class VerifySuite { all, ortho, residual, oracle, limits };

inline const char* verify_suite_name(VerifySuite suite) {
  switch (suite) {
    case VerifySuite::all: return "all";
    case VerifySuite::ortho: return "ortho";
    case VerifySuite::residual: return "residual";
    case VerifySuite::oracle: return "oracle";
    case VerifySuite::limits: return "limits";
  }
  throw std::logic_error("verify_suite_name: unhandled suite");
}

namespace detail {

inline void append_structure_checks(VerificationReport& report, const WellModel<double>& model,
                                    int n_max) {
  const auto& p = model.phys();
  const int n_top = std::max(n_max, 20);
  if (model.kind() == WellKind::semiconfined) {
    double worst = 0;
    for (int n = 0; n + 1 <= n_top; ++n)
      worst = std::max(worst, std::abs(energy_level(model, n + 1) - energy_level(model, n) -
                                       p.hbar * p.omega));
    report.require_le("structure/level_spacing_deviation", worst,
                      1e-12 * std::max(1.0, p.hbar * p.omega));
  } else {
    const double second = p.hbar * p.hbar / (p.m0 * model.a() * model.b());
    double worst = 0;
    for (int n = 1; n + 1 <= n_top; ++n)
      worst = std::max(worst, std::abs(energy_level(model, n + 1) - 2 * energy_level(model, n) +
                                       energy_level(model, n - 1) - second));
    report.require_le("structure/second_difference_deviation", worst,
                      1e-12 * std::max(1.0, second));
  }
  report.require_ge("structure/ground_energy", energy_level(model, 0), 0.0);
}

inline void append_orthonormality_checks(VerificationReport& report,
                                         const WellModel<double>& model, int n_max) {
  const int n_gram = std::min(n_max, 10);
  const Eigen::MatrixXd gram = orthonormality_matrix(model, n_gram, 200);
  const Eigen::MatrixXd gram_fine = orthonormality_matrix(model, n_gram, 400);
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n_gram + 1, n_gram + 1);
  report.require_le("orthonormality/gram_deviation", (gram - identity).cwiseAbs().maxCoeff(),
                    1e-8);
  report.require_le("orthonormality/order_doubling_drift",
                    (gram_fine - gram).cwiseAbs().maxCoeff(), 1e-9);
}

inline void append_residual_checks(VerificationReport& report, const WellModel<double>& model,
                                   int n_max) {
  const int n_res = std::min(n_max, 8);
  double res_exact = 0;
  double res_detuned = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= n_res; ++n) {
    res_exact = std::max(res_exact, max_ode_residual(model, n, 100));
    res_detuned = std::min(res_detuned, max_ode_residual(model, n, 100, 1.01));
  }
  report.require_le("residual/max_relative", res_exact, 1e-9);
  const double gain = res_exact > 0 ? res_detuned / res_exact
                                    : std::numeric_limits<double>::infinity();
  report.require_ge("residual/energy_detuning_gain", gain, 1e4);
}

inline void append_fd_checks(VerificationReport& report, const WellModel<double>& model) {
  const std::vector<int> grids = {500, 1000, 2000};
  const int k = 4;
  std::vector<Eigen::VectorXd> spectra;
  for (int g : grids) spectra.push_back(fd_oracle_spectrum(model, g, k));
  for (int level = 0; level < k; ++level) {
    const double exact = energy_level(model, level);
    double contraction = 0;
    for (std::size_t g = 0; g + 1 < spectra.size(); ++g) {
      const double err_coarse = std::abs(spectra[g][level] - exact);
      const double err_fine = std::abs(spectra[g + 1][level] - exact);
      contraction = std::max(contraction, err_fine / err_coarse);
    }
    report.require_lt("fd/error_contraction/level=" + std::to_string(level), contraction, 1.0);
    const auto estimate =
        richardson_extrapolate(spectra[0][level], spectra[1][level], spectra[2][level]);
    report.require_le("fd/richardson_rel_error/level=" + std::to_string(level),
                      std::abs(estimate.value - exact) / std::abs(exact), 1e-3);
  }

  // The kinetic part of the flux discretization is positive semidefinite, so
  // no eigenvalue may undershoot the potential floor over the grid.
  const double x_right =
      model.kind() == WellKind::confined ? model.b() : tail_extent(model, k - 1);
  const double h = (x_right - model.a()) / (grids.back() + 1);
  double v_floor = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grids.back(); ++i)
    v_floor = std::min(v_floor, potential_at(model, model.a() + (i + 1) * h));
  report.require_ge("fd/eigenvalues_above_potential_floor",
                    spectra.back().minCoeff() - v_floor, 0.0);
}

inline void append_limit_checks(VerificationReport& report, const PhysParams<double>& phys,
                                double a) {
  double worst_window = 0;
  double worst_closed_form = 0;
  for (int n : {0, 1}) {
    const auto rows = limit_energy_study(phys, a, n, 64 * a, 2.0, 5);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const double closed = confinement_energy_shift(phys, a, rows[j].b, n);
      worst_closed_form = std::max(
          worst_closed_form, std::abs(rows[j].error - closed) / std::max(1.0, closed));
      if (j > 0) worst_window = std::max(worst_window, std::abs(rows[j].ratio_to_previous - 2));
    }
  }
  report.require_le("limits/energy_ratio_window", worst_window, 0.3);
  report.require_le("limits/closed_form_error_match", worst_closed_form, 1e-12);

  const double alpha = 2 * phys.m0 * phys.omega / phys.hbar * a * a;
  const Eigen::VectorXd xs_poly = Eigen::VectorXd::LinSpaced(200, 1.02 * a, 5 * a);
  report.require_le("limits/polynomial_ground_exact",
                    jacobi_laguerre_deviation(alpha, a, 10 * a, 0, xs_poly), 0.0);
  double worst_poly_ratio = 0;
  for (int n = 1; n <= 4; ++n) {
    double prev = std::numeric_limits<double>::infinity();
    for (double scale : {10.0, 100.0, 1000.0, 10000.0}) {
      const double dev = jacobi_laguerre_deviation(alpha, a, scale * a, n, xs_poly);
      if (std::isfinite(prev)) worst_poly_ratio = std::max(worst_poly_ratio, dev / prev);
      prev = dev;
    }
  }
  report.require_lt("limits/polynomial_deviation_contraction", worst_poly_ratio, 1.0);

  const Eigen::VectorXd xs_wave = Eigen::VectorXd::LinSpaced(150, 1.01 * a, 5 * a);
  double worst_wave_ratio = 0;
  for (int n : {0, 1, 2}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double scale : {64.0, 128.0, 256.0, 512.0, 1024.0}) {
      const double dev = wavefunction_limit_deviation(phys, a, scale * a, n, xs_wave);
      if (std::isfinite(prev)) worst_wave_ratio = std::max(worst_wave_ratio, dev / prev);
      prev = dev;
    }
  }
  report.require_lt("limits/wavefunction_deviation_contraction", worst_wave_ratio, 1.0);
}

} // namespace detail

/// Verification of one well instance restricted to the requested suite:
/// ortho (Gram matrix), residual (eigenvalue equation), oracle
/// (finite-difference spectra), limits (outer-wall recession), or all of
/// those plus spectral-structure checks. n_max bounds the levels examined
/// (capped internally where cost grows quadratically).
inline VerificationReport verify_model(const WellModel<double>& model, int n_max,
                                       VerifySuite suite = VerifySuite::all) {
  VerificationReport report;
  report.suite = verify_suite_name(suite);
  const bool all = suite == VerifySuite::all;
  if (all) detail::append_structure_checks(report, model, n_max);
  if (all || suite == VerifySuite::ortho)
    detail::append_orthonormality_checks(report, model, n_max);
  if (all || suite == VerifySuite::residual)
    detail::append_residual_checks(report, model, n_max);
  if (all || suite == VerifySuite::oracle) detail::append_fd_checks(report, model);
  if (all || suite == VerifySuite::limits)
    detail::append_limit_checks(report, model.phys(), model.a());
  return report;
}

/// The limit suite alone; it depends only on the physical constants and the
/// inner wall position, never on an outer wall.
inline VerificationReport verify_limits(const PhysParams<double>& phys, double a) {
  VerificationReport report;
  report.suite = verify_suite_name(VerifySuite::limits);
  detail::append_limit_checks(report, phys, a);
  return report;
}

} // namespace pdmwell
