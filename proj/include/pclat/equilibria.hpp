#pragma once

#include <complex>
#include <optional>

#include "pclat/model.hpp"

namespace pclat {

/// One equilibrium value together with its defect against x = S(x).
struct Branch {
  double x;
  double residual;  // |x - S(x)|
};

/// The up-to-three stationary homogeneous solutions. A branch is absent when
/// theta falls outside its existence range: the down branch needs
/// theta > theta_low, the middle branch theta in (theta_low, theta_high),
/// the up branch theta < theta_high.
struct BranchSet {
  std::optional<Branch> down;
  std::optional<Branch> mid;
  std::optional<Branch> up;
};

enum class BranchLabel { Down, Mid, Up };

enum class Stability { Stable, Unstable };

/// Growth-rate diagnostics behind a stability verdict. The maximum of
/// Re nu over the wavenumber grid is attained at phi = 0; the grid is kept
/// as a cross-check.
struct StabilityReport {
  Stability verdict;
  double re_nu_at_zero;
  double grid_max;
  double grid_argmax;
};

/// Threshold at which x solves x = S(x):  f(x) = x + ln((1-x)/x) / mu.
double equilibrium_threshold(double x, double mu);

/// Fold activities x = 1/2 -+ sqrt(1/4 - 1/mu) and the corresponding
/// thresholds f(x_low), f(x_high). The two thresholds sum to 1 because
/// f(1 - x) = 1 - f(x). Throws NoBistability for mu <= 4.
FoldData fold_points(double mu);

/// Solve f(x) = theta on each monotonicity interval of f by bracketed
/// bisection followed by a short Newton polish on x - S(x); every returned
/// value satisfies |x - S(x)| < 1e-12. Within 1e-10 of a fold threshold the
/// two merging branches are reported as the single fold activity.
BranchSet equilibrium_branches(const ParamSet& ps);

/// Growth rate of the Fourier mode exp(nu t + i phi j) linearized about the
/// equilibrium x:
///   nu(phi) = (1-q) S'(x) e^{-i phi} - (1-p) - p S'(x)^2 + q S'(x) e^{i phi}.
/// Requires |x - S(x)| < 1e-8 (the formula assumes x = S(x)).
std::complex<double> dispersion_relation(double x, double phi, const ParamSet& ps);

/// Stable iff max_phi Re nu(phi) = Re nu(0) = (S'(x)-1)(1-p-p S'(x)) < 0.
/// The down and up branches are stable, the middle branch unstable.
/// Throws MissingBranch when the named branch does not exist.
StabilityReport classify_stability(BranchLabel label, const ParamSet& ps);

}  // namespace pclat
