#include "pclat/equilibria.hpp"

#include <cmath>

namespace pclat {

namespace {

constexpr double kBisectionWidth = 1e-14;
constexpr double kBranchResidual = 1e-12;
constexpr double kFoldWindow = 1e-10;
constexpr int kStabilityGrid = 721;

// Bisection for f(x) = theta on [a, b], assuming f(a) - theta and
// f(b) - theta have opposite signs. f is strictly monotone on each interval
// this is called with, so the bracket is unconditionally safe.
double bisect_threshold(double a, double b, double theta, double mu) {
  double fa = equilibrium_threshold(a, mu) - theta;
  while (b - a > kBisectionWidth) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;  // bracket at floating-point resolution
    double fm = equilibrium_threshold(m, mu) - theta;
    if ((fa > 0.0) == (fm > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

Branch polish(double x, const SigmoidParams& s) {
  // Newton on g(x) = x - S(x); the bisection start is already within
  // ~1e-14 so a handful of steps reaches the g ~ 1e-16 floor.
  for (int i = 0; i < 5; ++i) {
    double g = x - sigmoid(x, s);
    if (std::abs(g) < 1e-15) break;
    double dg = 1.0 - sigmoid_deriv(x, s);
    if (dg == 0.0) break;
    double step = g / dg;
    if (!std::isfinite(step)) break;
    x -= step;
  }
  return Branch{x, std::abs(x - sigmoid(x, s))};
}

// Expand the lower bracket endpoint towards 0 until f exceeds theta.
// f -> +infinity as x -> 0+, so this terminates.
double expand_down(double hi, double theta, double mu) {
  double a = 0.5 * hi;
  while (equilibrium_threshold(a, mu) <= theta) a *= 0.5;
  return a;
}

// Expand the upper bracket endpoint towards 1 until f drops below theta.
// f -> -infinity as x -> 1-.
double expand_up(double lo, double theta, double mu) {
  double gap = 0.5 * (1.0 - lo);
  while (equilibrium_threshold(1.0 - gap, mu) >= theta) gap *= 0.5;
  return 1.0 - gap;
}

}  // namespace

double equilibrium_threshold(double x, double mu) {
  return x + std::log((1.0 - x) / x) / mu;
}

FoldData fold_points(double mu) {
  if (!(mu > 4.0)) throw NoBistability("fold points require mu > 4");
  double r = std::sqrt(0.25 - 1.0 / mu);
  double x_low = 0.5 - r;
  double x_high = 0.5 + r;
  return FoldData{x_low, x_high, equilibrium_threshold(x_low, mu),
                  equilibrium_threshold(x_high, mu)};
}

BranchSet equilibrium_branches(const ParamSet& ps) {
  const SigmoidParams& s = ps.sigmoid_params();
  const FoldData& f = ps.folds();
  double theta = s.theta;
  double mu = s.mu;

  BranchSet out;

  if (std::abs(theta - f.theta_low) < kFoldWindow) {
    // Lower fold: down and middle branches merge at x_low.
    Branch b{f.x_low, std::abs(f.x_low - sigmoid(f.x_low, s))};
    out.down = b;
    out.mid = b;
  } else {
    if (theta > f.theta_low) {
      double a = expand_down(f.x_low, theta, mu);
      out.down = polish(bisect_threshold(a, f.x_low, theta, mu), s);
    }
    if (theta > f.theta_low && theta < f.theta_high) {
      out.mid = polish(bisect_threshold(f.x_low, f.x_high, theta, mu), s);
    }
  }

  if (std::abs(theta - f.theta_high) < kFoldWindow) {
    // Upper fold: middle and up branches merge at x_high.
    Branch b{f.x_high, std::abs(f.x_high - sigmoid(f.x_high, s))};
    out.mid = b;
    out.up = b;
  } else if (theta < f.theta_high) {
    double b = expand_up(f.x_high, theta, mu);
    out.up = polish(bisect_threshold(f.x_high, b, theta, mu), s);
  }

  return out;
}

std::complex<double> dispersion_relation(double x, double phi, const ParamSet& ps) {
  const SigmoidParams& s = ps.sigmoid_params();
  if (std::abs(x - sigmoid(x, s)) >= 1e-8) {
    throw PreconditionError("dispersion relation requires an equilibrium: |x - S(x)| < 1e-8");
  }
  double ds = sigmoid_deriv(x, s);
  double p = ps.p();
  double q = ps.q();
  std::complex<double> em(std::cos(phi), -std::sin(phi));
  std::complex<double> ep(std::cos(phi), std::sin(phi));
  return (1.0 - q) * ds * em - (1.0 - p) - p * ds * ds + q * ds * ep;
}

StabilityReport classify_stability(BranchLabel label, const ParamSet& ps) {
  BranchSet bs = equilibrium_branches(ps);
  const std::optional<Branch>* pick = nullptr;
  switch (label) {
    case BranchLabel::Down: pick = &bs.down; break;
    case BranchLabel::Mid: pick = &bs.mid; break;
    case BranchLabel::Up: pick = &bs.up; break;
  }
  if (!pick->has_value()) throw MissingBranch("requested branch absent at these parameters");
  double x = (*pick)->x;

  double ds = sigmoid_deriv(x, ps.sigmoid_params());
  double re0 = (ds - 1.0) * (1.0 - ps.p() - ps.p() * ds);

  constexpr double pi = 3.14159265358979323846;
  double grid_max = -1e300;
  double grid_argmax = 0.0;
  for (int k = 0; k < kStabilityGrid; ++k) {
    double phi = -pi + 2.0 * pi * k / (kStabilityGrid - 1);
    double re = ds * (std::cos(phi) - 1.0) + re0;
    if (re > grid_max) {
      grid_max = re;
      grid_argmax = phi;
    }
  }

  return StabilityReport{re0 < 0.0 ? Stability::Stable : Stability::Unstable, re0,
                         grid_max, grid_argmax};
}

}  // namespace pclat
