#pragma once

#include "pclat/errors.hpp"

namespace pclat {

/// Sigmoid nonlinearity S(x) = 1 / (1 + exp(-mu (x - theta))).
/// mu > 4 guarantees that x = S(x) can have three solutions, which is the
/// regime everything downstream lives in.
struct SigmoidParams {
  double mu;     // slope
  double theta;  // threshold

  SigmoidParams(double mu, double theta);
};

/// Fractions of the convex split between the feedforward error correction
/// (p), the feedback correction (q) and the instantaneous drive (1 - p - q).
struct CouplingParams {
  double p;
  double q;

  CouplingParams(double p, double q);
};

/// Fold structure of x = S(x): the two activities where equilibrium branches
/// merge, and the threshold window (theta_low, theta_high) on which all
/// three branches coexist.
struct FoldData {
  double x_low;
  double x_high;
  double theta_low;
  double theta_high;
};

/// Validated parameter bundle. `create` enforces membership in the bistable
/// parameter set: mu > 4, 0 <= p < 4/(4+mu), p + q <= 1 and theta inside the
/// fold window. `relaxed` admits theta outside the window (for equilibrium
/// scans) and tags the instance as non-bistable.
class ParamSet {
 public:
  static ParamSet create(double theta, double mu, double p, double q);
  static ParamSet relaxed(double theta, double mu, double p, double q);

  const SigmoidParams& sigmoid_params() const { return sigmoid_; }
  const CouplingParams& coupling_params() const { return coupling_; }
  const FoldData& folds() const { return folds_; }
  bool bistable() const { return bistable_; }

  double theta() const { return sigmoid_.theta; }
  double mu() const { return sigmoid_.mu; }
  double p() const { return coupling_.p; }
  double q() const { return coupling_.q; }

 private:
  ParamSet(SigmoidParams s, CouplingParams c, FoldData f, bool bistable)
      : sigmoid_(s), coupling_(c), folds_(f), bistable_(bistable) {}

  SigmoidParams sigmoid_;
  CouplingParams coupling_;
  FoldData folds_;
  bool bistable_;
};

/// Clamp constant used by callers that feed near-saturated values into
/// sigmoid_inverse (e.g. the top-layer boundary closure).
inline constexpr double kSigmoidInverseClamp = 1e-12;

/// S(x). Total on the reals, value in (0, 1). Evaluated through the
/// exp-of-negative branch only, so mu (x - theta) of order +-1e3 is safe.
double sigmoid(double x, const SigmoidParams& s);

/// S'(x) = mu S (1 - S) > 0.
double sigmoid_deriv(double x, const SigmoidParams& s);

/// S''(x) = mu^2 S (1 - S) (1 - 2 S); changes sign exactly at x = theta.
double sigmoid_second_deriv(double x, const SigmoidParams& s);

/// S^{-1}(y) = theta + ln(y / (1 - y)) / mu for y in (0, 1).
/// Throws DomainError outside the open interval.
double sigmoid_inverse(double y, const SigmoidParams& s);

/// Reduce raw nonnegative weights (alpha, beta, lambda) to the fractions
/// p = alpha / (alpha + beta + lambda), q = lambda / (alpha + beta + lambda).
/// Throws DegenerateParams when the sum vanishes.
CouplingParams coupling_fractions(double alpha, double beta, double lambda);

/// Lattice right-hand side for one layer with value v, lower neighbour u and
/// upper neighbour w:
///   (1-p-q)(S(u) - v) + p S'(v)(u - S(v)) + q (S(w) - v).
/// On the diagonal it reduces exactly to bistable_reaction(v).
double rhs_nonlinearity(double u, double v, double w, const ParamSet& ps);

/// Reaction term of the homogeneous dynamics,
///   F_p(x) = (-x + S(x)) (1 - p - p S'(x)).
/// Under p < 4/(4+mu) the second factor is strictly positive, so the sign
/// of F_p is the sign of S(x) - x.
double bistable_reaction(double x, const ParamSet& ps);

}  // namespace pclat
