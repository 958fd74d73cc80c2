#include "pclat/model.hpp"

#include <cmath>
#include <string>

#include "pclat/equilibria.hpp"

namespace pclat {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw InvalidParams(std::string(name) + " must be finite");
}

}  // namespace

SigmoidParams::SigmoidParams(double mu_, double theta_) : mu(mu_), theta(theta_) {
  require_finite(mu, "mu");
  require_finite(theta, "theta");
  if (!(mu > 4.0)) throw InvalidParams("mu must exceed 4");
  if (theta < 0.0) throw InvalidParams("theta must be nonnegative");
}

CouplingParams::CouplingParams(double p_, double q_) : p(p_), q(q_) {
  require_finite(p, "p");
  require_finite(q, "q");
  if (p < 0.0) throw InvalidParams("p must be nonnegative");
  if (q < 0.0 || q > 1.0) throw InvalidParams("q must lie in [0, 1]");
  if (p + q > 1.0) throw InvalidParams("p + q must not exceed 1");
}

ParamSet ParamSet::create(double theta, double mu, double p, double q) {
  ParamSet ps = relaxed(theta, mu, p, q);
  if (!ps.bistable()) {
    throw InvalidParams("theta outside the bistable window (" +
                        std::to_string(ps.folds().theta_low) + ", " +
                        std::to_string(ps.folds().theta_high) + ")");
  }
  return ps;
}

ParamSet ParamSet::relaxed(double theta, double mu, double p, double q) {
  SigmoidParams s(mu, theta);
  CouplingParams c(p, q);
  if (!(p < 4.0 / (4.0 + mu))) {
    throw InvalidParams("p must be below 4/(4+mu) = " + std::to_string(4.0 / (4.0 + mu)));
  }
  FoldData f = fold_points(mu);
  bool bistable = theta > f.theta_low && theta < f.theta_high;
  return ParamSet(s, c, f, bistable);
}

double sigmoid(double x, const SigmoidParams& s) {
  double z = s.mu * (x - s.theta);
  if (z >= 0.0) {
    double e = std::exp(-z);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

double sigmoid_deriv(double x, const SigmoidParams& s) {
  double v = sigmoid(x, s);
  return s.mu * v * (1.0 - v);
}

double sigmoid_second_deriv(double x, const SigmoidParams& s) {
  double v = sigmoid(x, s);
  return s.mu * s.mu * v * (1.0 - v) * (1.0 - 2.0 * v);
}

double sigmoid_inverse(double y, const SigmoidParams& s) {
  if (!(y > 0.0 && y < 1.0)) {
    throw DomainError("sigmoid_inverse requires y in (0, 1), got " + std::to_string(y));
  }
  return s.theta + std::log(y / (1.0 - y)) / s.mu;
}

CouplingParams coupling_fractions(double alpha, double beta, double lambda) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  require_finite(lambda, "lambda");
  if (alpha < 0.0 || beta < 0.0 || lambda < 0.0) {
    throw InvalidParams("weights must be nonnegative");
  }
  double sum = alpha + beta + lambda;
  if (!(sum > 0.0)) throw DegenerateParams("alpha + beta + lambda must be positive");
  return CouplingParams(alpha / sum, lambda / sum);
}

double rhs_nonlinearity(double u, double v, double w, const ParamSet& ps) {
  const SigmoidParams& s = ps.sigmoid_params();
  double p = ps.p();
  double q = ps.q();
  double sv = sigmoid(v, s);
  double dsv = s.mu * sv * (1.0 - sv);
  return (1.0 - p - q) * (sigmoid(u, s) - v) + p * dsv * (u - sv) +
         q * (sigmoid(w, s) - v);
}

double bistable_reaction(double x, const ParamSet& ps) {
  const SigmoidParams& s = ps.sigmoid_params();
  double sx = sigmoid(x, s);
  double dsx = s.mu * sx * (1.0 - sx);
  return (-x + sx) * (1.0 - ps.p() - ps.p() * dsx);
}

}  // namespace pclat
