#include "pclat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "pclat/io_util.hpp"

namespace pclat {

namespace {

constexpr int kMinExtent = 8;

void require_extent(int J) {
  if (J < kMinExtent) throw InvalidParams("layer count J must be at least 8");
}

double down_state(const ParamSet& ps) {
  BranchSet bs = equilibrium_branches(ps);
  if (!bs.down) throw MissingBranch("down state does not exist at these parameters");
  return bs.down->x;
}

}  // namespace

Topology Topology::bi_infinite(int J) {
  require_extent(J);
  return Topology{TopologyKind::BiInfinite, J, Closure::DirichletEquilibrium, {}, {}};
}

Topology Topology::bottom_up(int J, Closure far) {
  require_extent(J);
  return Topology{TopologyKind::BottomUp, J, far, {}, {}};
}

Topology Topology::top_down(int J) {
  require_extent(J);
  return Topology{TopologyKind::TopDown, J, Closure::DirichletEquilibrium, {}, {}};
}

int Topology::layer_count() const {
  return kind == TopologyKind::BiInfinite ? 2 * extent + 1 : extent;
}

int Topology::first_layer() const {
  switch (kind) {
    case TopologyKind::BiInfinite: return -extent;
    case TopologyKind::BottomUp: return 1;
    case TopologyKind::TopDown: return -extent;
  }
  return 0;
}

InputSignal InputSignal::none() { return InputSignal{}; }

InputSignal InputSignal::constant(double s0, const ParamSet& ps) {
  double xd = down_state(ps);
  if (s0 < xd - 1e-12) {
    throw InvalidParams("constant input requires s0 >= x_d = " + format_double(xd));
  }
  return InputSignal{Kind::Constant, s0, 0.0, xd};
}

InputSignal InputSignal::flashed(double s0, double tau, const ParamSet& ps) {
  double xd = down_state(ps);
  if (!(s0 > xd)) {
    throw InvalidParams("flashed input requires s0 > x_d = " + format_double(xd));
  }
  if (!(tau > 0.0)) throw InvalidParams("flash duration tau must be positive");
  return InputSignal{Kind::Flashed, s0, tau, xd};
}

double InputSignal::value(double t) const {
  switch (kind) {
    case Kind::None: return 0.0;
    case Kind::Constant: return s0;
    case Kind::Flashed: return t <= tau ? s0 : rest;
  }
  return 0.0;
}

double InputSignal::value_for_step(double t_step_begin) const {
  if (kind == Kind::Flashed) return t_step_begin < tau ? s0 : rest;
  return value(t_step_begin);
}

LatticeState make_step_initial(FrontDirection dir, const ParamSet& ps, const Topology& topo) {
  if (topo.kind != TopologyKind::BiInfinite) {
    throw PreconditionError("step initial data is defined on the bi-infinite topology");
  }
  BranchSet bs = equilibrium_branches(ps);
  if (!bs.down || !bs.mid || !bs.up) {
    throw MissingBranch("step initial data needs all three equilibrium branches");
  }
  double lo = bs.down->x;
  double hi = bs.up->x;
  double left = dir == FrontDirection::UpToDown ? hi : lo;
  double right = dir == FrontDirection::UpToDown ? lo : hi;

  LatticeState st;
  st.t = 0.0;
  st.values.resize(topo.layer_count());
  int j0 = topo.first_layer();
  for (int i = 0; i < topo.layer_count(); ++i) {
    int j = j0 + i;
    st.values[i] = j <= 0 ? left : right;
  }
  return st;
}

LatticeState make_rest_initial(const ParamSet& ps, const Topology& topo) {
  double xd = down_state(ps);
  LatticeState st;
  st.t = 0.0;
  st.values.assign(topo.layer_count(), xd);
  return st;
}

Topology resolve_anchors(const Topology& topo, const LatticeState& state) {
  if (state.values.empty()) throw PreconditionError("cannot resolve anchors from an empty state");
  if (topo.kind == TopologyKind::TopDown && topo.far_closure == Closure::InverseSigmoid) {
    throw InvalidParams("the deep end of a top-down network uses the Dirichlet closure");
  }
  Topology out = topo;
  if (!out.left_anchor) out.left_anchor = state.values.front();
  if (!out.right_anchor) out.right_anchor = state.values.back();
  return out;
}

std::pair<double, double> ghost_values(const LatticeState& state, const Topology& topo,
                                       const InputSignal& input, const ParamSet& ps,
                                       double t) {
  auto anchored = [&](const std::optional<double>& a, const char* side) {
    if (!a) throw PreconditionError(std::string("unresolved ") + side + " Dirichlet anchor");
    return *a;
  };

  switch (topo.kind) {
    case TopologyKind::BiInfinite:
      return {anchored(topo.left_anchor, "left"), anchored(topo.right_anchor, "right")};
    case TopologyKind::BottomUp: {
      double right;
      if (topo.far_closure == Closure::InverseSigmoid) {
        double c = std::clamp(state.values.back(), kSigmoidInverseClamp,
                              1.0 - kSigmoidInverseClamp);
        right = sigmoid_inverse(c, ps.sigmoid_params());
      } else {
        right = anchored(topo.right_anchor, "right");
      }
      return {input.value(t), right};
    }
    case TopologyKind::TopDown:
      return {anchored(topo.left_anchor, "left"), input.value(t)};
  }
  return {0.0, 0.0};
}

Integrator::Integrator(LatticeState initial, const Topology& topo, const InputSignal& input,
                       const ParamSet& ps, const SolverOptions& opt)
    : state_(std::move(initial)),
      topo_(resolve_anchors(topo, state_)),
      input_(input),
      ps_(ps),
      opt_(opt) {
  if (!(opt_.dt > 0.0)) throw InvalidParams("dt must be positive");
  if (opt_.sample_every < 1) throw InvalidParams("sample_every must be at least 1");
  if (static_cast<int>(state_.values.size()) != topo_.layer_count()) {
    throw PreconditionError("state length does not match topology extent");
  }
  t_origin_ = state_.t;
  guard_ref_left_ = state_.values.front();
  guard_ref_right_ = state_.values.back();
  std::size_t n = state_.values.size();
  sv_.resize(n);
  k1_.resize(n);
  k2_.resize(n);
  k3_.resize(n);
  k4_.resize(n);
  tmp_.resize(n);
}

void Integrator::rhs(const std::vector<double>& y, double t_step_begin,
                     std::vector<double>& dy) {
  const SigmoidParams& s = ps_.sigmoid_params();
  const double p = ps_.p();
  const double q = ps_.q();
  const double drive = 1.0 - p - q;
  const double mu = s.mu;
  const std::size_t n = y.size();

  for (std::size_t i = 0; i < n; ++i) sv_[i] = sigmoid(y[i], s);

  // The input is piecewise constant and the step grid never straddles the
  // flash time, so the boundary value is fixed by the step start.
  double gl = 0.0, gr = 0.0;
  double in = input_.value_for_step(t_step_begin);
  switch (topo_.kind) {
    case TopologyKind::BiInfinite:
      gl = *topo_.left_anchor;
      gr = *topo_.right_anchor;
      break;
    case TopologyKind::BottomUp:
      gl = in;
      if (topo_.far_closure == Closure::InverseSigmoid) {
        double c = std::clamp(y[n - 1], kSigmoidInverseClamp, 1.0 - kSigmoidInverseClamp);
        gr = sigmoid_inverse(c, s);
      } else {
        gr = *topo_.right_anchor;
      }
      break;
    case TopologyKind::TopDown:
      gl = *topo_.left_anchor;
      gr = in;
      break;
  }
  double s_gl = sigmoid(gl, s);
  double s_gr = sigmoid(gr, s);

  for (std::size_t i = 0; i < n; ++i) {
    double u = i > 0 ? y[i - 1] : gl;
    double su = i > 0 ? sv_[i - 1] : s_gl;
    double sw = i + 1 < n ? sv_[i + 1] : s_gr;
    double v = y[i];
    double svi = sv_[i];
    double dsv = mu * svi * (1.0 - svi);
    dy[i] = drive * (su - v) + p * dsv * (u - svi) + q * (sw - v);
  }
}

void Integrator::substep(double h, double t_step_begin) {
  auto field = [&](const std::vector<double>& y, double, std::vector<double>& dy) {
    rhs(y, t_step_begin, dy);
  };
  if (opt_.method == Method::RK4) {
    detail::rk4_step(field, state_.values, state_.t, h, k1_, k2_, k3_, k4_, tmp_);
  } else {
    detail::euler_step(field, state_.values, state_.t, h, k1_);
  }
}

void Integrator::nominal_step() {
  double t0 = t_origin_ + steps_done_ * opt_.dt;
  double t1 = t_origin_ + (steps_done_ + 1) * opt_.dt;
  if (input_.kind == InputSignal::Kind::Flashed && t0 < input_.tau && t1 > input_.tau &&
      input_.tau - t0 > 1e-12 * opt_.dt && t1 - input_.tau > 1e-12 * opt_.dt) {
    // Split so that a step boundary lands exactly on the flash time; each
    // sub-step then integrates a smooth right-hand side.
    substep(input_.tau - t0, t0);
    state_.t = input_.tau;
    substep(t1 - input_.tau, input_.tau);
  } else {
    substep(opt_.dt, t0);
  }
  ++steps_done_;
  state_.t = t_origin_ + steps_done_ * opt_.dt;

  for (double v : state_.values) {
    if (!std::isfinite(v)) {
      throw DivergenceError("non-finite state at t = " + format_double(state_.t));
    }
  }
}

void Integrator::advance_block() {
  for (int k = 0; k < opt_.sample_every; ++k) nominal_step();
  check_guard();
}

double Integrator::max_abs_rhs() {
  rhs(state_.values, state_.t, k1_);
  double m = 0.0;
  for (double d : k1_) m = std::max(m, std::abs(d));
  return m;
}

void Integrator::check_guard() {
  if (guard_triggered_) return;
  int n = static_cast<int>(state_.values.size());
  int B = std::min(opt_.guard_buffer, n);
  bool left_free = topo_.kind != TopologyKind::BottomUp;
  bool right_free = topo_.kind != TopologyKind::TopDown;
  if (left_free) {
    for (int i = 0; i < B; ++i) {
      if (std::abs(state_.values[i] - guard_ref_left_) > opt_.guard_tol) {
        guard_triggered_ = true;
        guard_time_ = state_.t;
        return;
      }
    }
  }
  if (right_free) {
    for (int i = n - B; i < n; ++i) {
      if (std::abs(state_.values[i] - guard_ref_right_) > opt_.guard_tol) {
        guard_triggered_ = true;
        guard_time_ = state_.t;
        return;
      }
    }
  }
}

LatticeState step(const LatticeState& state, const Topology& topo, const InputSignal& input,
                  const ParamSet& ps, double dt, Method method) {
  SolverOptions opt;
  opt.dt = dt;
  opt.method = method;
  opt.sample_every = 1;
  Integrator integ(state, topo, input, ps, opt);
  integ.advance_block();
  return integ.state();
}

Trajectory integrate(const LatticeState& initial, const Topology& topo,
                     const InputSignal& input, const ParamSet& ps,
                     const SolverOptions& opt) {
  if (!(opt.t_end > 0.0)) throw InvalidParams("t_end must be positive");
  Integrator integ(initial, topo, input, ps, opt);

  Trajectory traj{{}, {}, integ.topology(), input, ps, opt.dt,
                  opt.method, opt.sample_every, opt.guard_buffer, false, -1.0};
  traj.times.push_back(initial.t);
  traj.snapshots.push_back(initial.values);

  double block = opt.sample_every * opt.dt;
  long n_blocks = static_cast<long>(std::floor(opt.t_end / block + 1e-9));
  for (long b = 0; b < n_blocks; ++b) {
    integ.advance_block();
    traj.times.push_back(integ.time());
    traj.snapshots.push_back(integ.state().values);
  }
  traj.guard_triggered = integ.guard_triggered();
  traj.guard_time = integ.guard_time();
  return traj;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t";
  int j0 = traj.topology.first_layer();
  int n = traj.topology.layer_count();
  for (int i = 0; i < n; ++i) out << ",v_" << (j0 + i);
  out << "\n";
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    out << format_double(traj.times[r]);
    for (double v : traj.snapshots[r]) out << ',' << format_double(v);
    out << "\n";
  }
  return out.str();
}

std::string trajectory_sidecar_json(const Trajectory& traj) {
  nlohmann::json j;
  j["params"] = {{"theta", traj.params.theta()},
                 {"mu", traj.params.mu()},
                 {"p", traj.params.p()},
                 {"q", traj.params.q()}};
  const char* kind = traj.topology.kind == TopologyKind::BiInfinite ? "bi-infinite"
                     : traj.topology.kind == TopologyKind::BottomUp ? "bottom-up"
                                                                    : "top-down";
  j["topology"] = {{"kind", kind},
                   {"extent", traj.topology.extent},
                   {"closure", traj.topology.far_closure == Closure::InverseSigmoid
                                   ? "inverse-sigmoid"
                                   : "dirichlet-equilibrium"}};
  switch (traj.input.kind) {
    case InputSignal::Kind::None: j["input"] = {{"kind", "none"}}; break;
    case InputSignal::Kind::Constant:
      j["input"] = {{"kind", "constant"}, {"s0", traj.input.s0}};
      break;
    case InputSignal::Kind::Flashed:
      j["input"] = {{"kind", "flashed"}, {"s0", traj.input.s0}, {"tau", traj.input.tau}};
      break;
  }
  j["dt"] = traj.dt;
  j["method"] = traj.method == Method::RK4 ? "rk4" : "euler";
  j["sample_every"] = traj.sample_every;
  j["guard_buffer"] = traj.guard_buffer;
  j["guard_triggered"] = traj.guard_triggered;
  if (traj.guard_triggered) j["guard_time"] = traj.guard_time;
  return j.dump(2) + "\n";
}

}  // namespace pclat
