#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pclat/equilibria.hpp"
#include "pclat/model.hpp"

namespace pclat {

enum class TopologyKind { BiInfinite, BottomUp, TopDown };

/// Closure used at a truncation edge that is not driven by the input.
/// DirichletEquilibrium pins the ghost to the initial edge value;
/// InverseSigmoid sets the ghost to S^{-1}(v_edge), which makes the feedback
/// term vanish at the top layer of a bottom-up network.
enum class Closure { DirichletEquilibrium, InverseSigmoid };

/// Finite truncation of one of the three lattice geometries.
///  - BiInfinite: layers -J..J, ghost cells on both sides.
///  - BottomUp:   layers 1..J, layer 0 is the driven boundary, far ghost at J+1.
///  - TopDown:    layers -J..-1, layer 0 is the driven boundary, far ghost at -J-1.
/// Dirichlet anchors are resolved from the initial state when integration
/// starts and stay frozen for the whole run.
struct Topology {
  TopologyKind kind = TopologyKind::BiInfinite;
  int extent = 200;  // J
  Closure far_closure = Closure::DirichletEquilibrium;
  std::optional<double> left_anchor;
  std::optional<double> right_anchor;

  static Topology bi_infinite(int J = 200);
  static Topology bottom_up(int J = 300, Closure far = Closure::InverseSigmoid);
  static Topology top_down(int J = 300);

  int layer_count() const;
  int first_layer() const;  // j-index of values[0]
};

/// Boundary drive s0(t). Flashed holds s0 on [0, tau] and falls back to the
/// down state afterwards. Constant requires s0 >= x_d, Flashed s0 > x_d.
struct InputSignal {
  enum class Kind { None, Constant, Flashed };

  Kind kind = Kind::None;
  double s0 = 0.0;
  double tau = 0.0;
  double rest = 0.0;  // down state used after the flash

  static InputSignal none();
  static InputSignal constant(double s0, const ParamSet& ps);
  static InputSignal flashed(double s0, double tau, const ParamSet& ps);

  /// Value at time t; the flash window is closed, s0(tau) = s0.
  double value(double t) const;

  /// Value seen by an integration step that begins at t_step_begin. The step
  /// grid is split so that no step straddles tau, hence the branch is decided
  /// by the step start alone and each step integrates a smooth field.
  double value_for_step(double t_step_begin) const;
};

struct LatticeState {
  double t = 0.0;
  std::vector<double> values;
};

enum class Method { Euler, RK4 };

enum class FrontDirection { UpToDown, DownToUp };

struct SolverOptions {
  double dt = 0.05;
  double t_end = 200.0;
  int sample_every = 20;
  Method method = Method::RK4;
  int guard_buffer = 10;       // layers adjacent to a free truncation edge
  double guard_tol = 1e-3;     // deviation that counts as activity in the buffer
};

/// Sampled evolution plus the settings needed to reproduce it.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> snapshots;
  Topology topology;
  InputSignal input;
  ParamSet params;
  double dt = 0.0;
  Method method = Method::RK4;
  int sample_every = 1;
  int guard_buffer = 0;
  bool guard_triggered = false;
  double guard_time = -1.0;
};

/// Half up / half down initial data on a bi-infinite truncation: the up state
/// occupies j <= 0 for UpToDown and j >= 1 for DownToUp. Requires all three
/// branches.
LatticeState make_step_initial(FrontDirection dir, const ParamSet& ps, const Topology& topo);

/// Every layer at the down state x_d.
LatticeState make_rest_initial(const ParamSet& ps, const Topology& topo);

/// Topology copy with missing Dirichlet anchors filled from the edge values
/// of `state` (the anchors a fresh integration would freeze).
Topology resolve_anchors(const Topology& topo, const LatticeState& state);

/// Ghost pair (left of values.front(), right of values.back()) at time t.
/// Driven edges evaluate the input signal; free edges use the closure.
/// BiInfinite requires resolved anchors.
std::pair<double, double> ghost_values(const LatticeState& state, const Topology& topo,
                                       const InputSignal& input, const ParamSet& ps,
                                       double t);

/// Drives one lattice system forward step by step; owns its state
/// exclusively, so distinct integrations can run on distinct threads.
class Integrator {
 public:
  Integrator(LatticeState initial, const Topology& topo, const InputSignal& input,
             const ParamSet& ps, const SolverOptions& opt);

  /// Advance by `sample_every` nominal steps (one sampling block) and run the
  /// guard check. Throws DivergenceError on non-finite state.
  void advance_block();

  const LatticeState& state() const { return state_; }
  double time() const { return state_.t; }
  const Topology& topology() const { return topo_; }

  /// max_j |N(v_{j-1}, v_j, v_{j+1})| at the current state.
  double max_abs_rhs();

  bool guard_triggered() const { return guard_triggered_; }
  double guard_time() const { return guard_time_; }

 private:
  void rhs(const std::vector<double>& y, double t_step_begin, std::vector<double>& dy);
  void substep(double h, double t_step_begin);
  void nominal_step();  // one dt step, split at the flash time if straddled
  void check_guard();

  LatticeState state_;
  Topology topo_;
  InputSignal input_;
  ParamSet ps_;
  SolverOptions opt_;
  double t_origin_ = 0.0;
  long steps_done_ = 0;
  double guard_ref_left_, guard_ref_right_;
  bool guard_triggered_ = false;
  double guard_time_ = -1.0;
  std::vector<double> sv_, k1_, k2_, k3_, k4_, tmp_;
};

/// One explicit step of the requested method. Convenience wrapper around the
/// same kernel the Integrator uses.
LatticeState step(const LatticeState& state, const Topology& topo, const InputSignal& input,
                  const ParamSet& ps, double dt, Method method);

/// Driver loop over step: snapshots at t = k * sample_every * dt up to t_end.
Trajectory integrate(const LatticeState& initial, const Topology& topo,
                     const InputSignal& input, const ParamSet& ps,
                     const SolverOptions& opt);

/// Layer-labelled CSV (`t,v_-J,...,v_J`) with shortest round-trip floats.
std::string trajectory_csv(const Trajectory& traj);

/// JSON sidecar carrying parameters, topology, input, solver settings and
/// the guard flag.
std::string trajectory_sidecar_json(const Trajectory& traj);

namespace detail {

/// Classic fourth-order Runge-Kutta step sharing its tableau with the
/// lattice integrator; f(y, t, dy) writes the derivative into dy.
template <class F>
void rk4_step(F&& f, std::vector<double>& y, double t, double h, std::vector<double>& k1,
              std::vector<double>& k2, std::vector<double>& k3, std::vector<double>& k4,
              std::vector<double>& tmp) {
  const std::size_t n = y.size();
  f(y, t, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  f(tmp, t + 0.5 * h, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  f(tmp, t + 0.5 * h, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  f(tmp, t + h, k4);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

template <class F>
void euler_step(F&& f, std::vector<double>& y, double t, double h, std::vector<double>& k1) {
  f(y, t, k1);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * k1[i];
}

}  // namespace detail

}  // namespace pclat
