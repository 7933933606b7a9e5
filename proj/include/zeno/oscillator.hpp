#pragma once

#include <zeno/errors.hpp>
#include <zeno/protocols.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace zeno {

/// Ideal (lossless) LC loop: -L q'' = q / C.
class LCCircuit {
 public:
  static LCCircuit make(double inductance, double capacitance, double q0) {
    if (!(inductance > 0.0) || !std::isfinite(inductance)) {
      throw domain_error("inductance L must be positive and finite");
    }
    if (!(capacitance > 0.0) || !std::isfinite(capacitance)) {
      throw domain_error("capacitance C must be positive and finite");
    }
    if (!std::isfinite(q0)) throw domain_error("initial charge q0 must be finite");
    return LCCircuit(inductance, capacitance, q0);
  }

  [[nodiscard]] double inductance() const { return inductance_; }
  [[nodiscard]] double capacitance() const { return capacitance_; }
  [[nodiscard]] double q0() const { return q0_; }
  /// (L C)^{-1/2}
  [[nodiscard]] double omega() const { return omega_; }
  /// sqrt(2) / omega, the root of the quadratic short-time charge.
  [[nodiscard]] double tau() const { return std::numbers::sqrt2 / omega_; }

 private:
  LCCircuit(double l, double c, double q0)
      : inductance_(l), capacitance_(c), q0_(q0), omega_(1.0 / std::sqrt(l * c)) {}

  double inductance_;
  double capacitance_;
  double q0_;
  double omega_;
};

/// Mechanical analog: x <-> q, m <-> L, k <-> 1/C, velocity <-> current.
struct LHOParameters {
  double mass;
  double stiffness;
  double x0;
};

/// k = m omega^2 with omega taken from the circuit.
inline LHOParameters lho_from_lc(const LCCircuit& circuit, double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw domain_error("mass must be positive");
  return {mass, mass * circuit.omega() * circuit.omega(), circuit.q0()};
}

inline LCCircuit lc_from_lho(const LHOParameters& lho) {
  if (!(lho.stiffness > 0.0) || !std::isfinite(lho.stiffness)) {
    throw domain_error("stiffness k must be positive and finite");
  }
  return LCCircuit::make(lho.mass, 1.0 / lho.stiffness, lho.x0);
}

struct OscillatorState {
  double charge = 0.0;
  double current = 0.0;
  double time = 0.0;
  bool switch_on = true;

  friend bool operator==(const OscillatorState&, const OscillatorState&) = default;
};

/// q^2 / 2C + L i^2 / 2
inline double energy(const OscillatorState& s, const LCCircuit& c) {
  return s.charge * s.charge / (2.0 * c.capacitance()) +
         c.inductance() * s.current * s.current / 2.0;
}

enum class Interruption { freeze_restart };

/// n equal ON segments over [0, t], each closed by an instantaneous
/// OFF -> ON flick of the switch.
class SwitchProtocol {
 public:
  static SwitchProtocol make(double total_time, std::int64_t n,
                             Interruption interruption = Interruption::freeze_restart) {
    return SwitchProtocol(ZenoSchedule::make(total_time, n), interruption);
  }

  [[nodiscard]] double total_time() const { return schedule_.total_time(); }
  [[nodiscard]] std::int64_t n() const { return schedule_.n(); }
  [[nodiscard]] double dt() const { return schedule_.dt(); }
  [[nodiscard]] Interruption interruption() const { return interruption_; }
  [[nodiscard]] const ZenoSchedule& schedule() const { return schedule_; }

 private:
  SwitchProtocol(ZenoSchedule schedule, Interruption interruption)
      : schedule_(schedule), interruption_(interruption) {}

  ZenoSchedule schedule_;
  Interruption interruption_;
};

/// q0 cos(omega t), uninterrupted from rest.
inline double lc_exact_charge(const LCCircuit& c, double t) {
  return c.q0() * std::cos(c.omega() * t);
}

/// q0 (1 - omega^2 t^2 / 2); flagged once omega t > 0.5.
inline flagged lc_short_time_charge(const LCCircuit& c, double t) {
  const double x = c.omega() * t;
  return {c.q0() * (1.0 - x * x / 2.0), std::abs(x) <= 0.5};
}

/// q0 cos^n(omega t / n). Each ON segment restarts from rest.
inline double switched_charge_exact(const LCCircuit& c, const SwitchProtocol& p) {
  const double x = c.omega() * p.dt();
  const double factor = std::cos(x);
  if (factor > 0.0) {
    // cos x = 1 - 2 sin^2(x/2) keeps the per-segment loss exact for tiny x.
    const double s = std::sin(x / 2.0);
    return c.q0() * std::exp(static_cast<double>(p.n()) * std::log1p(-2.0 * s * s));
  }
  return c.q0() * std::pow(factor, static_cast<double>(p.n()));
}

struct TaylorCharge {
  double product;      // q0 (1 - (t/(n tau))^2)^n
  double first_order;  // q0 (1 - (t/tau)^2 / n)
  bool in_domain;      // t/(n tau) < 1
};

inline TaylorCharge switched_charge_taylor(const LCCircuit& c, const SwitchProtocol& p) {
  const double ratio = p.dt() / c.tau();
  return {c.q0() * taylor_product(ratio, p.n()),
          c.q0() * first_order_deficit_form(p.total_time() / c.tau(), p.n()), ratio < 1.0};
}

namespace detail {

struct Phase {
  double q;
  double i;

  friend Phase operator+(Phase a, Phase b) { return {a.q + b.q, a.i + b.i}; }
  friend Phase operator*(double s, Phase a) { return {s * a.q, s * a.i}; }
};

}  // namespace detail

/// One classic fourth-order Runge-Kutta step of y' = f(y). `State` needs
/// `State + State` and `double * State`.
template <class State, class Derivative>
State rk4_step(const State& y, double h, Derivative&& f) {
  const State k1 = f(y);
  const State k2 = f(y + (h / 2.0) * k1);
  const State k3 = f(y + (h / 2.0) * k2);
  const State k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Fixed-step RK4 on q' = i, i' = -q / (L C) over `duration`, with the last
/// step shortened to land exactly on the end of the segment.
inline OscillatorState integrate_segment(const OscillatorState& state, const LCCircuit& c,
                                         double duration, double step) {
  if (!state.switch_on) throw domain_error("cannot integrate while the switch is OFF");
  if (!(step > 0.0) || !std::isfinite(step)) throw domain_error("integration step must be positive");
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw domain_error("segment duration must be finite and non-negative");
  }
  if (!std::isfinite(state.charge) || !std::isfinite(state.current)) {
    throw domain_error("oscillator state is not finite");
  }

  const double omega2 = c.omega() * c.omega();
  const auto rhs = [omega2](detail::Phase y) { return detail::Phase{y.i, -omega2 * y.q}; };

  detail::Phase y{state.charge, state.current};
  const auto full_steps = static_cast<std::int64_t>(std::floor(duration / step));
  for (std::int64_t k = 0; k < full_steps; ++k) y = rk4_step(y, step, rhs);
  const double remainder = duration - static_cast<double>(full_steps) * step;
  if (remainder > 1e-12 * step) y = rk4_step(y, remainder, rhs);

  if (!std::isfinite(y.q) || !std::isfinite(y.i)) throw domain_error("integration diverged");
  return {y.q, y.i, state.time + duration, true};
}

/// Instantaneous current interruption: charge frozen, inductor energy discarded.
inline OscillatorState apply_switch_off(OscillatorState state) {
  state.current = 0.0;
  state.switch_on = false;
  return state;
}

inline OscillatorState apply_switch_on(OscillatorState state) {
  state.switch_on = true;
  return state;
}

/// Time passing with the switch OFF. Nothing but the clock changes.
inline OscillatorState hold_off(OscillatorState state, double duration) {
  if (state.switch_on) throw domain_error("hold_off requires the switch to be OFF");
  state.time += duration;
  return state;
}

struct SegmentRecord {
  std::int64_t index;
  double t_start;
  double t_end;
  double charge_end;
  double current_at_event;  // current interrupted by the OFF event
  double energy_start;
  double energy_end;        // just before the OFF event
  double energy_discarded;  // L i^2 / 2 at the event
};

struct SwitchedRun {
  OscillatorState final_state;
  std::vector<SegmentRecord> segments;
  /// Initial state, then the state after each boundary event. The composite
  /// OFF -> ON flick emits one sample; the final boundary leaves the switch OFF.
  std::vector<OscillatorState> samples;
};

/// Integrates the switch protocol numerically: n RK4 segments of t/n, each
/// followed by the OFF -> ON event.
inline SwitchedRun switched_run_numeric(const LCCircuit& c, const SwitchProtocol& p, double step) {
  if (!(step > 0.0)) throw domain_error("integration step must be positive");
  const double dt = p.dt();
  if (dt > 0.0 && step > dt / 10.0) {
    throw domain_error("integration step must not exceed a tenth of the segment length t/n");
  }

  SwitchedRun run;
  run.segments.reserve(static_cast<std::size_t>(p.n()));
  run.samples.reserve(static_cast<std::size_t>(p.n()) + 1);

  OscillatorState state{c.q0(), 0.0, 0.0, true};
  run.samples.push_back(state);
  for (std::int64_t k = 0; k < p.n(); ++k) {
    const double e0 = energy(state, c);
    const double t0 = state.time;
    state = integrate_segment(state, c, dt, step);
    state.time = static_cast<double>(k + 1) * dt;
    const double e1 = energy(state, c);
    const double discarded = c.inductance() * state.current * state.current / 2.0;
    run.segments.push_back({k, t0, state.time, state.charge, state.current, e0, e1, discarded});
    state = apply_switch_off(state);
    if (k + 1 < p.n()) state = apply_switch_on(state);
    run.samples.push_back(state);
  }
  run.final_state = state;
  return run;
}

}  // namespace zeno
