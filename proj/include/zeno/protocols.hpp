#pragma once

#include <zeno/errors.hpp>
#include <zeno/quantum.hpp>
#include <zeno/random.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

namespace zeno {

/// Interval [0, t] split into n equal measurement periods.
class ZenoSchedule {
 public:
  static ZenoSchedule make(double total_time, std::int64_t n) {
    if (!(total_time >= 0.0) || !std::isfinite(total_time)) {
      throw domain_error("total time must be finite and non-negative");
    }
    if (n < 1) throw domain_error("subdivision count n must be at least 1");
    return ZenoSchedule(total_time, n);
  }

  [[nodiscard]] double total_time() const { return total_time_; }
  [[nodiscard]] std::int64_t n() const { return n_; }
  [[nodiscard]] double dt() const { return dt_; }

 private:
  ZenoSchedule(double total_time, std::int64_t n)
      : total_time_(total_time), n_(n), dt_(total_time / static_cast<double>(n)) {}

  double total_time_;
  std::int64_t n_;
  double dt_;
};

struct ZenoResult {
  std::int64_t n;
  double exact_survival;
  double taylor_product_survival;
  double first_order_survival;
  double deficit;
  double tau;  // +inf for a stationary state
  bool taylor_in_domain;
};

/// (1 - ratio^2)^n. Shared by the quantum and classical product forms so
/// both physical readings evaluate literally the same expression.
inline double taylor_product(double ratio, std::int64_t n) {
  const double r2 = ratio * ratio;
  if (r2 < 1.0) return std::exp(static_cast<double>(n) * std::log1p(-r2));
  return std::pow(1.0 - r2, static_cast<double>(n));
}

/// 1 - (t/tau)^2 / n
inline double first_order_deficit_form(double t_over_tau, std::int64_t n) {
  return 1.0 - t_over_tau * t_over_tau / static_cast<double>(n);
}

/// 1 - dH^2 dt^2 / hbar^2. Flagged out of domain once it drops below zero.
inline flagged short_time_survival(const QuantumState& state, const Hamiltonian& h, double dt) {
  if (!(dt >= 0.0)) throw domain_error("dt must be non-negative");
  const double x = dt / h.hbar();
  const double value = 1.0 - hamiltonian_variance(state, h) * x * x;
  return {value, value >= 0.0};
}

/// tau = hbar / dH.
inline double characteristic_time(const QuantumState& state, const Hamiltonian& h) {
  const double variance = hamiltonian_variance(state, h);
  const double scale = kNormTolerance * h.matrix().norm();
  if (variance <= scale * scale) {
    throw stationary_state("no Zeno timescale: state is stationary under this Hamiltonian");
  }
  return h.hbar() / std::sqrt(variance);
}

namespace detail {

/// log of the all-survived probability (1 - d)^n for per-step decay d.
inline double log_survival(double step_decay, std::int64_t n) {
  return static_cast<double>(n) * std::log1p(-step_decay);
}

}  // namespace detail

/// p^n with p = |<state|U(t/n)|state>|^2: every survival collapses back to
/// `state`, so the n-step survival is a pure power.
inline double zeno_survival_exact(const Propagator& propagator, const QuantumState& state,
                                  const ZenoSchedule& schedule) {
  const double d = propagator.decay_probability(state, schedule.dt());
  return std::exp(detail::log_survival(d, schedule.n()));
}

inline double zeno_survival_exact(const QuantumState& state, const Hamiltonian& h,
                                  const ZenoSchedule& schedule) {
  return zeno_survival_exact(Propagator(h), state, schedule);
}

/// (1 - (t/(n tau))^2)^n, flagged when t/(n tau) >= 1.
inline flagged zeno_survival_taylor(double tau, const ZenoSchedule& schedule) {
  if (!(tau > 0.0)) throw domain_error("tau must be positive");
  const double ratio = schedule.dt() / tau;
  return {taylor_product(ratio, schedule.n()), ratio < 1.0};
}

/// 1 - (t/tau)^2 / n, flagged when negative.
inline flagged zeno_survival_first_order(double tau, const ZenoSchedule& schedule) {
  if (!(tau > 0.0)) throw domain_error("tau must be positive");
  const double value = first_order_deficit_form(schedule.total_time() / tau, schedule.n());
  return {value, value >= 0.0};
}

/// All three survival forms for one schedule. A stationary state gets
/// tau = +inf and every form equal to 1.
inline ZenoResult evaluate_zeno(const Propagator& propagator, const QuantumState& state,
                                const Hamiltonian& h, const ZenoSchedule& schedule) {
  double tau = std::numeric_limits<double>::infinity();
  try {
    tau = characteristic_time(state, h);
  } catch (const stationary_state&) {
  }
  const double log_p =
      detail::log_survival(propagator.decay_probability(state, schedule.dt()), schedule.n());
  const flagged product = zeno_survival_taylor(tau, schedule);
  return {schedule.n(),
          std::exp(log_p),
          product.value,
          zeno_survival_first_order(tau, schedule).value,
          -std::expm1(log_p),
          tau,
          product.in_domain};
}

inline ZenoResult evaluate_zeno(const QuantumState& state, const Hamiltonian& h,
                                const ZenoSchedule& schedule) {
  return evaluate_zeno(Propagator(h), state, h, schedule);
}

/// Half-width of the reported Monte Carlo interval, in binomial standard errors.
inline constexpr double kConfidenceSigmas = 4.0;

struct EnsembleStats {
  std::int64_t trials;
  std::int64_t survived;
  double frequency;
  double halfwidth;  // kConfidenceSigmas * sqrt(f (1 - f) / trials)
};

namespace detail {

inline bool run_one_trajectory(const complex_matrix& step, const QuantumState& initial,
                               std::int64_t n, random_stream rng) {
  QuantumState state = initial;
  for (std::int64_t k = 0; k < n; ++k) {
    const QuantumState evolved = QuantumState::normalized(step * state.amplitudes());
    MeasurementOutcome outcome = measure_survival(evolved, initial, rng);
    // Decay is absorbing.
    if (!outcome.survived) return false;
    state = std::move(outcome.post_state);
  }
  return true;
}

}  // namespace detail

/// Monte Carlo realization of the measurement protocol. Trajectory i draws
/// from make_stream(seed, i), so the result does not depend on `workers`
/// (0 selects the hardware concurrency).
inline EnsembleStats run_trajectories(const QuantumState& state, const Hamiltonian& h,
                                      const ZenoSchedule& schedule, std::int64_t trials,
                                      std::uint64_t seed, unsigned workers = 1) {
  if (trials < 1) throw domain_error("trials must be at least 1");
  detail::require_same_dim(state, h.dim());
  const complex_matrix step = Propagator(h).unitary(schedule.dt());

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, trials));

  std::vector<std::int64_t> counts(workers, 0);
  auto run_range = [&](unsigned worker) {
    for (std::int64_t i = worker; i < trials; i += workers) {
      if (detail::run_one_trajectory(step, state, schedule.n(),
                                     make_stream(seed, static_cast<std::uint64_t>(i)))) {
        ++counts[worker];
      }
    }
  };
  if (workers == 1) {
    run_range(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w);
  }

  std::int64_t survived = 0;
  for (auto c : counts) survived += c;
  const double f = static_cast<double>(survived) / static_cast<double>(trials);
  return {trials, survived, f,
          kConfidenceSigmas * std::sqrt(f * (1.0 - f) / static_cast<double>(trials))};
}

}  // namespace zeno
