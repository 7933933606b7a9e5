#pragma once

#include <zeno/errors.hpp>
#include <zeno/oscillator.hpp>
#include <zeno/protocols.hpp>
#include <zeno/quantum.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zeno {

enum class SystemTag { quantum, classical_lc, classical_lho };

inline std::string_view to_string(SystemTag tag) {
  switch (tag) {
    case SystemTag::quantum: return "quantum";
    case SystemTag::classical_lc: return "classical_lc";
    case SystemTag::classical_lho: return "classical_lho";
  }
  return "quantum";
}

inline std::optional<SystemTag> parse_system_tag(std::string_view s) {
  if (s == "quantum") return SystemTag::quantum;
  if (s == "classical_lc") return SystemTag::classical_lc;
  if (s == "classical_lho") return SystemTag::classical_lho;
  return std::nullopt;
}

/// One point of an n-scan. `value` is normalized so that the n -> infinity
/// fixed point is 1 (survival probability, or q_n / q0).
struct ConvergenceRecord {
  std::int64_t n;
  double value;
  double deficit;
  SystemTag system_tag;
};

/// Largest normalized value scan_n accepts.
inline constexpr double kMaxNormalizedValue = 1.001;

/// Evaluates `evaluator` at each n of a strictly increasing grid. Aborts with
/// domain_error on a non-finite value or one outside [0, 1.001].
inline std::vector<ConvergenceRecord> scan_n(const std::function<double(std::int64_t)>& evaluator,
                                             std::span<const std::int64_t> n_grid,
                                             SystemTag tag = SystemTag::quantum) {
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    if (n_grid[k] < 1) throw domain_error("n-grid entries must be at least 1");
    if (k > 0 && n_grid[k] <= n_grid[k - 1]) {
      throw domain_error("n-grid must be strictly increasing");
    }
  }
  std::vector<ConvergenceRecord> records;
  records.reserve(n_grid.size());
  for (const std::int64_t n : n_grid) {
    const double value = evaluator(n);
    if (!std::isfinite(value) || value < 0.0 || value > kMaxNormalizedValue) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "scan aborted at n = " << n << ": normalized value " << value
          << " is non-finite or outside [0, " << kMaxNormalizedValue << "]";
      throw domain_error(msg.str());
    }
    records.push_back({n, value, 1.0 - value, tag});
  }
  return records;
}

/// `count` roughly log-spaced integers from `lo` to `hi` inclusive,
/// duplicates removed after rounding.
inline std::vector<std::int64_t> geometric_grid(std::int64_t lo, std::int64_t hi,
                                                std::int64_t count) {
  if (lo < 1 || hi < lo || count < 1) throw domain_error("invalid geometric grid bounds");
  std::vector<std::int64_t> grid;
  if (count == 1 || lo == hi) {
    grid.push_back(lo);
    if (hi != lo) grid.push_back(hi);
    return grid;
  }
  const double step = std::log(static_cast<double>(hi) / static_cast<double>(lo)) /
                      static_cast<double>(count - 1);
  for (std::int64_t k = 0; k < count; ++k) {
    auto n = static_cast<std::int64_t>(
        std::llround(static_cast<double>(lo) * std::exp(step * static_cast<double>(k))));
    n = std::clamp(n, lo, hi);
    if (grid.empty() || n > grid.back()) grid.push_back(n);
  }
  if (grid.back() != hi) grid.push_back(hi);
  return grid;
}

/// Powers of two 2^lo_exp ... 2^hi_exp.
inline std::vector<std::int64_t> power_of_two_grid(int lo_exp, int hi_exp) {
  std::vector<std::int64_t> grid;
  for (int e = lo_exp; e <= hi_exp; ++e) grid.push_back(std::int64_t{1} << e);
  return grid;
}

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Ordinary least squares y = intercept + slope x.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw insufficient_data("line fit needs two points");
  const auto count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0) throw insufficient_data("line fit needs at least two distinct abscissae");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (intercept + slope * x[k]);
    ss_res += r * r;
  }
  const double r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return {slope, intercept, r_squared};
}

struct DeficitFit {
  double slope;
  double intercept;  // log of the 1/n prefactor, i.e. log((t/tau)^2) for a Zeno system
  double r_squared;
  std::size_t points_used;
  std::size_t points_dropped;  // non-positive deficits in the window
};

inline constexpr std::size_t kMinFitPoints = 5;

/// Least squares of log(deficit) against log(n) over records with n >= n_min.
/// Non-positive deficits are dropped (reported in points_dropped).
inline DeficitFit fit_deficit_slope(std::span<const ConvergenceRecord> records,
                                    std::int64_t n_min) {
  std::vector<double> x;
  std::vector<double> y;
  std::size_t dropped = 0;
  for (const auto& r : records) {
    if (r.n < n_min) continue;
    if (!(r.deficit > 0.0) || !std::isfinite(r.deficit)) {
      ++dropped;
      continue;
    }
    x.push_back(std::log(static_cast<double>(r.n)));
    y.push_back(std::log(r.deficit));
  }
  if (x.size() < kMinFitPoints) {
    throw insufficient_data("deficit fit needs at least " + std::to_string(kMinFitPoints) +
                            " records with n >= " + std::to_string(n_min) +
                            " and positive deficit, found " + std::to_string(x.size()));
  }
  const LineFit line = fit_line(x, y);
  return {line.slope, line.intercept, line.r_squared, x.size(), dropped};
}

struct TimeSample {
  double t;
  double value;
};

struct ShortTimeFit {
  double tau_estimate;
  double constant_term;          // a
  double linear_coefficient;     // b
  double quadratic_coefficient;  // c
  double residual_rms;
  /// |b| t_max / (|c| t_max^2): size of the linear term relative to the
  /// quadratic one at the edge of the sample window.
  double linear_ratio;
};

struct Z1Gate {
  double linear_tolerance = 0.1;
  double constant_tolerance = 1e-3;
};

inline constexpr std::size_t kMinShortTimeSamples = 4;

/// Fits value ~ a + b t + c t^2 and returns tau = sqrt(-1/c). Throws
/// not_zeno_system when the linear term is significant, when c >= 0, or when
/// a is not 1.
inline ShortTimeFit estimate_tau_short_time(std::span<const TimeSample> samples,
                                            const Z1Gate& gate = {}) {
  if (samples.size() < kMinShortTimeSamples) {
    throw insufficient_data("short-time fit needs at least " +
                            std::to_string(kMinShortTimeSamples) + " samples, found " +
                            std::to_string(samples.size()));
  }
  double t_max = 0.0;
  for (const auto& s : samples) {
    if (!std::isfinite(s.t) || !std::isfinite(s.value)) {
      throw domain_error("short-time samples must be finite");
    }
    t_max = std::max(t_max, std::abs(s.t));
  }
  if (!(t_max > 0.0)) throw insufficient_data("short-time samples span no time");

  // Fit in t / t_max for conditioning, then rescale.
  const auto count = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(count, 3);
  Eigen::VectorXd rhs(count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const double u = samples[static_cast<std::size_t>(k)].t / t_max;
    design(k, 0) = 1.0;
    design(k, 1) = u;
    design(k, 2) = u * u;
    rhs(k) = samples[static_cast<std::size_t>(k)].value;
  }
  const auto qr = design.colPivHouseholderQr();
  if (qr.rank() < 3) throw insufficient_data("short-time fit needs three distinct sample times");
  const Eigen::Vector3d coef = qr.solve(rhs);
  const double a = coef(0);
  const double b = coef(1) / t_max;
  const double c = coef(2) / (t_max * t_max);
  const double residual_rms = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(count));

  const double quadratic_size = std::abs(c) * t_max * t_max;
  const double linear_ratio = quadratic_size > 0.0
                                  ? std::abs(b) * t_max / quadratic_size
                                  : std::numeric_limits<double>::infinity();

  auto describe = [](const char* name, double v) {
    std::ostringstream s;
    s.precision(6);
    s << name << " = " << v;
    return s.str();
  };
  if (linear_ratio > gate.linear_tolerance) {
    throw not_zeno_system("linear short-time term detected: linear coefficient " +
                          describe("b", b) + " (" + describe("|b| t_max / |c| t_max^2", linear_ratio) +
                          ")");
  }
  if (!(c < 0.0)) {
    throw not_zeno_system("no quadratic decay: quadratic coefficient " + describe("c", c) +
                          " is not negative");
  }
  if (std::abs(a - 1.0) > gate.constant_tolerance) {
    throw not_zeno_system("constant term " + describe("a", a) + " deviates from 1");
  }
  return {std::sqrt(-1.0 / c), a, b, c, residual_rms, linear_ratio};
}

struct CorrespondenceRow {
  std::int64_t n;
  double quantum_taylor;
  double classical_taylor;
  double quantum_exact;    // cos^{2n}(t / (n tau_q)), Rabi system with Omega = 2 / tau_q
  double classical_exact;  // cos^n(sqrt(2) t / (n tau_c)), LC with omega = sqrt(2) / tau_c
};

struct CorrespondenceReport {
  std::vector<CorrespondenceRow> rows;
  double max_taylor_discrepancy;  // |q - c| / max(1, |q|)
  double max_exact_discrepancy;
};

inline constexpr double kCorrespondenceTolerance = 1e-15;

/// Compares the quantum survival (Rabi system with tau = tau_q) and the charge
/// ratio of `circuit` over `n_grid`. The product forms are the same
/// expression; when tau_q == circuit.tau() they must agree to 1e-15
/// (std::logic_error otherwise). The exact forms differ and are only reported.
inline CorrespondenceReport correspondence_check(double tau_q, const LCCircuit& circuit, double t,
                                                 std::span<const std::int64_t> n_grid) {
  if (!(tau_q > 0.0)) throw domain_error("tau values must be positive");
  const QuantumState ground = QuantumState::basis(2, 0);
  const Hamiltonian rabi = Hamiltonian::rabi(2.0 / tau_q);
  const Propagator propagator(rabi);

  CorrespondenceReport report{{}, 0.0, 0.0};
  for (const std::int64_t n : n_grid) {
    const ZenoSchedule schedule = ZenoSchedule::make(t, n);
    const SwitchProtocol protocol = SwitchProtocol::make(t, n);
    CorrespondenceRow row{n, zeno_survival_taylor(tau_q, schedule).value,
                          switched_charge_taylor(circuit, protocol).product / circuit.q0(),
                          zeno_survival_exact(propagator, ground, schedule),
                          switched_charge_exact(circuit, protocol) / circuit.q0()};
    // Outside t/(n tau) < 1 the product can be far from [0, 1]; measure it relatively there.
    const double scale = std::max(1.0, std::abs(row.quantum_taylor));
    report.max_taylor_discrepancy = std::max(
        report.max_taylor_discrepancy, std::abs(row.quantum_taylor - row.classical_taylor) / scale);
    report.max_exact_discrepancy =
        std::max(report.max_exact_discrepancy, std::abs(row.quantum_exact - row.classical_exact));
    report.rows.push_back(row);
  }
  if (tau_q == circuit.tau() && report.max_taylor_discrepancy > kCorrespondenceTolerance) {
    throw std::logic_error("quantum and classical product forms disagree for equal tau");
  }
  return report;
}

/// Same, with a unit-inductance LC circuit built for tau_c. Its tau can land
/// an ulp away from tau_c, so the identity is asserted against circuit.tau().
inline CorrespondenceReport correspondence_check(double tau_q, double tau_c, double t,
                                                 std::span<const std::int64_t> n_grid) {
  if (!(tau_c > 0.0)) throw domain_error("tau values must be positive");
  const double omega_c = std::numbers::sqrt2 / tau_c;
  return correspondence_check(tau_q, LCCircuit::make(1.0, 1.0 / (omega_c * omega_c), 1.0), t, n_grid);
}

}  // namespace zeno
