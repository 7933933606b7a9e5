// zeno: command-line front end for the Zeno-effect simulation library.
//
//   zeno quantum  repeated-measurement survival of a quantum system
//   zeno lc       switched LC circuit (or mechanical oscillator)
//   zeno fit      1/n deficit slope fit, or short-time tau estimate
//   zeno plot     SVG chart of a records CSV
//   zeno replay   re-run the command recorded in a manifest
//
// Exit codes: 0 success, 1 internal error, 2 malformed/unreadable input or
// unwritable output, 3 non-Hermitian Hamiltonian, 4 usage error or
// out-of-domain parameters, 5 insufficient data, 6 short-time fit rejects
// the system (linear term or no quadratic decay).

#include <zeno/io.hpp>
#include <zeno/svg.hpp>
#include <zeno/zeno.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using zeno::io::json;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kMalformedInput = 2,
  kNonHermitian = 3,
  kOutOfDomain = 4,
  kInsufficientData = 5,
  kZ1Rejected = 6,
};

/// Thrown for flag combinations CLI11 cannot express; exits with 4 and usage.
struct usage_error : zeno::domain_error {
  using zeno::domain_error::domain_error;
};

std::vector<std::int64_t> parse_grid(const std::string& spec) {
  // "1,2,4,8", "lo:hi:count" (geometric), or "pow2:a:b".
  auto to_int = [&spec](const std::string& s) -> std::int64_t {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw usage_error("invalid n-grid '" + spec + "'");
    }
  };
  std::vector<std::string> parts;
  const char sep = spec.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, sep);) parts.push_back(part);

  if (sep == ':') {
    if (parts.size() == 3 && parts[0] == "pow2") {
      const auto a = to_int(parts[1]);
      const auto b = to_int(parts[2]);
      if (a < 0 || b < a || b > 60) throw usage_error("invalid pow2 grid '" + spec + "'");
      return zeno::power_of_two_grid(static_cast<int>(a), static_cast<int>(b));
    }
    if (parts.size() != 3) throw usage_error("invalid n-grid '" + spec + "'");
    return zeno::geometric_grid(to_int(parts[0]), to_int(parts[1]), to_int(parts[2]));
  }
  std::vector<std::int64_t> grid;
  for (const auto& p : parts) grid.push_back(to_int(p));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] < 1 || (k > 0 && grid[k] <= grid[k - 1])) {
      throw usage_error("n-grid must be strictly increasing positive integers: '" + spec + "'");
    }
  }
  if (grid.empty()) throw usage_error("empty n-grid");
  return grid;
}

std::vector<std::int64_t> resolve_grid(const std::optional<std::int64_t>& n,
                                       const std::optional<std::string>& grid) {
  if (n) {
    if (*n < 1) throw usage_error("--n must be at least 1");
    return {*n};
  }
  if (grid) return parse_grid(*grid);
  throw usage_error("one of --n or --n-grid is required");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw zeno::io_error("cannot open input file '" + path + "'");
  return in;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw zeno::io_error("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw zeno::io_error("failed writing '" + path + "'");
}

void write_table(const std::string& path, const zeno::io::CsvTable& table) {
  std::ostringstream s;
  zeno::io::write_csv(s, table);
  write_text(path, s.str());
}

/// Every long option of `sub` with its resolved value (given or default).
/// Keys are flag names, so the object maps straight back onto a command line.
json collect_parameters(const CLI::App& sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->get_expected_max() == 0) {
      if (opt->count() > 0) params[name] = true;
      continue;
    }
    if (opt->count() > 0) {
      params[name] = opt->results().back();
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

void write_manifest(const std::string& path, zeno::io::RunManifest manifest,
                    std::chrono::steady_clock::time_point started) {
  manifest.tool_version = zeno::kVersion;
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_text(path, zeno::io::to_json(manifest).dump(2) + "\n");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ZENO_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const unsigned long long v = std::stoull(s, &used);
      if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw usage_error(std::string("ZENO_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return 0;
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

// ---------------------------------------------------------------------------

struct QuantumArgs {
  std::optional<std::string> hamiltonian;
  std::optional<double> rabi;
  double hbar = 1.0;
  std::optional<double> t;
  std::optional<std::int64_t> n;
  std::optional<std::string> n_grid;
  std::int64_t trials = 0;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string output = "quantum_records.csv";
  std::optional<std::string> manifest;
};

int run_quantum(const QuantumArgs& a, const CLI::App& sub) {
  const auto started = std::chrono::steady_clock::now();
  if (!a.t) throw usage_error("--t is required");
  if (!(*a.t >= 0.0)) throw usage_error("--t must be non-negative");
  if (a.trials < 0) throw usage_error("--trials must be non-negative");
  const auto grid = resolve_grid(a.n, a.n_grid);

  std::optional<zeno::io::HamiltonianSpec> spec;
  if (a.hamiltonian) {
    auto in = open_input(*a.hamiltonian);
    spec = zeno::io::parse_hamiltonian(zeno::io::parse_json_text(in));
  } else if (a.rabi) {
    if (!std::isfinite(*a.rabi)) throw usage_error("--rabi must be finite");
    spec = zeno::io::HamiltonianSpec{zeno::Hamiltonian::rabi(*a.rabi, a.hbar),
                                     zeno::QuantumState::basis(2, 0)};
  } else {
    throw usage_error("one of --hamiltonian or --rabi is required");
  }

  const std::uint64_t seed = resolve_seed(a.seed);
  const zeno::Propagator propagator(spec->hamiltonian);
  const bool monte_carlo = a.trials > 0;

  zeno::io::CsvTable table{{"n", "exact", "taylor_product", "first_order", "deficit"}, {}};
  if (monte_carlo) {
    table.header.emplace_back("mc_frequency");
    table.header.emplace_back("mc_halfwidth");
  }
  for (const std::int64_t n : grid) {
    const auto schedule = zeno::ZenoSchedule::make(*a.t, n);
    const auto r = zeno::evaluate_zeno(propagator, spec->initial, spec->hamiltonian, schedule);
    if (!r.taylor_in_domain) {
      warn("n = " + std::to_string(n) + ": t/(n tau) >= 1, Taylor forms are outside their validity window");
    }
    std::vector<std::string> row{std::to_string(n), zeno::io::format_real(r.exact_survival),
                                 zeno::io::format_real(r.taylor_product_survival),
                                 zeno::io::format_real(r.first_order_survival),
                                 zeno::io::format_real(r.deficit)};
    std::cout << "n=" << n << " exact=" << row[1] << " taylor_product=" << row[2]
              << " first_order=" << row[3];
    if (monte_carlo) {
      const auto mc = zeno::run_trajectories(spec->initial, spec->hamiltonian, schedule, a.trials,
                                             seed, a.workers);
      row.push_back(zeno::io::format_real(mc.frequency));
      row.push_back(zeno::io::format_real(mc.halfwidth));
      std::cout << " mc_frequency=" << row[5] << " +/- " << row[6];
    }
    std::cout << '\n';
    table.rows.push_back(std::move(row));
  }
  write_table(a.output, table);

  zeno::io::RunManifest m;
  m.command = "quantum";
  m.parameters = collect_parameters(sub);
  m.parameters["seed"] = std::to_string(seed);
  m.seed = seed;
  m.outputs = {a.output};
  write_manifest(a.manifest.value_or(a.output + ".manifest.json"), m, started);
  return kOk;
}

// ---------------------------------------------------------------------------

struct LcArgs {
  std::optional<double> inductance, capacitance, q0;
  std::optional<double> mass, stiffness, x0;
  std::optional<std::string> circuit;
  bool lc_unit = false;
  std::optional<double> t;
  std::optional<std::int64_t> n;
  std::optional<std::string> n_grid;
  std::string method = "analytic";
  double step = 1e-4;
  std::optional<std::string> trace;
  std::string output = "lc_records.csv";
  std::optional<std::string> manifest;
};

zeno::io::CircuitSpec resolve_circuit(const LcArgs& a) {
  const bool electric = a.inductance || a.capacitance || a.q0;
  const bool mechanical = a.mass || a.stiffness || a.x0;
  const int sources = int(electric) + int(mechanical) + int(a.circuit.has_value()) + int(a.lc_unit);
  if (sources != 1) {
    throw usage_error("give exactly one of --L/--C/--q0, --m/--k/--x0, --circuit or --lc-unit");
  }
  if (a.lc_unit) return {zeno::LCCircuit::make(1.0, 1.0, 1.0), false, std::nullopt};
  if (a.circuit) {
    auto in = open_input(*a.circuit);
    return zeno::io::parse_circuit(zeno::io::parse_json_text(in));
  }
  if (electric) {
    if (!a.inductance || !a.capacitance || !a.q0) throw usage_error("--L, --C and --q0 go together");
    return {zeno::LCCircuit::make(*a.inductance, *a.capacitance, *a.q0), false, std::nullopt};
  }
  if (!a.mass || !a.stiffness || !a.x0) throw usage_error("--m, --k and --x0 go together");
  if (!(*a.mass > 0.0)) throw zeno::domain_error("mass m must be positive");
  const zeno::LHOParameters lho{*a.mass, *a.stiffness, *a.x0};
  return {zeno::lc_from_lho(lho), true, lho};
}

int run_lc(const LcArgs& a, const CLI::App& sub) {
  const auto started = std::chrono::steady_clock::now();
  if (!a.t) throw usage_error("--t is required");
  if (!(*a.t >= 0.0)) throw usage_error("--t must be non-negative");
  if (a.method != "analytic" && a.method != "rk4") throw usage_error("--method must be analytic or rk4");
  const auto grid = resolve_grid(a.n, a.n_grid);
  if (a.trace && grid.size() != 1) throw usage_error("--trace needs a single --n");
  if (a.trace && a.method != "rk4") throw usage_error("--trace needs --method rk4");

  const auto spec = resolve_circuit(a);
  const auto& circuit = spec.circuit;
  if (circuit.q0() == 0.0) throw zeno::domain_error("initial charge must be nonzero to normalize q_n / q0");
  const auto tag = spec.mechanical ? zeno::SystemTag::classical_lho : zeno::SystemTag::classical_lc;

  std::optional<zeno::SwitchedRun> traced;
  const auto records = zeno::scan_n(
      [&](std::int64_t n) {
        const auto protocol = zeno::SwitchProtocol::make(*a.t, n);
        if (a.method == "analytic") return zeno::switched_charge_exact(circuit, protocol) / circuit.q0();
        auto run = zeno::switched_run_numeric(circuit, protocol, a.step);
        const double value = run.final_state.charge / circuit.q0();
        if (a.trace) traced = std::move(run);
        return value;
      },
      grid, tag);

  zeno::io::CsvTable table{
      {"n", "value", "deficit", "system_tag", "charge", "taylor_product", "first_order"}, {}};
  for (const auto& r : records) {
    const auto taylor = zeno::switched_charge_taylor(circuit, zeno::SwitchProtocol::make(*a.t, r.n));
    if (!taylor.in_domain) {
      warn("n = " + std::to_string(r.n) + ": t/(n tau) >= 1, Taylor forms are outside their validity window");
    }
    table.rows.push_back({std::to_string(r.n), zeno::io::format_real(r.value),
                          zeno::io::format_real(r.deficit), std::string(zeno::to_string(r.system_tag)),
                          zeno::io::format_real(r.value * circuit.q0()),
                          zeno::io::format_real(taylor.product / circuit.q0()),
                          zeno::io::format_real(taylor.first_order / circuit.q0())});
    std::cout << "n=" << r.n << " value=" << table.rows.back()[1]
              << " charge=" << table.rows.back()[4] << '\n';
  }
  write_table(a.output, table);

  zeno::io::RunManifest m;
  m.command = "lc";
  m.parameters = collect_parameters(sub);
  m.outputs = {a.output};
  if (a.trace) {
    zeno::io::CsvTable trace{{"time", "q", "i", "switch_on"}, {}};
    for (const auto& s : traced->samples) {
      trace.rows.push_back({zeno::io::format_real(s.time), zeno::io::format_real(s.charge),
                            zeno::io::format_real(s.current), s.switch_on ? "1" : "0"});
    }
    write_table(*a.trace, trace);
    m.outputs.push_back(*a.trace);
  }
  write_manifest(a.manifest.value_or(a.output + ".manifest.json"), m, started);
  return kOk;
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::optional<std::string> input;
  std::int64_t n_min = 1;
  std::optional<std::string> short_time;
  double linear_tolerance = 0.1;
  std::string output = "fit_report.json";
  std::optional<std::string> manifest;
};

int run_fit(const FitArgs& a, const CLI::App& sub) {
  const auto started = std::chrono::steady_clock::now();
  if (a.input.has_value() == a.short_time.has_value()) {
    throw usage_error("give exactly one of --input or --short-time");
  }
  json report;
  std::ostringstream summary;
  summary.precision(10);
  if (a.input) {
    auto in = open_input(*a.input);
    const auto records = zeno::io::read_convergence_records(zeno::io::read_csv(in));
    const auto fit = zeno::fit_deficit_slope(records, a.n_min);
    if (fit.points_dropped > 0) {
      warn(std::to_string(fit.points_dropped) + " record(s) with non-positive deficit dropped from the fit");
    }
    report = zeno::io::fit_report(fit, std::nullopt);
    summary << "slope=" << fit.slope << " intercept=" << fit.intercept
            << " r_squared=" << fit.r_squared << " points=" << fit.points_used;
  } else {
    auto in = open_input(*a.short_time);
    const auto samples = zeno::io::read_time_samples(zeno::io::read_csv(in));
    zeno::Z1Gate gate;
    gate.linear_tolerance = a.linear_tolerance;
    const auto fit = zeno::estimate_tau_short_time(samples, gate);
    report = zeno::io::fit_report(std::nullopt, fit);
    summary << "tau=" << fit.tau_estimate << " linear_coefficient=" << fit.linear_coefficient
            << " quadratic_coefficient=" << fit.quadratic_coefficient
            << " residual_rms=" << fit.residual_rms;
  }
  write_text(a.output, report.dump(2) + "\n");
  std::cout << summary.str() << '\n';

  zeno::io::RunManifest m;
  m.command = "fit";
  m.parameters = collect_parameters(sub);
  m.outputs = {a.output};
  write_manifest(a.manifest.value_or(a.output + ".manifest.json"), m, started);
  return kOk;
}

// ---------------------------------------------------------------------------

struct PlotArgs {
  std::optional<std::string> input;
  std::string output = "chart.svg";
  bool log_log = false;
  bool annotate = false;
  std::optional<std::string> y;
  std::string title;
  std::optional<std::string> manifest;
};

int run_plot(const PlotArgs& a, const CLI::App& sub) {
  const auto started = std::chrono::steady_clock::now();
  if (!a.input) throw usage_error("--input is required");
  auto in = open_input(*a.input);
  const auto records = zeno::io::read_convergence_records(zeno::io::read_csv(in));
  if (records.empty()) throw zeno::insufficient_data("input has no data rows");

  const std::string y = a.y.value_or(a.log_log ? "deficit" : "value");
  if (y != "value" && y != "deficit") throw usage_error("--y must be value or deficit");

  std::vector<zeno::svg::Point> points;
  for (const auto& r : records) {
    points.push_back({static_cast<double>(r.n), y == "value" ? r.value : r.deficit});
  }
  zeno::svg::ChartOptions options;
  options.log_log = a.log_log;
  options.y_label = y;
  options.title = a.title;
  if (a.annotate) {
    try {
      const auto fit = zeno::fit_deficit_slope(records, 1);
      char buf[96];
      std::snprintf(buf, sizeof buf, "deficit slope = %.4f (r^2 = %.6f)", fit.slope, fit.r_squared);
      options.annotation = buf;
    } catch (const zeno::insufficient_data& e) {
      warn(std::string("no slope annotation: ") + e.what());
    }
  }
  write_text(a.output, zeno::svg::render_chart(points, options));

  zeno::io::RunManifest m;
  m.command = "plot";
  m.parameters = collect_parameters(sub);
  m.outputs = {a.output};
  write_manifest(a.manifest.value_or(a.output + ".manifest.json"), m, started);
  return kOk;
}

// ---------------------------------------------------------------------------

int run(std::vector<std::string> args);

/// Turns a manifest back into a command line. `output` overrides the
/// recorded output path (and drops the recorded manifest path with it).
std::vector<std::string> replay_arguments(const zeno::io::RunManifest& m,
                                          const std::optional<std::string>& output) {
  std::vector<std::string> args{m.command};
  json params = m.parameters;
  if (output) {
    params["output"] = *output;
    params.erase("manifest");
  }
  for (const auto& [key, value] : params.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (value.is_string()) {
      args.push_back("--" + key);
      args.push_back(value.get<std::string>());
    } else {
      throw zeno::parse_error("manifest parameter '" + key + "' must be a string or boolean");
    }
  }
  return args;
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"Zeno-effect simulation laboratory: quantum measurement and switched LC oscillator"};
  app.name("zeno");
  app.set_version_flag("--version", zeno::kVersion);
  app.require_subcommand(1);

  QuantumArgs q;
  auto* quantum = app.add_subcommand("quantum", "Survival under repeated measurement");
  auto* ham_opt = quantum->add_option("--hamiltonian", q.hamiltonian, "Hamiltonian JSON file");
  quantum->add_option("--rabi", q.rabi, "Built-in Rabi Hamiltonian (Omega/2) sigma_x")->excludes(ham_opt);
  quantum->add_option("--hbar", q.hbar, "hbar for the --rabi preset")->capture_default_str();
  quantum->add_option("--t", q.t, "Total time");
  auto* qn = quantum->add_option("--n", q.n, "Number of measurements");
  quantum->add_option("--n-grid", q.n_grid, "n values: 1,2,4 | lo:hi:count | pow2:a:b")->excludes(qn);
  quantum->add_option("--trials", q.trials, "Monte Carlo trajectories per n (0 = none)")->capture_default_str();
  quantum->add_option("--seed", q.seed, "Monte Carlo seed (falls back to ZENO_SEED, then 0)");
  quantum->add_option("--workers", q.workers, "Monte Carlo worker threads (0 = all cores)")->capture_default_str();
  quantum->add_option("--output", q.output, "Records CSV")->capture_default_str();
  quantum->add_option("--manifest", q.manifest, "Manifest path (default <output>.manifest.json)");

  LcArgs l;
  auto* lc = app.add_subcommand("lc", "Switched LC circuit or mechanical oscillator");
  lc->add_option("--L", l.inductance, "Inductance");
  lc->add_option("--C", l.capacitance, "Capacitance");
  lc->add_option("--q0", l.q0, "Initial charge");
  lc->add_option("--m", l.mass, "Mass (mechanical flavor)");
  lc->add_option("--k", l.stiffness, "Stiffness (mechanical flavor)");
  lc->add_option("--x0", l.x0, "Initial displacement (mechanical flavor)");
  lc->add_option("--circuit", l.circuit, "Circuit JSON file");
  lc->add_flag("--lc-unit", l.lc_unit, "Preset L = C = q0 = 1");
  lc->add_option("--t", l.t, "Total time");
  auto* ln = lc->add_option("--n", l.n, "Number of switch interruptions");
  lc->add_option("--n-grid", l.n_grid, "n values: 1,2,4 | lo:hi:count | pow2:a:b")->excludes(ln);
  lc->add_option("--method", l.method, "analytic | rk4")->capture_default_str();
  lc->add_option("--step", l.step, "RK4 step")->capture_default_str();
  lc->add_option("--trace", l.trace, "Trajectory trace CSV (rk4, single n)");
  lc->add_option("--output", l.output, "Records CSV")->capture_default_str();
  lc->add_option("--manifest", l.manifest, "Manifest path (default <output>.manifest.json)");

  FitArgs f;
  auto* fit = app.add_subcommand("fit", "Fit the deficit law or estimate tau from short-time data");
  fit->add_option("--input", f.input, "Records CSV");
  fit->add_option("--n-min", f.n_min, "Smallest n in the fit window")->capture_default_str();
  fit->add_option("--short-time", f.short_time, "Short-time samples CSV (columns t, value)");
  fit->add_option("--linear-tolerance", f.linear_tolerance,
                  "Largest accepted |b| t_max / |c| t_max^2")->capture_default_str();
  fit->add_option("--output", f.output, "Fit report JSON")->capture_default_str();
  fit->add_option("--manifest", f.manifest, "Manifest path (default <output>.manifest.json)");

  PlotArgs p;
  auto* plot = app.add_subcommand("plot", "SVG chart of a records CSV");
  plot->add_option("--input", p.input, "Records CSV");
  plot->add_option("--output", p.output, "SVG file")->capture_default_str();
  plot->add_flag("--log-log", p.log_log, "Logarithmic axes");
  plot->add_flag("--annotate", p.annotate, "Annotate with the fitted deficit slope");
  plot->add_option("--y", p.y, "value | deficit (default: deficit with --log-log, else value)");
  plot->add_option("--title", p.title, "Chart title");
  plot->add_option("--manifest", p.manifest, "Manifest path (default <output>.manifest.json)");

  std::string replay_manifest;
  std::optional<std::string> replay_output;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", replay_manifest, "Manifest JSON")->required();
  replay->add_option("--output", replay_output, "Override the recorded output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kOutOfDomain;
  }

  const auto with_usage = [](const CLI::App& sub, auto&& body) {
    try {
      return body();
    } catch (const usage_error& e) {
      std::cerr << "error: " << e.what() << '\n' << sub.help();
      return int{kOutOfDomain};
    }
  };
  if (quantum->parsed()) return with_usage(*quantum, [&] { return run_quantum(q, *quantum); });
  if (lc->parsed()) return with_usage(*lc, [&] { return run_lc(l, *lc); });
  if (fit->parsed()) return with_usage(*fit, [&] { return run_fit(f, *fit); });
  if (plot->parsed()) return with_usage(*plot, [&] { return run_plot(p, *plot); });
  auto in = open_input(replay_manifest);
  const auto manifest = zeno::io::manifest_from_json(zeno::io::parse_json_text(in));
  if (manifest.command == "replay") throw zeno::parse_error("manifest cannot record a replay");
  return run(replay_arguments(manifest, replay_output));
}

int run(std::vector<std::string> args) {
  try {
    return dispatch(std::move(args));
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\nrun 'zeno --help' for usage\n";
    return kOutOfDomain;
  } catch (const zeno::parse_error& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kMalformedInput;
  } catch (const zeno::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMalformedInput;
  } catch (const zeno::invalid_hamiltonian& e) {
    std::cerr << "error: invalid Hamiltonian: " << e.what() << '\n';
    return kNonHermitian;
  } catch (const zeno::insufficient_data& e) {
    std::cerr << "error: insufficient data: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const zeno::not_zeno_system& e) {
    std::cerr << "error: not a Zeno system: " << e.what() << '\n';
    return kZ1Rejected;
  } catch (const zeno::domain_error& e) {
    std::cerr << "error: out of domain: " << e.what() << '\n';
    return kOutOfDomain;
  } catch (const zeno::dimension_mismatch& e) {
    std::cerr << "error: out of domain: " << e.what() << '\n';
    return kOutOfDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc));
}
