#pragma once

#include <zeno/convergence.hpp>
#include <zeno/errors.hpp>
#include <zeno/oscillator.hpp>
#include <zeno/quantum.hpp>

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace zeno::io {

using nlohmann::json;

/// Round-trip-safe text form of a real: 17 significant digits, '.' separator.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Header row plus data rows of raw cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (header[k] == name) return k;
    }
    return std::nullopt;
  }
};

namespace detail {

inline std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
      cell.remove_suffix(1);
    }
    cells.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace detail

/// Reads a CSV with a mandatory header row. Blank lines are skipped; rows
/// with the wrong number of cells are a parse_error.
inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = detail::split_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw parse_error("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(table.header.size()) + " cells, found " +
                        std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) throw parse_error("CSV input has no header row");
  return table;
}

inline void write_csv(std::ostream& out, const CsvTable& table) {
  auto write_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k > 0) out << ',';
      out << cells[k];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

/// Parses cell (row, col) as a real. Rows are numbered from 1 after the header.
inline double numeric_cell(const CsvTable& table, std::size_t row, std::size_t col) {
  const std::string& cell = table.rows[row][col];
  double v = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc{} || ptr != last) {
    throw parse_error("non-numeric cell at row " + std::to_string(row + 1) + ", column '" +
                      table.header[col] + "': \"" + cell + "\"");
  }
  return v;
}

inline std::int64_t integer_cell(const CsvTable& table, std::size_t row, std::size_t col) {
  const double v = numeric_cell(table, row, col);
  if (v < 1.0 || v != std::floor(v) || v > 9.0e15) {
    throw parse_error("row " + std::to_string(row + 1) + ", column '" + table.header[col] +
                      "': expected a positive integer, found \"" + table.rows[row][col] + "\"");
  }
  return static_cast<std::int64_t>(v);
}

/// Accepts both record layouts: (n, value, deficit, system_tag) and the
/// quantum protocol layout (n, exact, ..., deficit). A missing deficit
/// column is derived as 1 - value.
inline std::vector<ConvergenceRecord> read_convergence_records(const CsvTable& table) {
  const auto n_col = table.column("n");
  auto value_col = table.column("value");
  if (!value_col) value_col = table.column("exact");
  if (!n_col || !value_col) {
    throw parse_error("records CSV needs columns 'n' and 'value' (or 'exact')");
  }
  const auto deficit_col = table.column("deficit");
  const auto tag_col = table.column("system_tag");
  std::vector<ConvergenceRecord> records;
  records.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    ConvergenceRecord rec{integer_cell(table, r, *n_col), numeric_cell(table, r, *value_col), 0.0,
                          SystemTag::quantum};
    rec.deficit = deficit_col ? numeric_cell(table, r, *deficit_col) : 1.0 - rec.value;
    if (tag_col) {
      const auto tag = parse_system_tag(table.rows[r][*tag_col]);
      if (!tag) {
        throw parse_error("unknown system_tag at row " + std::to_string(r + 1) + ": \"" +
                          table.rows[r][*tag_col] + "\"");
      }
      rec.system_tag = *tag;
    }
    records.push_back(rec);
  }
  return records;
}

inline CsvTable records_table(std::span<const ConvergenceRecord> records) {
  CsvTable table{{"n", "value", "deficit", "system_tag"}, {}};
  for (const auto& r : records) {
    table.rows.push_back({std::to_string(r.n), format_real(r.value), format_real(r.deficit),
                          std::string(to_string(r.system_tag))});
  }
  return table;
}

/// Short-time samples: columns t, value.
inline std::vector<TimeSample> read_time_samples(const CsvTable& table) {
  const auto t_col = table.column("t");
  const auto v_col = table.column("value");
  if (!t_col || !v_col) throw parse_error("short-time CSV needs columns 't' and 'value'");
  std::vector<TimeSample> samples;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    samples.push_back({numeric_cell(table, r, *t_col), numeric_cell(table, r, *v_col)});
  }
  return samples;
}

// ---------------------------------------------------------------------------
// JSON inputs

struct HamiltonianSpec {
  Hamiltonian hamiltonian;
  QuantumState initial;
};

namespace detail {

inline complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw parse_error(where + ": expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw parse_error(std::string("missing or non-numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

}  // namespace detail

/// { "dim", "hbar", "matrix": [[[re,im],...],...], "initial": {"basis_index"} | {"vector"} }
/// Schema problems throw parse_error; a non-Hermitian matrix throws
/// invalid_hamiltonian. An initial vector is normalized on load.
inline HamiltonianSpec parse_hamiltonian(const json& j) {
  if (!j.is_object()) throw parse_error("Hamiltonian file must hold a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() < 1) {
    throw parse_error("field 'dim' must be a positive integer");
  }
  const auto dim = static_cast<Eigen::Index>(j["dim"].get<std::int64_t>());
  const double hbar = j.contains("hbar") ? detail::require_number(j, "hbar") : 1.0;

  if (!j.contains("matrix") || !j["matrix"].is_array() ||
      j["matrix"].size() != static_cast<std::size_t>(dim)) {
    throw parse_error("field 'matrix' must hold dim rows");
  }
  complex_matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = j["matrix"][static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      throw parse_error("matrix row " + std::to_string(r) + " must hold dim entries");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = detail::parse_complex(row[static_cast<std::size_t>(c)],
                                      "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }

  if (!j.contains("initial") || !j["initial"].is_object()) {
    throw parse_error("field 'initial' must be an object");
  }
  const json& init = j["initial"];
  std::optional<QuantumState> initial;
  if (init.contains("basis_index")) {
    if (!init["basis_index"].is_number_integer()) throw parse_error("basis_index must be an integer");
    const auto k = init["basis_index"].get<std::int64_t>();
    if (k < 0 || k >= dim) throw parse_error("basis_index outside [0, dim)");
    initial = QuantumState::basis(dim, static_cast<Eigen::Index>(k));
  } else if (init.contains("vector")) {
    const json& v = init["vector"];
    if (!v.is_array() || v.size() != static_cast<std::size_t>(dim)) {
      throw parse_error("initial vector must hold dim entries");
    }
    complex_vector amps(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      amps(k) = detail::parse_complex(v[static_cast<std::size_t>(k)], "initial.vector[" + std::to_string(k) + "]");
    }
    try {
      initial = QuantumState::normalized(std::move(amps));
    } catch (const domain_error& e) {
      throw parse_error(std::string("initial vector: ") + e.what());
    }
  } else {
    throw parse_error("'initial' needs 'basis_index' or 'vector'");
  }
  return {Hamiltonian::make(std::move(m), hbar), *initial};
}

struct CircuitSpec {
  LCCircuit circuit;
  bool mechanical;
  std::optional<LHOParameters> lho;
};

/// { "L", "C", "q0" } or the mechanical flavor { "m", "k", "x0" }.
inline CircuitSpec parse_circuit(const json& j) {
  if (!j.is_object()) throw parse_error("circuit file must hold a JSON object");
  if (j.contains("L") || j.contains("C") || j.contains("q0")) {
    return {LCCircuit::make(detail::require_number(j, "L"), detail::require_number(j, "C"),
                            detail::require_number(j, "q0")),
            false, std::nullopt};
  }
  if (j.contains("m") || j.contains("k") || j.contains("x0")) {
    const LHOParameters lho{detail::require_number(j, "m"), detail::require_number(j, "k"),
                            detail::require_number(j, "x0")};
    if (!(lho.mass > 0.0)) throw domain_error("mass m must be positive");
    return {lc_from_lho(lho), true, lho};
  }
  throw parse_error("circuit file needs {L, C, q0} or {m, k, x0}");
}

inline json parse_json_text(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// JSON outputs

/// { slope, intercept, r_squared, tau_estimate, linear_coefficient, residual_rms };
/// fields of the fit that was not run are null.
inline json fit_report(const std::optional<DeficitFit>& deficit,
                       const std::optional<ShortTimeFit>& short_time) {
  json j;
  j["slope"] = deficit ? json(deficit->slope) : json(nullptr);
  j["intercept"] = deficit ? json(deficit->intercept) : json(nullptr);
  j["r_squared"] = deficit ? json(deficit->r_squared) : json(nullptr);
  j["tau_estimate"] = short_time ? json(short_time->tau_estimate) : json(nullptr);
  j["linear_coefficient"] = short_time ? json(short_time->linear_coefficient) : json(nullptr);
  j["residual_rms"] = short_time ? json(short_time->residual_rms) : json(nullptr);
  return j;
}

struct RunManifest {
  std::string command;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  std::string tool_version;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;
};

inline json to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["parameters"] = m.parameters;
  j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  j["tool_version"] = m.tool_version;
  j["outputs"] = m.outputs;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  return j;
}

inline RunManifest manifest_from_json(const json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters");
    if (!m.parameters.is_object()) throw parse_error("manifest parameters must be an object");
    if (j.contains("seed") && !j["seed"].is_null()) m.seed = j["seed"].get<std::uint64_t>();
    m.tool_version = j.value("tool_version", "");
    m.outputs = j.value("outputs", std::vector<std::string>{});
    m.wall_clock_seconds = j.value("wall_clock_seconds", 0.0);
    return m;
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace zeno::io
