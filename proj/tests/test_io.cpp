#include <zeno/io.hpp>
#include <zeno/svg.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace zeno::io;
using Catch::Approx;

namespace {

CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

json parse_json(const std::string& text) {
  std::istringstream in(text);
  return parse_json_text(in);
}

}  // namespace

TEST_CASE("format_real round-trips", "[io][property]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int k = 0; k < 2000; ++k) {
    const double v = std::ldexp(mant(rng), expo(rng));
    REQUIRE(std::stod(format_real(v)) == v);
  }
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(NAN) == "nan");
}

TEST_CASE("CSV reading", "[io]") {
  const auto t = parse("n,value,deficit,system_tag\n1, 0.5 ,0.5,quantum\r\n\n2,0.75,0.25,classical_lc\n");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][1] == "0.5");
  const auto records = read_convergence_records(t);
  CHECK(records[1].n == 2);
  CHECK(records[1].value == 0.75);
  CHECK(records[1].system_tag == zeno::SystemTag::classical_lc);

  CHECK_THROWS_AS(parse(""), zeno::parse_error);
  CHECK_THROWS_AS(parse("a,b\n1\n"), zeno::parse_error);
}

TEST_CASE("records accept the quantum protocol layout", "[io]") {
  const auto t = parse("n,exact,taylor_product,first_order,deficit\n10,0.78,0.77,0.75,0.22\n");
  const auto r = read_convergence_records(t);
  CHECK(r[0].value == 0.78);
  CHECK(r[0].deficit == 0.22);
  const auto no_deficit = read_convergence_records(parse("n,value\n3,0.25\n"));
  CHECK(no_deficit[0].deficit == 0.75);
}

TEST_CASE("non-numeric cells name row and column", "[io]") {
  try {
    read_convergence_records(parse("n,value,deficit\n1,0.5,0.5\n2,abc,0.5\n"));
    FAIL("expected parse_error");
  } catch (const zeno::parse_error& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("row 2") &&
                             Catch::Matchers::ContainsSubstring("'value'"));
  }
  CHECK_THROWS_AS(read_convergence_records(parse("n,value\n1.5,0.5\n")), zeno::parse_error);
  CHECK_THROWS_AS(read_convergence_records(parse("n,value,system_tag\n1,0.5,martian\n")), zeno::parse_error);
  CHECK_THROWS_AS(read_convergence_records(parse("k,value\n1,0.5\n")), zeno::parse_error);
}

TEST_CASE("records table round-trips", "[io]") {
  const std::vector<zeno::ConvergenceRecord> in{{1, 0.1, 0.9, zeno::SystemTag::quantum},
                                                {7, 1.0 / 3.0, 2.0 / 3.0, zeno::SystemTag::classical_lho}};
  std::ostringstream out;
  write_csv(out, records_table(in));
  CHECK(out.str().rfind("n,value,deficit,system_tag\n", 0) == 0);
  const auto back = read_convergence_records(parse(out.str()));
  REQUIRE(back.size() == 2);
  CHECK(back[1].value == in[1].value);
  CHECK(back[1].deficit == in[1].deficit);
  CHECK(back[1].system_tag == zeno::SystemTag::classical_lho);
}

TEST_CASE("short-time samples", "[io]") {
  const auto s = read_time_samples(parse("t,value\n0.01,0.99995\n0.02,0.9998\n"));
  REQUIRE(s.size() == 2);
  CHECK(s[1].t == 0.02);
  CHECK_THROWS_AS(read_time_samples(parse("time,value\n0.1,1\n")), zeno::parse_error);
}

TEST_CASE("Hamiltonian JSON", "[io]") {
  const auto spec = parse_hamiltonian(parse_json(R"({
    "dim": 2, "hbar": 1.0,
    "matrix": [[[0,0],[1.5,0]], [[1.5,0],[0,0]]],
    "initial": {"basis_index": 0}
  })"));
  CHECK(spec.hamiltonian.dim() == 2);
  CHECK(spec.initial == zeno::QuantumState::basis(2, 0));

  const auto vec = parse_hamiltonian(parse_json(R"({
    "dim": 2, "matrix": [[[1,0],[0,-1]], [[0,1],[-1,0]]],
    "initial": {"vector": [[1,0],[0,1]]}
  })"));
  CHECK(vec.hamiltonian.hbar() == 1.0);
  CHECK(vec.initial.amplitudes().norm() == Approx(1.0));

  CHECK_THROWS_AS(parse_hamiltonian(parse_json(R"({"dim": 2, "matrix": [[[0,0],[0,1]], [[0,1],[0,0]]],
    "initial": {"basis_index": 0}})")),
                  zeno::invalid_hamiltonian);
  CHECK_THROWS_AS(parse_hamiltonian(parse_json(R"({"dim": 3, "matrix": [[[0,0],[0,0]], [[0,0],[0,0]]],
    "initial": {"basis_index": 0}})")),
                  zeno::parse_error);
  CHECK_THROWS_AS(parse_hamiltonian(parse_json(R"({"dim": 1, "matrix": [[[0,0]]], "initial": {"basis_index": 4}})")),
                  zeno::parse_error);
  CHECK_THROWS_AS(parse_hamiltonian(parse_json(R"({"dim": 1, "matrix": [[[0,0]]], "initial": {}})")),
                  zeno::parse_error);
  CHECK_THROWS_AS(parse_hamiltonian(parse_json(R"({"dim": 1, "matrix": [[[0,0]]], "initial": {"vector": [[0,0]]}})")),
                  zeno::parse_error);
  CHECK_THROWS_AS(parse_json("{ not json"), zeno::parse_error);
}

TEST_CASE("circuit JSON", "[io]") {
  const auto lc = parse_circuit(parse_json(R"({"L": 2, "C": 0.5, "q0": 1})"));
  CHECK_FALSE(lc.mechanical);
  CHECK(lc.circuit.omega() == Approx(1.0));
  const auto lho = parse_circuit(parse_json(R"({"m": 3, "k": 3, "x0": 0.2})"));
  CHECK(lho.mechanical);
  CHECK(lho.circuit.inductance() == 3.0);
  CHECK(lho.circuit.omega() == Approx(1.0));
  CHECK(lho.circuit.q0() == 0.2);
  CHECK_THROWS_AS(parse_circuit(parse_json(R"({"L": -1, "C": 1, "q0": 1})")), zeno::domain_error);
  CHECK_THROWS_AS(parse_circuit(parse_json(R"({"L": 1, "q0": 1})")), zeno::parse_error);
  CHECK_THROWS_AS(parse_circuit(parse_json(R"({"R": 1})")), zeno::parse_error);
}

TEST_CASE("fit report and manifest JSON", "[io]") {
  const auto report = fit_report(zeno::DeficitFit{-1.0, std::log(0.5), 1.0, 10, 0}, std::nullopt);
  CHECK(report["slope"] == -1.0);
  CHECK(report["tau_estimate"].is_null());
  for (const char* key : {"slope", "intercept", "r_squared", "tau_estimate", "linear_coefficient", "residual_rms"}) {
    CHECK(report.contains(key));
  }

  RunManifest m;
  m.command = "lc";
  m.parameters = {{"t", "1"}, {"lc-unit", true}};
  m.seed = 42;
  m.tool_version = "x";
  m.outputs = {"a.csv"};
  const auto back = manifest_from_json(to_json(m));
  CHECK(back.command == "lc");
  CHECK(back.parameters == m.parameters);
  CHECK(back.seed == 42u);
  CHECK(back.outputs == m.outputs);
  CHECK_THROWS_AS(manifest_from_json(json{{"parameters", json::object()}}), zeno::parse_error);
}

TEST_CASE("SVG chart", "[io][svg]") {
  const std::vector<zeno::svg::Point> pts{{1, 0.5}, {10, 0.05}, {100, 0.005}};
  zeno::svg::ChartOptions opts;
  const auto a = zeno::svg::render_chart(pts, opts);
  CHECK(a == zeno::svg::render_chart(pts, opts));
  CHECK(a.find("width=\"800\" height=\"600\"") != std::string::npos);
  CHECK(a.find("<polyline") != std::string::npos);
  std::size_t circles = 0;
  for (auto pos = a.find("<circle"); pos != std::string::npos; pos = a.find("<circle", pos + 1)) ++circles;
  CHECK(circles == 3);
  CHECK(a.find(">n<") != std::string::npos);

  opts.log_log = true;
  opts.y_label = "deficit";
  opts.annotation = "slope = -1";
  const auto b = zeno::svg::render_chart(pts, opts);
  CHECK(b.find("slope = -1") != std::string::npos);
  // On log axes 1/n data is a straight line: equal pixel steps per decade.
  const auto poly = b.substr(b.find("points=\"") + 8);
  double x0, y0, x1, y1, x2, y2;
  REQUIRE(std::sscanf(poly.c_str(), "%lf,%lf %lf,%lf %lf,%lf", &x0, &y0, &x1, &y1, &x2, &y2) == 6);
  CHECK(x1 - x0 == Approx(x2 - x1).margin(0.02));
  CHECK(y1 - y0 == Approx(y2 - y1).margin(0.02));

  const std::vector<zeno::svg::Point> none{{0, 0}};
  CHECK_THROWS_AS(zeno::svg::render_chart(none, opts), zeno::insufficient_data);
}
