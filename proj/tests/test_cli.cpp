#include <zeno/io.hpp>

#include "cli_harness.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

zeno::io::CsvTable table(const cli::Sandbox& box, const std::string& name) {
  std::istringstream in(box.read(name));
  return zeno::io::read_csv(in);
}

double cell(const zeno::io::CsvTable& t, std::size_t row, const std::string& col) {
  return zeno::io::numeric_cell(t, row, *t.column(col));
}

}  // namespace

TEST_CASE("zeno quantum", "[cli]") {
  cli::Sandbox box("quantum");

  REQUIRE(box.run("quantum --rabi 3.14159265 --t 1 --n 10") == 0);
  const auto t = table(box, "quantum_records.csv");
  CHECK(t.header == std::vector<std::string>{"n", "exact", "taylor_product", "first_order", "deficit"});
  CHECK(cell(t, 0, "exact") == Approx(0.7806).margin(5e-4));
  CHECK(box.exists("quantum_records.csv.manifest.json"));

  REQUIRE(box.run("quantum --rabi 3.14159265 --t 1 --n 1 --output one.csv") == 0);
  CHECK(cell(table(box, "one.csv"), 0, "exact") == Approx(0.0).margin(1e-15));
  CHECK_THAT(box.read("err.txt"), ContainsSubstring("warning"));

  CHECK(box.run("quantum --rabi 3.14159265 --n 1") == 4);
  CHECK_THAT(box.read("err.txt"), ContainsSubstring("--t") && ContainsSubstring("Usage"));
  CHECK(box.run("quantum --t 1 --n 1") == 4);
  CHECK(box.run("quantum --rabi 1 --t -1 --n 1") == 4);
  CHECK(box.run("quantum --rabi 1 --t 1 --n 0") == 4);
  CHECK(box.run("quantum --rabi 1 --t 1 --n-grid 4,2") == 4);
}

TEST_CASE("zeno quantum Monte Carlo and seeds", "[cli]") {
  cli::Sandbox box("mc");
  REQUIRE(box.run("quantum --rabi 3.14159265 --t 1 --n 10 --trials 20000 --seed 7 --output a.csv") == 0);
  REQUIRE(box.run("quantum --rabi 3.14159265 --t 1 --n 10 --trials 20000 --output b.csv", "ZENO_SEED=7") == 0);
  REQUIRE(box.run("quantum --rabi 3.14159265 --t 1 --n 10 --trials 20000 --seed 7 --workers 3 --output c.csv") == 0);
  CHECK(box.read("a.csv") == box.read("b.csv"));
  CHECK(box.read("a.csv") == box.read("c.csv"));
  const auto t = table(box, "a.csv");
  REQUIRE(t.column("mc_frequency"));
  CHECK(cell(t, 0, "mc_frequency") == Approx(0.78054607).margin(4 * std::sqrt(0.78 * 0.22 / 20000)));
  CHECK(box.run("quantum --rabi 1 --t 1 --n 2 --trials 10", "ZENO_SEED=abc") == 4);
}

TEST_CASE("zeno quantum reads Hamiltonian files", "[cli]") {
  cli::Sandbox box("hfile");
  box.write("rabi.json", R"({"dim": 2, "hbar": 1, "matrix": [[[0,0],[1.5707963267948966,0]],
    [[1.5707963267948966,0],[0,0]]], "initial": {"basis_index": 0}})");
  REQUIRE(box.run("quantum --hamiltonian rabi.json --t 1 --n 10") == 0);
  CHECK(cell(table(box, "quantum_records.csv"), 0, "exact") == Approx(0.78054606978114017).margin(1e-13));

  box.write("nh.json", R"({"dim": 2, "matrix": [[[0,0],[0,1]], [[0,1],[0,0]]], "initial": {"basis_index": 0}})");
  CHECK(box.run("quantum --hamiltonian nh.json --t 1 --n 2") == 3);
  box.write("broken.json", R"({"dim": 2, "matrix": )");
  CHECK(box.run("quantum --hamiltonian broken.json --t 1 --n 2") == 2);
  CHECK(box.run("quantum --hamiltonian missing.json --t 1 --n 2") == 2);
}

TEST_CASE("zeno lc", "[cli]") {
  cli::Sandbox box("lc");
  REQUIRE(box.run("lc --L 1 --C 1 --q0 1 --t 1 --n 4 --method analytic --output a.csv") == 0);
  const double analytic = cell(table(box, "a.csv"), 0, "value");
  CHECK(analytic == Approx(0.881329).margin(1e-6));

  REQUIRE(box.run("lc --L 1 --C 1 --q0 1 --t 1 --n 4 --method rk4 --step 1e-4 --output r.csv --trace tr.csv") == 0);
  CHECK(std::abs(cell(table(box, "r.csv"), 0, "value") - analytic) <= 1e-8);
  const auto trace = table(box, "tr.csv");
  CHECK(trace.header == std::vector<std::string>{"time", "q", "i", "switch_on"});
  CHECK(trace.rows.size() == 5);

  REQUIRE(box.run("lc --L 1 --C 1 --q0 2.5 --t 0 --n-grid 1,10,100 --output z.csv") == 0);
  const auto z = table(box, "z.csv");
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(cell(z, r, "charge") == 2.5);
    CHECK(cell(z, r, "value") == 1.0);
  }

  REQUIRE(box.run("lc --m 3 --k 3 --x0 0.5 --t 1 --n 4 --output m.csv") == 0);
  const auto m = table(box, "m.csv");
  CHECK(m.rows[0][*m.column("system_tag")] == "classical_lho");
  CHECK(cell(m, 0, "charge") == Approx(0.5 * 0.88132906917870382).margin(1e-14));

  box.write("c.json", R"({"L": 2, "C": 0.5, "q0": 1})");
  REQUIRE(box.run("lc --circuit c.json --t 1 --n 4 --output c.csv") == 0);
  CHECK(cell(table(box, "c.csv"), 0, "value") == Approx(0.88132906917870382).margin(1e-14));
  REQUIRE(box.run("lc --lc-unit --t 1 --n 4 --output u.csv") == 0);

  CHECK(box.run("lc --L 0 --C 1 --q0 1 --t 1 --n 4") == 4);
  CHECK(box.run("lc --L 1 --C -2 --q0 1 --t 1 --n 4") == 4);
  CHECK(box.run("lc --L 1 --C 1 --t 1 --n 4") == 4);
  CHECK(box.run("lc --lc-unit --L 1 --C 1 --q0 1 --t 1 --n 4") == 4);
  CHECK(box.run("lc --lc-unit --t 1 --n 4 --method euler") == 4);
  CHECK(box.run("lc --lc-unit --t 1 --n 4 --method rk4 --step 0.1") == 4);
  box.write("bad.json", R"({"R": 5})");
  CHECK(box.run("lc --circuit bad.json --t 1 --n 4") == 2);
}

TEST_CASE("zeno fit", "[cli]") {
  cli::Sandbox box("fit");
  REQUIRE(box.run("lc --lc-unit --t 1 --n-grid 100:100000:20 --output scan.csv") == 0);
  REQUIRE(box.run("fit --input scan.csv --n-min 100") == 0);
  auto report = zeno::io::json::parse(box.read("fit_report.json"));
  CHECK(report["slope"].get<double>() == Approx(-1.0).margin(0.02));
  CHECK_THAT(box.read("out.txt"), ContainsSubstring("slope="));

  std::string synthetic = "n,value,deficit\n";
  for (int n : {10, 20, 50, 100, 200, 500, 1000}) {
    synthetic += std::to_string(n) + "," + zeno::io::format_real(1 - 0.5 / n) + "," +
                 zeno::io::format_real(0.5 / n) + "\n";
  }
  box.write("syn.csv", synthetic);
  REQUIRE(box.run("fit --input syn.csv --output syn.json") == 0);
  report = zeno::io::json::parse(box.read("syn.json"));
  CHECK(report["slope"].get<double>() == Approx(-1.0).margin(1e-9));
  CHECK(report["intercept"].get<double>() == Approx(std::log(0.5)).margin(1e-9));
  CHECK(report["tau_estimate"].is_null());

  std::string expo = "t,value\n";
  std::string cosine = "t,value\n";
  for (int k = 1; k <= 10; ++k) {
    expo += zeno::io::format_real(0.01 * k) + "," + zeno::io::format_real(std::exp(-0.01 * k)) + "\n";
    cosine += zeno::io::format_real(0.01 * k) + "," + zeno::io::format_real(std::cos(0.01 * k)) + "\n";
  }
  box.write("exp.csv", expo);
  box.write("cos.csv", cosine);
  CHECK(box.run("fit --short-time exp.csv") == 6);
  CHECK_THAT(box.read("err.txt"), ContainsSubstring("linear coefficient"));
  REQUIRE(box.run("fit --short-time cos.csv --output z1.json") == 0);
  report = zeno::io::json::parse(box.read("z1.json"));
  CHECK(report["tau_estimate"].get<double>() == Approx(std::sqrt(2.0)).margin(0.01));

  CHECK(box.run("fit --input scan.csv --n-min 90000") == 5);
  CHECK(box.run("fit --input scan.csv --short-time cos.csv") == 4);
  CHECK(box.run("fit") == 4);
}

TEST_CASE("zeno plot", "[cli]") {
  cli::Sandbox box("plot");
  box.write("three.csv", "n,value,deficit\n1,0.5,0.5\n10,0.95,0.05\n100,0.995,0.005\n");
  REQUIRE(box.run("plot --input three.csv --output a.svg") == 0);
  const auto svg = box.read("a.svg");
  CHECK_THAT(svg, ContainsSubstring("<polyline"));
  std::size_t circles = 0;
  for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
  CHECK(circles == 3);
  REQUIRE(box.run("plot --input three.csv --output b.svg") == 0);
  CHECK(box.read("b.svg") == svg);

  box.write("inv.csv", "n,value,deficit\n10,0.95,0.05\n20,0.975,0.025\n50,0.99,0.01\n100,0.995,0.005\n1000,0.9995,0.0005\n");
  REQUIRE(box.run("plot --input inv.csv --log-log --annotate --output c.svg") == 0);
  CHECK_THAT(box.read("c.svg"), ContainsSubstring("slope = -1.0000"));

  box.write("bad.csv", "n,value\n1,0.5\n2,oops\n");
  CHECK(box.run("plot --input bad.csv") == 2);
  CHECK_THAT(box.read("err.txt"), ContainsSubstring("row 2") && ContainsSubstring("'value'"));
  box.write("empty.csv", "n,value\n");
  CHECK(box.run("plot --input empty.csv") == 5);
  CHECK(box.run("plot --input three.csv --y velocity") == 4);
}

TEST_CASE("manifests replay to identical outputs", "[cli]") {
  cli::Sandbox box("replay");
  REQUIRE(box.run("quantum --rabi 3.14159265 --t 1 --n-grid pow2:0:6 --trials 2000 --seed 3 --output q.csv") == 0);
  REQUIRE(box.run("lc --lc-unit --t 1 --n 8 --method rk4 --step 1e-3 --trace t.csv --output l.csv") == 0);
  REQUIRE(box.run("fit --input l.csv --output f.json") == 5);  // single row: nothing to fit
  REQUIRE(box.run("lc --lc-unit --t 1 --n-grid 10:1000:9 --output g.csv") == 0);
  REQUIRE(box.run("fit --input g.csv --output f.json") == 0);
  REQUIRE(box.run("plot --input g.csv --log-log --annotate --output p.svg") == 0);

  const auto manifest = zeno::io::manifest_from_json(zeno::io::json::parse(box.read("q.csv.manifest.json")));
  CHECK(manifest.command == "quantum");
  CHECK(manifest.seed == 3u);
  CHECK(manifest.outputs == std::vector<std::string>{"q.csv"});
  CHECK(manifest.parameters["n-grid"] == "pow2:0:6");
  const auto lcm = zeno::io::manifest_from_json(zeno::io::json::parse(box.read("l.csv.manifest.json")));
  CHECK(lcm.outputs == std::vector<std::string>{"l.csv", "t.csv"});
  CHECK(lcm.parameters["lc-unit"] == true);

  for (auto [file, manifest_file] : {std::pair{"q.csv", "q.csv.manifest.json"}, {"g.csv", "g.csv.manifest.json"},
                                     {"f.json", "f.json.manifest.json"}, {"p.svg", "p.svg.manifest.json"}}) {
    const std::string copy = std::string("replayed_") + file;
    REQUIRE(box.run(std::string("replay ") + manifest_file + " --output " + copy) == 0);
    CHECK(box.read(copy) == box.read(file));
  }
  CHECK(box.run("replay nowhere.json") == 2);
}
