#include <cmath>
#include <sstream>

#include <doctest.h>

#include "ladder/config_io.hpp"
#include "ladder/sweep.hpp"

using namespace ladder;

TEST_CASE("json config parsing") {
  std::istringstream in(R"({
    "n_atoms": 5,
    "nbar1": 0.25,
    "nbar2": 2.5,
    "theta_deg": 30.0,
    "mode": "interfering",
    "gamma1": 2.0
  })");
  const EnsembleConfig cfg = parse_config(in);
  CHECK(cfg.n_atoms == 5);
  CHECK(cfg.nbar1 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(cfg.nbar2 == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(cfg.theta == doctest::Approx(M_PI / 6).epsilon(1e-14));
  CHECK(cfg.mode == DipoleMode::interfering);
  CHECK(cfg.gamma1 == 2.0);
  CHECK(cfg.gamma2 == 1.0);  // default
}

TEST_CASE("reservoir occupations from physical sub-objects") {
  // hbar*omega/kT = ln 2  ->  nbar = 1.
  const double omega = std::log(2.0) * 1.380649e-23 / 1.054571817e-34;
  std::ostringstream doc;
  doc.precision(17);
  doc << R"({"n_atoms": 1, "nbar1": {"thermal": {"omega": )" << omega
      << R"(, "T": 1.0}}, "nbar2": {"pump": {"R": 0.0, "dipole": 1e-30, "gamma": 1.0}}})";
  std::istringstream in(doc.str());
  const EnsembleConfig cfg = parse_config(in);
  CHECK(cfg.nbar1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cfg.nbar2 == 0.0);
}

TEST_CASE("config rejection") {
  std::istringstream unknown(R"({"n_atoms": 1, "surprise": 3})");
  CHECK_THROWS(parse_config(unknown));
  std::istringstream bad_mode(R"({"n_atoms": 1, "mode": "diagonal"})");
  CHECK_THROWS(parse_config(bad_mode));
  std::istringstream not_json("n_atoms = 1");
  CHECK_THROWS(parse_config(not_json));
  std::istringstream bad_sub(R"({"nbar1": {"thermal": {"omega": 1.0}}})");
  CHECK_THROWS(parse_config(bad_sub));
  CHECK_THROWS(parse_config_file("/nonexistent/config.json"));
}

TEST_CASE("mode names round-trip") {
  CHECK(mode_from_string(mode_to_string(DipoleMode::orthogonal)) ==
        DipoleMode::orthogonal);
  CHECK(mode_from_string(mode_to_string(DipoleMode::interfering)) ==
        DipoleMode::interfering);
  CHECK_THROWS(mode_from_string("parallel"));
}

TEST_CASE("sweep grids") {
  const SweepGrid grid{0.1, 0.5, 5};
  const auto pts = grid.points();
  REQUIRE(pts.size() == 5);
  CHECK(pts.front() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(pts.back() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pts[2] == doctest::Approx(0.3).epsilon(1e-14));

  // Single point allowed only when the endpoints coincide (the eta = 1 limit
  // point of the published figures).
  const SweepGrid point{1.0, 1.0, 1};
  CHECK(point.points() == std::vector<double>{1.0});
  CHECK_THROWS(SweepGrid{0.0, 1.0, 1}.points());
  CHECK_THROWS(SweepGrid{0.0, 1.0, 0}.points());
}

TEST_CASE("sweep parameter names") {
  CHECK(sweep_parameter_from_string("eta") == SweepParameter::eta);
  CHECK(sweep_parameter_from_string("n_atoms") == SweepParameter::n_atoms);
  CHECK_THROWS(sweep_parameter_from_string("volume"));
}

namespace {

SweepSpec eta_sweep(int n_atoms, double lo, double hi, int count,
                    DipoleMode mode = DipoleMode::orthogonal) {
  SweepSpec spec;
  spec.parameter = SweepParameter::eta;
  spec.grid = SweepGrid{lo, hi, count};
  spec.base.n_atoms = n_atoms;
  spec.base.mode = mode;
  if (mode == DipoleMode::interfering) spec.base.theta = 0.0;
  return spec;
}

}  // namespace

TEST_CASE("sweeps are deterministic across worker counts") {
  const SweepSpec spec = eta_sweep(4, 0.05, 0.95, 16);
  const auto serial = run_sweep(spec, 1);
  const auto parallel = run_sweep(spec, 4);
  REQUIRE(serial.size() == parallel.size());
  std::ostringstream a, b;
  write_csv(a, serial);
  write_csv(b, parallel);
  CHECK(a.str() == b.str());  // byte-identical output
}

TEST_CASE("csv round trip") {
  const auto rows = run_sweep(eta_sweep(3, 0.1, 0.9, 7), 0);
  std::ostringstream out;
  write_csv(out, rows);

  std::istringstream head(out.str());
  std::string header;
  std::getline(head, header);
  CHECK(header ==
        "eta1,eta2,n_atoms,theta_deg,mode,s11,s22,s33,sz,sz2,g1_1,g1_2,"
        "g1_total,g2_11,g2_22,g2_12,g2_21,g2_total,source");

  std::istringstream in(out.str());
  const auto parsed = parse_csv(in);
  REQUIRE(parsed.size() == rows.size());
  for (size_t k = 0; k < rows.size(); ++k) {
    CHECK(parsed[k].config.n_atoms == rows[k].config.n_atoms);
    CHECK(parsed[k].report.s11 == rows[k].report.s11);  // %.17g exactness
    CHECK(parsed[k].report.sz2 == rows[k].report.sz2);
    CHECK(parsed[k].report.g2_22 == rows[k].report.g2_22);
    CHECK(parsed[k].ok == rows[k].ok);
  }
}

TEST_CASE("error rows survive serialization") {
  // Interfering dipoles with nbar1 != nbar2 have no exact steady state.
  SweepSpec spec;
  spec.parameter = SweepParameter::eta2;
  spec.grid = SweepGrid{0.25, 1.0, 4};
  spec.base.n_atoms = 2;
  spec.base.nbar1 = 1.0;  // eta1 = 0.5 fixed
  spec.base.mode = DipoleMode::interfering;
  spec.base.theta = 0.0;
  const auto rows = run_sweep(spec, 0);
  REQUIRE(rows.size() == 4);
  int failed = 0;
  for (const auto& row : rows) {
    if (!row.ok) {
      ++failed;
      CHECK(!row.error.empty());
    }
  }
  CHECK(failed == 3);  // all but eta2 = 0.5

  std::ostringstream out;
  write_csv(out, rows);
  CHECK(out.str().find(",error\n") != std::string::npos);
  std::istringstream in(out.str());
  const auto parsed = parse_csv(in);
  int parsed_failed = 0;
  for (const auto& row : parsed) {
    if (!row.ok) ++parsed_failed;
  }
  CHECK(parsed_failed == failed);
}

TEST_CASE("json serialization") {
  const auto rows = run_sweep(eta_sweep(2, 0.3, 0.7, 3), 0);
  std::ostringstream out;
  write_json(out, rows);
  const std::string doc = out.str();
  CHECK(doc.find("\"eta1\"") != std::string::npos);
  CHECK(doc.find("\"g2_22\"") != std::string::npos);
  CHECK(doc.find("\"basis_sum\"") != std::string::npos);
}

TEST_CASE("figure datasets") {
  const FigureDataset fig1 = emit_figure(1);
  CHECK(fig1.figure_id == 1);
  REQUIRE(fig1.series.size() == 3);  // three scaled populations at N = 20
  for (const auto& s : fig1.series) {
    REQUIRE(s.x.size() == 201);  // 200-point grid plus the eta = 1 point
    CHECK(s.x.front() == doctest::Approx(0.001).epsilon(1e-15));
    CHECK(s.x.back() == 1.0);
  }
  // Equal occupation of all three levels in the strong-field limit.
  for (const auto& s : fig1.series) {
    CHECK(s.y.back() == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }

  const FigureDataset fig2 = emit_figure(2);
  REQUIRE(fig2.series.size() == 2);  // G1_1/N^2 and G1_2/N^2
  // Endpoint (3+N)/(12N) at N = 20.
  CHECK(fig2.series[0].y.back() == doctest::Approx(23.0 / 240).epsilon(1e-12));
  CHECK(fig2.series[1].y.back() == doctest::Approx(23.0 / 240).epsilon(1e-12));

  const FigureDataset fig3 = emit_figure(3);
  REQUIRE(fig3.series.size() == 3);  // N in {2, 20, 200}
  CHECK(fig3.series[0].y.back() == doctest::Approx(0.96).epsilon(1e-12));

  const FigureDataset fig4 = emit_figure(4);
  REQUIRE(fig4.series.size() == 3);  // N in {1, 2, 200}
  CHECK(fig4.series[0].y.back() == doctest::Approx(0.75).epsilon(1e-12));

  CHECK_THROWS(emit_figure(5));
  CHECK_THROWS(emit_figure(0));

  std::ostringstream out;
  write_figure_csv(out, fig4);
  std::istringstream lines(out.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 1 + 201);  // header plus one row per grid point
}

TEST_CASE("nbar from eta") {
  CHECK(nbar_from_eta(0.0) == 0.0);
  CHECK(nbar_from_eta(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::isinf(nbar_from_eta(1.0)));
  CHECK_THROWS(nbar_from_eta(1.5));
  CHECK_THROWS(nbar_from_eta(-0.1));
}

TEST_CASE("single point evaluation") {
  EnsembleConfig cfg;
  cfg.n_atoms = 1;
  cfg.nbar1 = cfg.nbar2 = 1.0;
  const SweepRow row = evaluate_point(cfg);
  CHECK(row.ok);
  CHECK(row.report.s11 == doctest::Approx(1.0 / 7).epsilon(1e-13));
  CHECK(row.report.source == Source::basis_sum);
}
