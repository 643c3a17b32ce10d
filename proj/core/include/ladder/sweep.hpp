#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ladder/observables.hpp"
#include "ladder/reservoir.hpp"

namespace ladder {

enum class SweepParameter { eta, eta1, eta2, theta, n_atoms };

SweepParameter sweep_parameter_from_string(const std::string& s);

struct SweepGrid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  // Endpoints included; count == 1 requires start == stop.
  std::vector<double> points() const;
};

struct SweepSpec {
  SweepParameter parameter = SweepParameter::eta;
  SweepGrid grid;           // theta values in degrees
  EnsembleConfig base;
};

struct SweepRow {
  EnsembleConfig config;
  ObservableReport report;
  bool ok = true;
  std::string error;
};

// Grid points may be evaluated concurrently (workers = 0 picks the hardware
// parallelism); output keeps grid order and is fully deterministic.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers = 0);

SweepRow evaluate_point(const EnsembleConfig& config);

// CSV schema (header mandatory):
// eta1,eta2,n_atoms,theta_deg,mode,s11,s22,s33,sz,sz2,g1_1,g1_2,g1_total,
// g2_11,g2_22,g2_12,g2_21,g2_total,source
void write_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_json(std::ostream& out, std::span<const SweepRow> rows);
std::vector<SweepRow> parse_csv(std::istream& in);

struct FigureSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct FigureDataset {
  int figure_id = 0;
  std::vector<FigureSeries> series;
};

// Series configuration of the published sweep plots: a 200-point eta grid in
// [0.001, 0.999] plus the eta = 1 limit point.
//   1: scaled populations, N = 20
//   2: scaled intensities G1/N^2, N = 20
//   3: g2_22 for N in {2, 20, 200}
//   4: indistinguishable g2 for N in {1, 2, 200}
FigureDataset emit_figure(int figure_id, int workers = 0);

void write_figure_csv(std::ostream& out, const FigureDataset& dataset);

// nbar for a given eta; eta = 1 maps to the strong-field flag (infinity).
double nbar_from_eta(double eta);

}  // namespace ladder
