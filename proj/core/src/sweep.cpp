#include "ladder/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ladder/closed_form.hpp"
#include "ladder/config_io.hpp"

namespace ladder {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double eta_of_nbar(double nbar) {
  return std::isinf(nbar) ? 1.0 : nbar / (1.0 + nbar);
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

double nbar_from_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("eta must lie in [0, 1]");
  }
  if (eta == 1.0) return std::numeric_limits<double>::infinity();
  return eta / (1.0 - eta);
}

SweepParameter sweep_parameter_from_string(const std::string& s) {
  if (s == "eta") return SweepParameter::eta;
  if (s == "eta1") return SweepParameter::eta1;
  if (s == "eta2") return SweepParameter::eta2;
  if (s == "theta") return SweepParameter::theta;
  if (s == "n_atoms" || s == "n-atoms") return SweepParameter::n_atoms;
  throw std::invalid_argument("unknown sweep parameter: " + s);
}

std::vector<double> SweepGrid::points() const {
  if (count < 1) throw std::invalid_argument("sweep grid: count must be >= 1");
  if (count == 1) {
    if (start != stop) {
      throw std::invalid_argument("sweep grid: single point needs start == stop");
    }
    return {start};
  }
  if (!(start < stop)) {
    throw std::invalid_argument("sweep grid: need start < stop");
  }
  std::vector<double> xs(count);
  for (int k = 0; k < count; ++k) {
    xs[k] = start + (stop - start) * k / (count - 1.0);
  }
  xs.front() = start;
  xs.back() = stop;
  return xs;
}

SweepRow evaluate_point(const EnsembleConfig& config) {
  SweepRow row;
  row.config = config;
  try {
    row.report = compute_report(config);
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers) {
  validate(spec.base);
  const std::vector<double> xs = spec.grid.points();
  std::vector<SweepRow> rows(xs.size());
  parallel_for(static_cast<int>(xs.size()), workers, [&](int k) {
    EnsembleConfig cfg = spec.base;
    const double x = xs[k];
    switch (spec.parameter) {
      case SweepParameter::eta:
        cfg.nbar1 = cfg.nbar2 = nbar_from_eta(x);
        break;
      case SweepParameter::eta1:
        cfg.nbar1 = nbar_from_eta(x);
        break;
      case SweepParameter::eta2:
        cfg.nbar2 = nbar_from_eta(x);
        break;
      case SweepParameter::theta:
        cfg.theta = x * M_PI / 180.0;
        break;
      case SweepParameter::n_atoms:
        cfg.n_atoms = static_cast<int>(std::lround(x));
        break;
    }
    rows[k] = evaluate_point(cfg);
  });
  return rows;
}

static const char* kCsvHeader =
    "eta1,eta2,n_atoms,theta_deg,mode,s11,s22,s33,sz,sz2,g1_1,g1_2,g1_total,"
    "g2_11,g2_22,g2_12,g2_21,g2_total,source";

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    const EnsembleConfig& c = row.config;
    const ObservableReport& r = row.report;
    out << fmt(eta_of_nbar(c.nbar1)) << ',' << fmt(eta_of_nbar(c.nbar2)) << ','
        << c.n_atoms << ',' << fmt(c.theta * 180.0 / M_PI) << ','
        << mode_to_string(c.mode) << ',' << fmt(r.s11) << ',' << fmt(r.s22)
        << ',' << fmt(r.s33) << ',' << fmt(r.sz) << ',' << fmt(r.sz2) << ','
        << fmt(r.g1_1) << ',' << fmt(r.g1_2) << ',' << fmt(r.g1_total) << ','
        << fmt(r.g2_11) << ',' << fmt(r.g2_22) << ',' << fmt(r.g2_12) << ','
        << fmt(r.g2_21) << ',' << fmt(r.g2_total) << ','
        << (row.ok ? to_string(r.source) : "error") << '\n';
  }
}

void write_json(std::ostream& out, std::span<const SweepRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  const auto num = [](double v) -> nlohmann::json {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  for (const SweepRow& row : rows) {
    const EnsembleConfig& c = row.config;
    const ObservableReport& r = row.report;
    nlohmann::json j{{"eta1", num(eta_of_nbar(c.nbar1))},
                     {"eta2", num(eta_of_nbar(c.nbar2))},
                     {"n_atoms", c.n_atoms},
                     {"theta_deg", c.theta * 180.0 / M_PI},
                     {"mode", mode_to_string(c.mode)},
                     {"source", row.ok ? to_string(r.source) : "error"}};
    if (row.ok) {
      j["s11"] = num(r.s11);
      j["s22"] = num(r.s22);
      j["s33"] = num(r.s33);
      j["sz"] = num(r.sz);
      j["sz2"] = num(r.sz2);
      j["g1_1"] = num(r.g1_1);
      j["g1_2"] = num(r.g1_2);
      j["g1_total"] = num(r.g1_total);
      j["g2_11"] = num(r.g2_11);
      j["g2_22"] = num(r.g2_22);
      j["g2_12"] = num(r.g2_12);
      j["g2_21"] = num(r.g2_21);
      j["g2_total"] = num(r.g2_total);
    } else {
      j["error"] = row.error;
    }
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

std::vector<SweepRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("csv: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 19) {
      throw std::invalid_argument("csv: expected 19 fields, got " +
                                  std::to_string(fields.size()));
    }
    SweepRow row;
    const auto f = [&](int i) { return std::stod(fields[i]); };
    row.config.nbar1 = nbar_from_eta(f(0));
    row.config.nbar2 = nbar_from_eta(f(1));
    row.config.n_atoms = std::stoi(fields[2]);
    row.config.theta = f(3) * M_PI / 180.0;
    row.config.mode = mode_from_string(fields[4]);
    ObservableReport& r = row.report;
    r.s11 = f(5);
    r.s22 = f(6);
    r.s33 = f(7);
    r.sz = f(8);
    r.sz2 = f(9);
    r.g1_1 = f(10);
    r.g1_2 = f(11);
    r.g1_total = f(12);
    r.g2_11 = f(13);
    r.g2_22 = f(14);
    r.g2_12 = f(15);
    r.g2_21 = f(16);
    r.g2_total = f(17);
    if (fields[18] == "error") {
      row.ok = false;
      row.report = ObservableReport{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN,
                                    kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    } else {
      r.source = source_from_string(fields[18]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FigureDataset emit_figure(int figure_id, int workers) {
  if (figure_id < 1 || figure_id > 4) {
    throw std::invalid_argument("figure id must be in {1,2,3,4}");
  }
  std::vector<double> etas;
  etas.reserve(201);
  for (int k = 0; k < 200; ++k) {
    etas.push_back(0.001 + (0.999 - 0.001) * k / 199.0);
  }
  etas.push_back(1.0);

  FigureDataset ds;
  ds.figure_id = figure_id;

  const auto sweep_reports = [&](int n_atoms, DipoleMode mode) {
    std::vector<ObservableReport> reports(etas.size());
    parallel_for(static_cast<int>(etas.size()), workers, [&](int k) {
      EnsembleConfig cfg;
      cfg.n_atoms = n_atoms;
      cfg.mode = mode;
      cfg.theta = (mode == DipoleMode::orthogonal) ? M_PI / 2.0 : 0.0;
      cfg.nbar1 = cfg.nbar2 = nbar_from_eta(etas[k]);
      reports[k] = compute_report(cfg);
    });
    return reports;
  };
  const auto make_series = [&](const std::string& label,
                               const std::vector<ObservableReport>& reports,
                               double (*pick)(const ObservableReport&),
                               double scale) {
    FigureSeries s;
    s.label = label;
    s.x = etas;
    s.y.reserve(reports.size());
    for (const auto& r : reports) s.y.push_back(pick(r) / scale);
    ds.series.push_back(std::move(s));
  };

  switch (figure_id) {
    case 1: {
      const auto reports = sweep_reports(20, DipoleMode::orthogonal);
      make_series("s11_over_N", reports, [](const ObservableReport& r) { return r.s11; }, 20.0);
      make_series("s22_over_N", reports, [](const ObservableReport& r) { return r.s22; }, 20.0);
      make_series("s33_over_N", reports, [](const ObservableReport& r) { return r.s33; }, 20.0);
      break;
    }
    case 2: {
      const auto reports = sweep_reports(20, DipoleMode::orthogonal);
      make_series("g1_1_over_N2", reports, [](const ObservableReport& r) { return r.g1_1; }, 400.0);
      make_series("g1_2_over_N2", reports, [](const ObservableReport& r) { return r.g1_2; }, 400.0);
      break;
    }
    case 3: {
      for (int n : {2, 20, 200}) {
        const auto reports = sweep_reports(n, DipoleMode::orthogonal);
        make_series("g2_22_N" + std::to_string(n), reports,
                    [](const ObservableReport& r) { return r.g2_22; }, 1.0);
      }
      break;
    }
    case 4: {
      for (int n : {1, 2, 200}) {
        const auto reports = sweep_reports(n, DipoleMode::interfering);
        make_series("g2_N" + std::to_string(n), reports,
                    [](const ObservableReport& r) { return r.g2_total; }, 1.0);
      }
      break;
    }
  }
  return ds;
}

void write_figure_csv(std::ostream& out, const FigureDataset& dataset) {
  out << "eta";
  for (const auto& s : dataset.series) out << ',' << s.label;
  out << '\n';
  const size_t n = dataset.series.front().x.size();
  for (size_t k = 0; k < n; ++k) {
    out << fmt(dataset.series.front().x[k]);
    for (const auto& s : dataset.series) out << ',' << fmt(s.y[k]);
    out << '\n';
  }
}

}  // namespace ladder
