#pragma once

#include <string>

namespace ladder {

enum class Source { closed_form, basis_sum, oracle };

std::string to_string(Source s);
Source source_from_string(const std::string& s);

// Full set of steady-state observables for one configuration. Entries that
// are undefined for the configuration (e.g. g2 at zero intensity) are NaN.
struct ObservableReport {
  double s11 = 0.0;
  double s22 = 0.0;
  double s33 = 0.0;
  double sz = 0.0;
  double sz2 = 0.0;
  double g1_1 = 0.0;
  double g1_2 = 0.0;
  double g1_total = 0.0;
  double g2_11 = 0.0;
  double g2_22 = 0.0;
  double g2_12 = 0.0;
  double g2_21 = 0.0;
  double g2_total = 0.0;
  Source source = Source::basis_sum;
};

}  // namespace ladder
